#include "ostc/colorspace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ostc {

std::string_view to_string(LightingCondition c) {
    switch (c) {
        case LightingCondition::display_only: return "display_only";
        case LightingCondition::background_only: return "background_only";
        case LightingCondition::both: return "both";
    }
    return "?";
}

LightingCondition parse_condition(std::string_view s) {
    if (s == "display_only") return LightingCondition::display_only;
    if (s == "background_only") return LightingCondition::background_only;
    if (s == "both") return LightingCondition::both;
    throw std::invalid_argument("unknown lighting condition: '" + std::string(s) + "'");
}

WhitePoint make_white_point(const TristimulusXYZ& xyz, LightingCondition label) {
    if (!(xyz.Y > 0.0)) throw std::domain_error("white point requires Y > 0");
    return WhitePoint{xyz, whitepoint_uv(xyz), label};
}

void validate_chromaticity(const ChromaticityXY& c) {
    if (!(c.y > 0.0)) throw std::domain_error("chromaticity requires y > 0");
    if (c.x < 0.0) throw std::domain_error("chromaticity requires x >= 0");
    if (c.x + c.y > 1.0) throw std::domain_error("chromaticity requires x + y <= 1");
    if (c.Y < 0.0) throw std::domain_error("luminance must be nonnegative");
}

TristimulusXYZ xyY_to_XYZ(const ChromaticityXY& c) {
    if (!(c.y > 0.0)) throw std::domain_error("xyY -> XYZ undefined for y <= 0");
    if (c.Y < 0.0) throw std::domain_error("xyY -> XYZ requires Y >= 0");
    return TristimulusXYZ{
        c.x / c.y * c.Y,
        c.Y,
        (1.0 - c.x - c.y) / c.y * c.Y,
    };
}

ChromaticityXY XYZ_to_xyY(const TristimulusXYZ& t) {
    const double sum = t.X + t.Y + t.Z;
    if (!(sum > 0.0))
        throw std::domain_error("XYZ -> xyY undefined for zero-energy color");
    return ChromaticityXY{t.X / sum, t.Y / sum, t.Y};
}

UvPrime XYZ_to_uv(const TristimulusXYZ& t) {
    const double denom = t.X + 15.0 * t.Y + 3.0 * t.Z;
    if (!(denom > 0.0))
        throw std::domain_error("XYZ -> u'v' undefined: zero denominator");
    return UvPrime{4.0 * t.X / denom, 9.0 * t.Y / denom};
}

UvPrime whitepoint_uv(const TristimulusXYZ& wp_xyz) {
    return XYZ_to_uv(wp_xyz);
}

static double lightness(double Y, double Yn) {
    const double ratio = Y / Yn;
    if (ratio > kLstarLinearCutoff) return 116.0 * std::cbrt(ratio) - 16.0;
    return kLstarLinearSlope * ratio;
}

LuvColor XYZ_to_Luv(const TristimulusXYZ& t, const WhitePoint& wp) {
    if (t.Y < 0.0) throw std::domain_error("XYZ -> Luv requires Y >= 0");
    if (t.Y == 0.0) return LuvColor{0.0, 0.0, 0.0};  // zero light carries no color
    const UvPrime uv = XYZ_to_uv(t);  // denominator > 0 whenever Y > 0
    const double L = lightness(t.Y, wp.xyz.Y);
    return LuvColor{
        L,
        13.0 * L * (uv.u - wp.uvn.u),
        13.0 * L * (uv.v - wp.uvn.v),
    };
}

TristimulusXYZ Luv_to_XYZ(const LuvColor& c, const WhitePoint& wp) {
    if (c.L < 0.0) throw std::domain_error("Luv -> XYZ requires L >= 0");
    if (c.L == 0.0) {
        if (c.u != 0.0 || c.v != 0.0)
            throw std::domain_error("Luv -> XYZ undefined: L = 0 with nonzero u*/v*");
        return TristimulusXYZ{0.0, 0.0, 0.0};
    }
    const double ratio = c.L > kLstarLinearMax
                             ? std::pow((c.L + 16.0) / 116.0, 3.0)
                             : c.L / kLstarLinearSlope;
    const double Y = ratio * wp.xyz.Y;
    const double u = c.u / (13.0 * c.L) + wp.uvn.u;
    const double v = c.v / (13.0 * c.L) + wp.uvn.v;
    if (!(v > 0.0)) throw std::domain_error("Luv -> XYZ undefined: v' <= 0");
    return TristimulusXYZ{
        Y * 9.0 * u / (4.0 * v),
        Y,
        Y * (12.0 - 3.0 * u - 20.0 * v) / (4.0 * v),
    };
}

double delta_E(const LuvColor& a, const LuvColor& b) {
    const double dL = a.L - b.L;
    const double du = a.u - b.u;
    const double dv = a.v - b.v;
    return std::sqrt(dL * dL + du * du + dv * dv);
}

bool uv_within_window(const UvPrime& uv) {
    return uv.u >= 0.0 && uv.u <= 0.7 && uv.v >= 0.0 && uv.v <= 0.7;
}

}  // namespace ostc
