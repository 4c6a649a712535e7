#pragma once

#include <string_view>

namespace ostc {

// CIE 1931 xyY: chromaticity (x, y) plus luminance Y in the colorimeter's
// native unit. Only the ratio Y/Yn ever enters L*u*v*, so the unit cancels.
struct ChromaticityXY {
    double x = 0.0;
    double y = 0.0;
    double Y = 0.0;

    friend bool operator==(const ChromaticityXY&, const ChromaticityXY&) = default;
};

struct TristimulusXYZ {
    double X = 0.0;
    double Y = 0.0;
    double Z = 0.0;

    friend bool operator==(const TristimulusXYZ&, const TristimulusXYZ&) = default;
};

// CIE 1976 u'v' chromaticity.
struct UvPrime {
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(const UvPrime&, const UvPrime&) = default;
};

// CIE 1976 L*u*v* relative to some white point.
struct LuvColor {
    double L = 0.0;
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(const LuvColor&, const LuvColor&) = default;
};

enum class LightingCondition {
    display_only,      // only the display emits; backgrounds dark
    background_only,   // only the environment lights are on; display off
    both,              // display and environment lights together
};

std::string_view to_string(LightingCondition c);
LightingCondition parse_condition(std::string_view s);

// Normalization reference for L*u*v*; one per lighting condition.
struct WhitePoint {
    TristimulusXYZ xyz;
    UvPrime uvn;       // u'n, v'n derived from xyz
    LightingCondition label = LightingCondition::both;
};

// Builds a white point, precomputing u'n v'n. Requires Y > 0.
WhitePoint make_white_point(const TristimulusXYZ& xyz, LightingCondition label);

inline constexpr ChromaticityXY kD65Chromaticity{0.3127, 0.3290, 1.0};

// L* switches to a linear segment at and below this luminance ratio.
inline constexpr double kLstarLinearCutoff = 0.01;
inline constexpr double kLstarLinearSlope = 903.3;
// Largest L* the linear segment can produce (slope * cutoff).
inline constexpr double kLstarLinearMax = kLstarLinearSlope * kLstarLinearCutoff;

TristimulusXYZ xyY_to_XYZ(const ChromaticityXY& c);
ChromaticityXY XYZ_to_xyY(const TristimulusXYZ& t);
UvPrime XYZ_to_uv(const TristimulusXYZ& t);
// Same transform applied to a white point's tristimulus.
UvPrime whitepoint_uv(const TristimulusXYZ& wp_xyz);

LuvColor XYZ_to_Luv(const TristimulusXYZ& t, const WhitePoint& wp);
TristimulusXYZ Luv_to_XYZ(const LuvColor& c, const WhitePoint& wp);

// Euclidean distance in L*u*v*. Both inputs must share a white point.
double delta_E(const LuvColor& a, const LuvColor& b);

// Soft sanity window for physically realizable u'v'; measurement noise may
// exceed it marginally, so callers warn rather than reject.
bool uv_within_window(const UvPrime& uv);

// Throws std::domain_error if c violates the xyY invariants
// (x >= 0, y > 0, x + y <= 1, Y >= 0).
void validate_chromaticity(const ChromaticityXY& c);

}  // namespace ostc
