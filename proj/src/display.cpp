#include "ostc/display.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "ostc/text.hpp"

namespace ostc {

TristimulusXYZ DisplayModel::white() const {
    return TristimulusXYZ{
        primaries[0][0] + primaries[0][1] + primaries[0][2],
        primaries[1][0] + primaries[1][1] + primaries[1][2],
        primaries[2][0] + primaries[2][1] + primaries[2][2],
    };
}

DisplayModel fit_display_model(const TristimulusXYZ& red_corner,
                               const TristimulusXYZ& green_corner,
                               const TristimulusXYZ& blue_corner, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("tone gamma must be positive");
    const TristimulusXYZ* corners[3] = {&red_corner, &green_corner, &blue_corner};
    DisplayModel m;
    m.tone_gamma = gamma;
    for (int i = 0; i < 3; ++i) {
        const auto& c = *corners[i];
        if (!(c.Y > 0.0))
            throw std::domain_error("display corner requires positive luminance");
        if (c.X < 0.0 || c.Z < 0.0)
            throw std::domain_error("display corner requires nonnegative tristimulus");
        m.primaries[0][i] = c.X;
        m.primaries[1][i] = c.Y;
        m.primaries[2][i] = c.Z;
    }
    return m;
}

// Solve for the corner luminances that make R + G + B equal the D65 white.
DisplayModel srgb_display_model(double white_Y, double gamma) {
    if (!(white_Y > 0.0)) throw std::domain_error("white luminance must be positive");
    const TristimulusXYZ prim[3] = {
        xyY_to_XYZ(kSrgbRedXy),
        xyY_to_XYZ(kSrgbGreenXy),
        xyY_to_XYZ(kSrgbBlueXy),
    };
    const TristimulusXYZ white = xyY_to_XYZ(
        ChromaticityXY{kD65Chromaticity.x, kD65Chromaticity.y, white_Y});

    // 3x3 solve by Cramer's rule: columns are the unit-Y primary vectors.
    double a[3][3];
    for (int i = 0; i < 3; ++i) {
        a[0][i] = prim[i].X;
        a[1][i] = prim[i].Y;
        a[2][i] = prim[i].Z;
    }
    const double w[3] = {white.X, white.Y, white.Z};
    auto det3 = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double det = det3(a);
    if (std::abs(det) < 1e-12) throw std::domain_error("degenerate primary set");
    double scale[3];
    for (int i = 0; i < 3; ++i) {
        double mi[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) mi[r][c] = (c == i) ? w[r] : a[r][c];
        scale[i] = det3(mi) / det;
    }
    auto scaled = [&](int i) {
        return TristimulusXYZ{prim[i].X * scale[i], prim[i].Y * scale[i],
                              prim[i].Z * scale[i]};
    };
    return fit_display_model(scaled(0), scaled(1), scaled(2), gamma);
}

TristimulusXYZ display_to_XYZ(const DisplayColor& c, const DisplayModel& m) {
    if (c.off) return TristimulusXYZ{0.0, 0.0, 0.0};
    const double lin[3] = {
        std::pow(c.r / 255.0, m.tone_gamma),
        std::pow(c.g / 255.0, m.tone_gamma),
        std::pow(c.b / 255.0, m.tone_gamma),
    };
    TristimulusXYZ out;
    out.X = m.primaries[0][0] * lin[0] + m.primaries[0][1] * lin[1] + m.primaries[0][2] * lin[2];
    out.Y = m.primaries[1][0] * lin[0] + m.primaries[1][1] * lin[1] + m.primaries[1][2] * lin[2];
    out.Z = m.primaries[2][0] * lin[0] + m.primaries[2][1] * lin[1] + m.primaries[2][2] * lin[2];
    return out;
}

TristimulusXYZ blend(const TristimulusXYZ& display_xyz, const BackgroundLight& bg) {
    return TristimulusXYZ{
        display_xyz.X + bg.xyz.X,
        display_xyz.Y + bg.xyz.Y,
        display_xyz.Z + bg.xyz.Z,
    };
}

std::vector<CalibrationCheck> verify_calibration(const DisplayModel& m,
                                                 double tolerance) {
    if (!(tolerance > 0.0)) throw std::domain_error("tolerance must be positive");
    struct Ref {
        const char* name;
        TristimulusXYZ measured;
        ChromaticityXY reference;
    };
    const Ref refs[4] = {
        {"red", m.column(0), kSrgbRedXy},
        {"green", m.column(1), kSrgbGreenXy},
        {"blue", m.column(2), kSrgbBlueXy},
        {"white", m.white(), kD65Chromaticity},
    };
    std::vector<CalibrationCheck> out;
    out.reserve(4);
    for (const auto& r : refs) {
        CalibrationCheck chk;
        chk.name = r.name;
        chk.measured = XYZ_to_uv(r.measured);
        chk.reference = XYZ_to_uv(xyY_to_XYZ(r.reference));
        const double du = chk.measured.u - chk.reference.u;
        const double dv = chk.measured.v - chk.reference.v;
        chk.distance = std::sqrt(du * du + dv * dv);
        chk.pass = chk.distance <= tolerance;
        out.push_back(chk);
    }
    return out;
}

void save_display_model(const DisplayModel& m, std::ostream& out) {
    static const char* row_names[3] = {"primaries_x", "primaries_y", "primaries_z"};
    out << "ostcolor-display-model 1\n";
    out << "gamma " << format_double(m.tone_gamma) << "\n";
    for (int r = 0; r < 3; ++r) {
        out << row_names[r];
        for (int c = 0; c < 3; ++c) out << ' ' << format_double(m.primaries[r][c]);
        out << "\n";
    }
}

void save_display_model(const DisplayModel& m, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write display model: " + path.string());
    save_display_model(m, f);
}

DisplayModel load_display_model(std::istream& in) {
    DisplayModel m;
    std::string line;
    if (!std::getline(in, line) || trim(line) != "ostcolor-display-model 1")
        throw std::runtime_error("not an ostcolor display model file");
    bool have_gamma = false;
    bool have_row[3] = {false, false, false};
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto fields = split_whitespace(t);
        if (fields[0] == "gamma" && fields.size() == 2) {
            m.tone_gamma = parse_double(fields[1], "gamma");
            have_gamma = true;
            continue;
        }
        int row = fields[0] == "primaries_x" ? 0
                : fields[0] == "primaries_y" ? 1
                : fields[0] == "primaries_z" ? 2
                                             : -1;
        if (row < 0 || fields.size() != 4)
            throw std::runtime_error("bad display model line: " + std::string(t));
        for (int c = 0; c < 3; ++c)
            m.primaries[row][c] = parse_double(fields[1 + c], "primaries entry");
        have_row[row] = true;
    }
    if (!have_gamma || !have_row[0] || !have_row[1] || !have_row[2])
        throw std::runtime_error("incomplete display model file");
    if (!(m.tone_gamma > 0.0)) throw std::runtime_error("display model gamma must be positive");
    return m;
}

DisplayModel load_display_model(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open display model: " + path.string());
    return load_display_model(f);
}

}  // namespace ostc
