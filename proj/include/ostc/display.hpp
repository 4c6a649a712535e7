#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ostc/colorspace.hpp"

namespace ostc {

// An 8-bit RGB command, or "off" (the display emits nothing; the palette
// color black is represented this way).
struct DisplayColor {
    int r = 0;
    int g = 0;
    int b = 0;
    bool off = false;

    static DisplayColor off_command() { return DisplayColor{0, 0, 0, true}; }
    friend bool operator==(const DisplayColor&, const DisplayColor&) = default;
};

// Forward characterization: command -> emitted tristimulus.
// primaries columns are the measured full-scale red, green, blue emissions;
// tone_gamma maps command/255 to linear channel intensity.
struct DisplayModel {
    std::array<std::array<double, 3>, 3> primaries{};  // rows X,Y,Z; cols r,g,b
    double tone_gamma = 2.2;

    TristimulusXYZ column(int i) const {
        return TristimulusXYZ{primaries[0][i], primaries[1][i], primaries[2][i]};
    }
    TristimulusXYZ white() const;  // sum of the three columns
};

// Environment light reaching the eye through the optics with the display off.
struct BackgroundLight {
    TristimulusXYZ xyz;
};

// Builds a model that reproduces each corner exactly at full command.
// Throws std::domain_error for a corner with Y <= 0 or gamma <= 0.
DisplayModel fit_display_model(const TristimulusXYZ& red_corner,
                               const TristimulusXYZ& green_corner,
                               const TristimulusXYZ& blue_corner, double gamma);

// Corners derived from the sRGB primary chromaticities, scaled so that full
// white lands on D65 with luminance white_Y.
DisplayModel srgb_display_model(double white_Y, double gamma);

TristimulusXYZ display_to_XYZ(const DisplayColor& c, const DisplayModel& m);

// Optical combination is light addition.
TristimulusXYZ blend(const TristimulusXYZ& display_xyz, const BackgroundLight& bg);

struct CalibrationCheck {
    std::string name;        // "red", "green", "blue", "white"
    UvPrime measured;
    UvPrime reference;
    double distance = 0.0;   // Euclidean in u'v'
    bool pass = false;
};

// Compares the model's corners against the sRGB gamut corners (and full
// white against D65) in u'v'. Failures are reported, not raised.
std::vector<CalibrationCheck> verify_calibration(const DisplayModel& m,
                                                 double tolerance);

// Text serialization, full double precision. Format:
//   ostcolor-display-model 1
//   gamma <g>
//   primaries_x <Xr> <Xg> <Xb>
//   primaries_y <Yr> <Yg> <Yb>
//   primaries_z <Zr> <Zg> <Zb>
void save_display_model(const DisplayModel& m, std::ostream& out);
void save_display_model(const DisplayModel& m, const std::filesystem::path& path);
DisplayModel load_display_model(std::istream& in);
DisplayModel load_display_model(const std::filesystem::path& path);

// sRGB gamut corner and D65 chromaticities used by the calibration checks.
inline constexpr ChromaticityXY kSrgbRedXy{0.64, 0.33, 1.0};
inline constexpr ChromaticityXY kSrgbGreenXy{0.30, 0.60, 1.0};
inline constexpr ChromaticityXY kSrgbBlueXy{0.15, 0.06, 1.0};

}  // namespace ostc
