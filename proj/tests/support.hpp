#pragma once

// Shared helpers for the test suites. Everything here is test-only and
// independent of the library internals it checks.

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ostc/analysis.hpp"
#include "ostc/dataset.hpp"
#include "ostc/display.hpp"

namespace ostc::test {

// Inverse of the u'v' projection: the tristimulus with chromaticity (u, v)
// and luminance Y. Used to construct inputs with prescribed chromaticities.
inline TristimulusXYZ xyz_from_uv(const UvPrime& uv, double Y) {
    return TristimulusXYZ{
        Y * 9.0 * uv.u / (4.0 * uv.v),
        Y,
        Y * (12.0 - 3.0 * uv.u - 20.0 * uv.v) / (4.0 * uv.v),
    };
}

// A dataset built from exact analytic blends: the display lattice against a
// set of named backgrounds, plus the three white-point cells. `readings` is
// recorded as 1 per cell.
class DatasetBuilder {
public:
    explicit DatasetBuilder(const DisplayModel& model) : model_(model) {}

    // Adds the no-lights display_only session (26 cells).
    DatasetBuilder& with_no_lights() {
        for (const auto& e : palette())
            if (e.name != "black")
                add_cell(std::string(kNoLights), e, LightingCondition::display_only,
                         display_to_XYZ(e.color, model_));
        return *this;
    }

    // Adds an illuminated background: 27 `both` cells and the black
    // background_only cell.
    DatasetBuilder& with_background(const std::string& name, const TristimulusXYZ& light) {
        const BackgroundLight bg{light};
        for (const auto& e : palette())
            add_cell(name, e, LightingCondition::both,
                     blend(display_to_XYZ(e.color, model_), bg));
        add_cell(name, *palette_find("black"), LightingCondition::background_only, light);
        return *this;
    }

    Dataset build() const {
        auto wps = extract_white_points(cells_);
        return Dataset(cells_, wps);
    }

private:
    void add_cell(const std::string& bg, const PaletteEntry& entry,
                  LightingCondition cond, const TristimulusXYZ& xyz) {
        if (xyz.X + xyz.Y + xyz.Z == 0.0) return;  // no light, no reading
        CellSummary cell;
        cell.key = CellKey{bg, entry.name, cond};
        cell.median_xyY = XYZ_to_xyY(xyz);
        cell.n_readings = 1;
        cells_[cell.key] = cell;
    }

    DisplayModel model_;
    std::map<CellKey, CellSummary> cells_;
};

inline TristimulusXYZ d65_xyz(double Y) {
    return xyY_to_XYZ(ChromaticityXY{0.3127, 0.3290, Y});
}

}  // namespace ostc::test
