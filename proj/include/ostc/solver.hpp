#pragma once

#include <vector>

#include "ostc/dataset.hpp"
#include "ostc/display.hpp"
#include "ostc/hull.hpp"

namespace ostc {

struct CorrectionResult {
    DisplayColor best_command;
    LuvColor achieved;
    double residual = 0.0;
    int iterations = 0;   // descent steps taken after the coarse scan
    bool exact = false;   // residual <= tolerance
};

struct SolverOptions {
    // Coarse scan density per channel before the local descent.
    int coarse_per_axis = 9;
    // When >= 2, commands are restricted to an evenly spaced lattice of this
    // many values per channel; 0 searches the full 8-bit space.
    int lattice_per_axis = 0;
    // The descent restarts from this many of the best coarse candidates; the
    // objective is multimodal in command space and a single start can strand
    // on a local optimum.
    int descent_starts = 8;
};

// Perceptual error of a command against a target, through a display model,
// background and white point.
struct PerceptualObjective {
    const DisplayModel* model = nullptr;
    BackgroundLight background;
    WhitePoint white_point;
    LuvColor target;

    LuvColor perceived(const DisplayColor& c) const;
    double operator()(const DisplayColor& c) const;
};

// Deterministic candidate ordering used everywhere ties can occur: off
// first, then lexicographically smallest (r, g, b).
bool command_precedes(const DisplayColor& a, const DisplayColor& b);

struct ScanBest {
    DisplayColor command;
    double residual = 0.0;
};

// Best command over the cross product of axis_values (plus the off command);
// ties break by command_precedes. The parallel variant reduces per-thread
// results in thread order, so the winner never depends on scheduling.
ScanBest best_on_lattice(const PerceptualObjective& objective,
                         const std::vector<int>& axis_values);
ScanBest best_on_lattice_serial(const PerceptualObjective& objective,
                                const std::vector<int>& axis_values);

struct GamutCloud {
    std::vector<DisplayColor> commands;
    std::vector<LuvColor> points;       // one per command, same order
    std::vector<UvPrime> uv_points;     // only entries with nonzero energy
    std::vector<Point2> hull;           // convex hull of uv_points
    double hull_area = 0.0;
};

// Perceived gamut of the display against a background: the channel lattice
// blended with bg, converted to L*u*v* under wp, with the u'v' hull.
GamutCloud achievable_gamut(const BackgroundLight& bg, const DisplayModel& m,
                            const WhitePoint& wp, int samples_per_axis);
GamutCloud achievable_gamut_serial(const BackgroundLight& bg, const DisplayModel& m,
                                   const WhitePoint& wp, int samples_per_axis);

// Nearest-achievable-color search: coarse lattice scan followed by local
// integer descent over the 3^3-1 neighborhood until no improvement. The
// result is never worse than the best coarse point or the off command.
CorrectionResult correct_color(const LuvColor& target, const BackgroundLight& bg,
                               const DisplayModel& m, const WhitePoint& wp,
                               double tolerance, const SolverOptions& opts = {});

// Greedy maximal palette subset whose pairwise perceived distances against
// bg all exceed min_separation; deterministic in palette order.
std::vector<PaletteEntry> rank_distinguishable_colors(const BackgroundLight& bg,
                                                      const DisplayModel& m,
                                                      const WhitePoint& wp,
                                                      double min_separation);

// Evenly spaced command values, n >= 2 (0 and 255 always included).
std::vector<int> command_lattice(int per_axis);

}  // namespace ostc
