#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ostc/dataset.hpp"

namespace ostc {

// How one displayed color moves when the background changes from A to B.
struct ColorShift {
    std::string color_name;
    DisplayColor color;
    UvPrime from_uv;
    UvPrime to_uv;
    std::array<double, 3> delta_luv{};  // (dL*, du*, dv*), B minus A
    double total = 0.0;                 // ||delta_luv||
    double lum_component = 0.0;         // share of total due to L*
    double chroma_component = 0.0;      // share due to u*v*; lum + chroma = total
};

struct PatternStats {
    double lum_fraction = 0.0;     // avg_lum / avg_total
    double coherence = 0.0;        // mean resultant length of u'v' shift directions
    double dispersion_ratio = 0.0; // to-side point spread / from-side point spread
};

enum class PairCategory {
    washout_chromaticity,
    washout_luminance,
    washout_both,
    linear_shift,
};
std::string_view to_string(PairCategory c);

struct ClassifierConfig {
    double r_min = 0.8;    // coherence at or above this means a linear shift
    double f_lo = 0.33;    // washout is chromaticity-dominant at or below
    double f_hi = 0.67;    // ... luminance-dominant at or above
    double epsilon = 1e-9; // below this average total the pair is degenerate

    static ClassifierConfig from_file(const std::filesystem::path& path);
    static ClassifierConfig from_key_values(const KeyValueFile& kv);
};

struct PairAnalysis {
    std::string background_a;
    std::string background_b;
    std::vector<ColorShift> shifts;  // 27, or 26 when either side is no-lights
    double avg_total = 0.0;
    double avg_lum = 0.0;
    double avg_chroma = 0.0;
    PatternStats stats;
    PairCategory category = PairCategory::linear_shift;
};

// Per-color shifts between two backgrounds. Illuminated backgrounds read
// from the `both` condition, no-lights from `display_only`; each endpoint is
// normalized with its own condition's white point. Black is excluded when
// either side is no-lights. Throws MissingCellError for absent cells.
std::vector<ColorShift> pair_shifts(const Dataset& ds, std::string_view bg_a,
                                    std::string_view bg_b);

// Splits a perceptual delta into its luminance and chromaticity shares:
// lum = dL^2 / ||delta||, chroma = (du^2 + dv^2) / ||delta||; both zero for
// a zero delta. The two always sum to ||delta||.
std::pair<double, double> decompose(const std::array<double, 3>& delta);

struct PairSummary {
    double avg_total = 0.0;
    double avg_lum = 0.0;
    double avg_chroma = 0.0;
};
// Arithmetic means over the shifts; throws std::invalid_argument when empty.
PairSummary pair_summary(std::span<const ColorShift> shifts);

PatternStats compute_pattern_stats(std::span<const ColorShift> shifts,
                                   const PairSummary& summary);

// Throws std::domain_error when the pair is degenerate (avg_total < epsilon).
PairCategory classify_pair(const PairAnalysis& p, const ClassifierConfig& cfg);

PairAnalysis analyze_pair(const Dataset& ds, std::string_view bg_a,
                          std::string_view bg_b, const ClassifierConfig& cfg);

// All unordered background pairs in panel order: rows by the first
// background's canonical rank, columns alphabetical by the second.
std::vector<std::pair<std::string, std::string>> pair_order(
    const std::vector<std::string>& backgrounds);

std::vector<PairAnalysis> analyze_all_pairs(const Dataset& ds,
                                            const ClassifierConfig& cfg);
std::vector<PairAnalysis> analyze_all_pairs_serial(const Dataset& ds,
                                                   const ClassifierConfig& cfg);

// Hull area of the 26 non-black colors' u'v' points against `background`,
// over the area of the same colors under no-lights. In (0, 1] for any
// additive background.
double gamut_compression(const Dataset& ds, std::string_view background);

// Writes one SVG panel per pair plus index.html, and the numeric sidecar
// shifts.csv (header `bg_a,bg_b,color_name,u_from,v_from,u_to,v_to,dL,du,dv,
// total,lum,chroma`). Bars are scaled against the largest pair average.
void export_small_multiples(std::span<const PairAnalysis> pairs,
                            const std::filesystem::path& dir);

void write_pairs_csv(std::span<const PairAnalysis> pairs, std::ostream& out);
void write_shifts_csv(std::span<const PairAnalysis> pairs, std::ostream& out);
void write_report(std::span<const PairAnalysis> pairs, std::ostream& out);

}  // namespace ostc
