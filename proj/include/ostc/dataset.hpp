#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ostc/colorspace.hpp"
#include "ostc/config.hpp"
#include "ostc/display.hpp"

namespace ostc {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingCellError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- experimental grid vocabulary ----

struct PaletteEntry {
    std::string name;
    DisplayColor color;
};
using Palette = std::vector<PaletteEntry>;

// The canonical 27-color table: every channel combination of {0, 128, 255},
// with (0,0,0) represented as the display-off color "black".
const Palette& palette();
const PaletteEntry* palette_find(std::string_view name);
// Index in canonical palette order, or -1.
int palette_index(std::string_view name);

enum class BackgroundKind { real, poster, white_poster, no_lights };

inline constexpr std::string_view kNoLights = "no-lights";
inline constexpr std::string_view kWhitePoster = "white-poster";

// Kind is carried by the id's suffix ("-real" / "-poster"), with the two
// special ids recognized exactly.
BackgroundKind background_kind(std::string_view name);
// Id with the kind suffix stripped ("brick-real" -> "brick").
std::string background_base(std::string_view name);

// The eleven canonical backgrounds in panel order: no-lights and white-poster
// first, then the two bright materials, then the rest alphabetically.
const std::vector<std::string>& canonical_backgrounds();
// Position in canonical order, or a large rank for unknown ids.
int background_rank(std::string_view name);

// ---- records and cells ----

struct MeasurementRecord {
    double timestamp = 0.0;  // seconds
    std::string background;
    std::string color_name;
    LightingCondition condition = LightingCondition::both;
    ChromaticityXY reading;

    friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

// Throws std::domain_error when the record is inconsistent: display_only
// requires the no-lights background, background_only requires the black
// color, the color name must be a palette name, and the reading must satisfy
// the xyY invariants.
void validate_record(const MeasurementRecord& r);

struct CellKey {
    std::string background;
    std::string color;
    LightingCondition condition = LightingCondition::both;

    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct CellSummary {
    CellKey key;
    ChromaticityXY median_xyY;  // componentwise median over the cell's readings
    std::size_t n_readings = 0;
};

struct WhitePointSet {
    WhitePoint display_only;
    WhitePoint background_only;
    WhitePoint both;
};

class Dataset {
public:
    Dataset(std::map<CellKey, CellSummary> cells, WhitePointSet white_points,
            std::vector<std::string> warnings = {})
        : cells_(std::move(cells)),
          white_points_(std::move(white_points)),
          warnings_(std::move(warnings)) {}

    const std::map<CellKey, CellSummary>& cells() const { return cells_; }
    const WhitePointSet& white_points() const { return white_points_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    const CellSummary* find(std::string_view background, std::string_view color,
                            LightingCondition condition) const;
    // Like find, but throws MissingCellError naming the cell.
    const CellSummary& at(std::string_view background, std::string_view color,
                          LightingCondition condition) const;

    std::size_t count(LightingCondition condition) const;
    // Distinct background ids present, in canonical-then-alphabetical order.
    std::vector<std::string> backgrounds() const;

private:
    std::map<CellKey, CellSummary> cells_;
    WhitePointSet white_points_;
    std::vector<std::string> warnings_;
};

// ---- operations ----

// Reading CSV: header `timestamp,background,color_name,condition,x,y,Y`.
// Malformed rows raise ParseError naming the line; invariant violations
// raise std::domain_error naming the line.
std::vector<MeasurementRecord> parse_readings(std::istream& in);

// Groups records by (background, color, condition), takes the componentwise
// median of (x, y, Y) per cell, and extracts the three white points.
// Per-background reading counts outside the plausible range generate
// warnings on the returned dataset.
Dataset aggregate_cells(const std::vector<MeasurementRecord>& records);

// The three cells that define the white points:
//   (1) display_only:    (no-lights,    white, display_only)
//   (2) background_only: (white-poster, black, background_only)
//   (3) both:            (white-poster, white, both)
// Throws MissingCellError naming whichever is absent.
WhitePointSet extract_white_points(const std::map<CellKey, CellSummary>& cells);

const WhitePoint& white_point_for(LightingCondition condition,
                                  const WhitePointSet& wps);

// Cell-summary CSV: `background,color_name,condition,x,y,Y,n_readings`.
void write_cells_csv(const Dataset& ds, std::ostream& out);

// ---- synthetic testbed ----

struct SimulatorConfig {
    std::uint64_t seed = 0;
    int readings_per_cell = 100;
    double noise_rel = 0.0;        // relative sigma applied to X, Y, Z independently
    double sample_rate_hz = 2.0;
    double display_white_Y = 100.0;
    double display_gamma = 2.2;
    // Illuminated backgrounds with their light as seen through the optics.
    std::vector<std::pair<std::string, ChromaticityXY>> backgrounds;

    static SimulatorConfig from_file(const std::filesystem::path& path);
    static SimulatorConfig from_key_values(const KeyValueFile& kv);
    void validate() const;  // throws ConfigError

    DisplayModel make_display_model() const;
    // Zero light for no-lights; ConfigError for an unknown id.
    BackgroundLight background_light(std::string_view name) const;
};

// One (background, color, condition) cell of the simulated grid, with its
// exact analytic blend.
struct GridCell {
    std::string background;
    std::string color_name;
    DisplayColor color;
    LightingCondition condition = LightingCondition::both;
    TristimulusXYZ analytic;
};

// The full experimental grid in deterministic order: the display_only
// session (26 cells), the background_only session (one black cell per
// illuminated background), then the both session (every background x color
// except the zero-energy no-lights/black cell).
std::vector<GridCell> simulation_grid(const SimulatorConfig& cfg);

// Emits readings_per_cell noisy readings per grid cell; bitwise
// deterministic for a given seed regardless of thread count.
std::vector<MeasurementRecord> simulate_testbed(const SimulatorConfig& cfg);
std::vector<MeasurementRecord> simulate_testbed_serial(const SimulatorConfig& cfg);

void write_readings_csv(const std::vector<MeasurementRecord>& records,
                        std::ostream& out);

// Paper-reported plausible range of readings per background; counts outside
// it are flagged with a warning during aggregation.
inline constexpr std::size_t kMinReadingsPerBackground = 1459;
inline constexpr std::size_t kMaxReadingsPerBackground = 7595;

}  // namespace ostc
