#include <algorithm>
#include <cmath>
#include <random>

#include "ostc/dataset.hpp"
#include "ostc/text.hpp"

namespace ostc {

SimulatorConfig SimulatorConfig::from_file(const std::filesystem::path& path) {
    return from_key_values(KeyValueFile::parse_file(path));
}

SimulatorConfig SimulatorConfig::from_key_values(const KeyValueFile& kv) {
    static const char* known[] = {"config_version", "seed",            "readings_per_cell",
                                  "noise_rel",      "sample_rate_hz",  "display_white_Y",
                                  "display_gamma",  "background"};
    for (const auto& e : kv.entries) {
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return e.key == k; }) == std::end(known))
            throw ConfigError("line " + std::to_string(e.line) + ": unknown config key '" +
                              e.key + "'");
    }

    const long version = kv.get_long_or("config_version", 1);
    if (version != 1)
        throw ConfigError("unsupported config_version " + std::to_string(version));

    SimulatorConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(kv.get_long_or("seed", 0));
    cfg.readings_per_cell = static_cast<int>(kv.get_long_or("readings_per_cell", 100));
    cfg.noise_rel = kv.get_double_or("noise_rel", 0.0);
    cfg.sample_rate_hz = kv.get_double_or("sample_rate_hz", 2.0);
    cfg.display_white_Y = kv.get_double_or("display_white_Y", 100.0);
    cfg.display_gamma = kv.get_double_or("display_gamma", 2.2);

    for (const auto& e : kv.entries) {
        if (e.key != "background") continue;
        if (e.values.size() != 4)
            throw ConfigError("line " + std::to_string(e.line) +
                              ": background wants `background <id> <x> <y> <Y>`");
        try {
            ChromaticityXY c{parse_double(e.values[1], "x"), parse_double(e.values[2], "y"),
                             parse_double(e.values[3], "Y")};
            cfg.backgrounds.emplace_back(e.values[0], c);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError("line " + std::to_string(e.line) + ": " + ex.what());
        }
    }
    cfg.validate();
    return cfg;
}

void SimulatorConfig::validate() const {
    if (readings_per_cell < 1) throw ConfigError("readings_per_cell must be >= 1");
    if (noise_rel < 0.0 || noise_rel > 0.2)
        throw ConfigError("noise_rel must lie in [0, 0.2]");
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sample_rate_hz must be positive");
    if (!(display_white_Y > 0.0)) throw ConfigError("display_white_Y must be positive");
    if (!(display_gamma > 0.0)) throw ConfigError("display_gamma must be positive");
    if (backgrounds.empty()) throw ConfigError("config lists no backgrounds");
    bool have_white_poster = false;
    for (const auto& [name, c] : backgrounds) {
        if (name == kNoLights)
            throw ConfigError("no-lights is implicit and must not be listed");
        if (!(c.y > 0.0) || c.x < 0.0 || c.x + c.y > 1.0 || !(c.Y > 0.0))
            throw ConfigError("background '" + name + "' has an invalid xyY value");
        if (name == kWhitePoster) have_white_poster = true;
    }
    if (!have_white_poster)
        throw ConfigError("config must include the white-poster background");
}

DisplayModel SimulatorConfig::make_display_model() const {
    return srgb_display_model(display_white_Y, display_gamma);
}

BackgroundLight SimulatorConfig::background_light(std::string_view name) const {
    if (name == kNoLights) return BackgroundLight{TristimulusXYZ{0.0, 0.0, 0.0}};
    for (const auto& [id, c] : backgrounds)
        if (id == name) return BackgroundLight{xyY_to_XYZ(c)};
    throw ConfigError("unknown background id: '" + std::string(name) + "'");
}

std::vector<GridCell> simulation_grid(const SimulatorConfig& cfg) {
    const DisplayModel model = cfg.make_display_model();

    // Illuminated backgrounds in canonical-then-alphabetical order.
    std::vector<std::string> illuminated;
    for (const auto& [name, c] : cfg.backgrounds) illuminated.push_back(name);
    std::sort(illuminated.begin(), illuminated.end(),
              [](const std::string& a, const std::string& b) {
                  const int ra = background_rank(a), rb = background_rank(b);
                  return ra != rb ? ra < rb : a < b;
              });

    std::vector<GridCell> grid;
    auto add = [&](const std::string& bg, const PaletteEntry& entry,
                   LightingCondition cond) {
        GridCell cell;
        cell.background = bg;
        cell.color_name = entry.name;
        cell.color = entry.color;
        cell.condition = cond;
        cell.analytic = blend(display_to_XYZ(entry.color, model), cfg.background_light(bg));
        grid.push_back(std::move(cell));
    };

    // display_only session: the display against darkness, all colors but black.
    for (const auto& entry : palette())
        if (entry.name != "black")
            add(std::string(kNoLights), entry, LightingCondition::display_only);

    // background_only session: each illuminated background with the display off.
    const PaletteEntry& black = *palette_find("black");
    for (const auto& bg : illuminated)
        add(bg, black, LightingCondition::background_only);

    // both session: the full grid; the no-lights/black cell carries no light
    // energy and is excluded.
    for (const auto& entry : palette())
        if (entry.name != "black")
            add(std::string(kNoLights), entry, LightingCondition::both);
    for (const auto& bg : illuminated)
        for (const auto& entry : palette()) add(bg, entry, LightingCondition::both);

    return grid;
}

namespace {

// Gaussian sampler over the standard-specified mt19937_64 stream, so the
// generated readings do not depend on the C++ library's distribution
// implementation.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double k = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * k;
        have_spare_ = true;
        return u * k;
    }

private:
    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::vector<MeasurementRecord> run_simulation(const SimulatorConfig& cfg, bool parallel) {
    cfg.validate();
    const std::vector<GridCell> grid = simulation_grid(cfg);
    const int per_cell = cfg.readings_per_cell;
    const double dt = 1.0 / cfg.sample_rate_hz;

    std::vector<MeasurementRecord> records(grid.size() * static_cast<std::size_t>(per_cell));

    // Each cell draws from its own seed-derived stream and writes into its own
    // slot range, so the output is identical however the loop is scheduled.
    const auto n_cells = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t ci = 0; ci < n_cells; ++ci) {
        const GridCell& cell = grid[ci];
        NormalSampler normal(mix_seed(cfg.seed, static_cast<std::uint64_t>(ci)));
        const std::size_t base = static_cast<std::size_t>(ci) * per_cell;
        for (int i = 0; i < per_cell; ++i) {
            TristimulusXYZ xyz = cell.analytic;
            if (cfg.noise_rel > 0.0) {
                xyz.X = std::max(0.0, xyz.X * (1.0 + cfg.noise_rel * normal()));
                xyz.Y = std::max(0.0, xyz.Y * (1.0 + cfg.noise_rel * normal()));
                xyz.Z = std::max(0.0, xyz.Z * (1.0 + cfg.noise_rel * normal()));
            }
            MeasurementRecord& r = records[base + i];
            r.timestamp = static_cast<double>(base + i) * dt;
            r.background = cell.background;
            r.color_name = cell.color_name;
            r.condition = cell.condition;
            r.reading = XYZ_to_xyY(xyz);
        }
    }
    return records;
}

}  // namespace

std::vector<MeasurementRecord> simulate_testbed(const SimulatorConfig& cfg) {
    return run_simulation(cfg, true);
}

std::vector<MeasurementRecord> simulate_testbed_serial(const SimulatorConfig& cfg) {
    return run_simulation(cfg, false);
}

}  // namespace ostc
