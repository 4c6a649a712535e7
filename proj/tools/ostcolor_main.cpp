// Command-line surface for the ostcolor pipeline: simulate readings, analyze
// them into pairwise shift reports and panels, characterize the achievable
// gamut, and solve for display commands that preserve an intended color.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ostc/analysis.hpp"
#include "ostc/dataset.hpp"
#include "ostc/manifest.hpp"
#include "ostc/solver.hpp"
#include "ostc/svg.hpp"
#include "ostc/text.hpp"

namespace fs = std::filesystem;
using namespace ostc;

namespace {

// Directory outputs are staged next to the destination and renamed into
// place on success, so failed runs leave nothing behind.
class StagedDir {
public:
    StagedDir(fs::path final_dir, bool force)
        : final_(std::move(final_dir)), stage_(final_.string() + ".staging") {
        if (fs::exists(final_) && !force)
            throw std::runtime_error("output directory exists: " + final_.string() +
                                     " (use --force to overwrite)");
        force_ = force;
        fs::remove_all(stage_);
        fs::create_directories(stage_);
    }

    ~StagedDir() {
        if (!committed_) {
            std::error_code ec;
            fs::remove_all(stage_, ec);
        }
    }

    const fs::path& dir() const { return stage_; }

    void commit() {
        if (force_) fs::remove_all(final_);
        fs::rename(stage_, final_);
        committed_ = true;
    }

private:
    fs::path final_;
    fs::path stage_;
    bool force_ = false;
    bool committed_ = false;
};

void write_text_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

// Background spec: "x,y,Y" or a background id resolved through the
// simulator config.
BackgroundLight parse_background(const std::string& spec,
                                 const std::optional<SimulatorConfig>& cfg) {
    auto fields = split(spec, ',');
    if (fields.size() == 3) {
        try {
            ChromaticityXY c{parse_double(fields[0], "x"), parse_double(fields[1], "y"),
                             parse_double(fields[2], "Y")};
            validate_chromaticity(c);
            return BackgroundLight{xyY_to_XYZ(c)};
        } catch (const std::exception& ex) {
            throw ConfigError("bad background spec '" + spec + "': " + ex.what());
        }
    }
    if (fields.size() != 1)
        throw ConfigError("bad background spec '" + spec + "': want `x,y,Y` or an id");
    if (spec == kNoLights) return BackgroundLight{TristimulusXYZ{0, 0, 0}};
    if (!cfg)
        throw ConfigError("background id '" + spec + "' needs --config to resolve");
    return cfg->background_light(spec);
}

// Target spec: a palette color name, or "L,u,v".
LuvColor parse_target(const std::string& spec, const DisplayModel& model,
                      const WhitePoint& wp) {
    if (const PaletteEntry* entry = palette_find(spec))
        return XYZ_to_Luv(display_to_XYZ(entry->color, model), wp);
    auto fields = split(spec, ',');
    if (fields.size() != 3)
        throw ConfigError("bad target spec '" + spec +
                          "': want a palette color name or `L,u,v`");
    try {
        return LuvColor{parse_double(fields[0], "L"), parse_double(fields[1], "u"),
                        parse_double(fields[2], "v")};
    } catch (const std::exception& ex) {
        throw ConfigError("bad target spec '" + spec + "': " + ex.what());
    }
}

WhitePoint resolve_white_point(const std::optional<std::string>& wp_spec,
                               const DisplayModel& model, const BackgroundLight& bg) {
    if (wp_spec) {
        auto fields = split(*wp_spec, ',');
        if (fields.size() != 3)
            throw ConfigError("bad white point spec '" + *wp_spec + "': want `x,y,Y`");
        try {
            ChromaticityXY c{parse_double(fields[0], "x"), parse_double(fields[1], "y"),
                             parse_double(fields[2], "Y")};
            return make_white_point(xyY_to_XYZ(c), LightingCondition::both);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ConfigError("bad white point spec '" + *wp_spec + "': " + ex.what());
        }
    }
    // Default convention: the display's full white blended with the
    // background, i.e. the "both illuminated" viewing condition.
    return make_white_point(blend(model.white(), bg), LightingCondition::both);
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override, bool force) {
    SimulatorConfig cfg = SimulatorConfig::from_file(config_path);
    if (seed_override) cfg.seed = *seed_override;

    StagedDir stage(out_dir, force);
    const auto records = simulate_testbed(cfg);
    {
        std::ofstream out(stage.dir() / "readings.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write readings.csv");
        write_readings_csv(records, out);
    }
    save_display_model(cfg.make_display_model(), stage.dir() / "display_model.txt");

    RunManifest manifest;
    manifest.command = "simulate";
    manifest.seed = cfg.seed;
    manifest.add_file_digest("config", config_path);
    manifest.timestamp = manifest_timestamp();
    manifest.write(stage.dir() / "manifest.txt");

    stage.commit();
    std::cout << "simulate: " << records.size() << " readings -> " << out_dir << "\n";
    return 0;
}

int cmd_analyze(const std::string& readings_path, const std::string& out_dir,
                const std::optional<std::string>& classifier_path, bool force) {
    ClassifierConfig classifier;
    if (classifier_path) classifier = ClassifierConfig::from_file(*classifier_path);

    std::ifstream in(readings_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open readings: " + readings_path);

    StagedDir stage(out_dir, force);
    const auto records = parse_readings(in);
    const Dataset ds = aggregate_cells(records);
    for (const auto& w : ds.warnings()) std::cerr << "warning: " << w << "\n";

    const auto pairs = analyze_all_pairs(ds, classifier);

    {
        std::ofstream out(stage.dir() / "cells.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write cells.csv");
        write_cells_csv(ds, out);
    }
    {
        std::ofstream out(stage.dir() / "pairs.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write pairs.csv");
        write_pairs_csv(pairs, out);
    }
    {
        std::ofstream out(stage.dir() / "report.txt", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report.txt");
        write_report(pairs, out);
    }
    export_small_multiples(pairs, stage.dir());

    RunManifest manifest;
    manifest.command = "analyze";
    manifest.add_file_digest("readings", readings_path);
    if (classifier_path) manifest.add_file_digest("classifier", *classifier_path);
    manifest.timestamp = manifest_timestamp();
    manifest.write(stage.dir() / "manifest.txt");

    stage.commit();
    std::cout << "analyze: " << pairs.size() << " pairs -> " << out_dir << "\n";
    return 0;
}

int cmd_correct(const std::string& model_path, const std::string& background_spec,
                const std::vector<std::string>& target_specs,
                const std::optional<std::string>& config_path,
                const std::optional<std::string>& wp_spec, double tolerance,
                const std::string& out_path, bool force) {
    const DisplayModel model = load_display_model(model_path);
    std::optional<SimulatorConfig> cfg;
    if (config_path) cfg = SimulatorConfig::from_file(*config_path);
    const BackgroundLight bg = parse_background(background_spec, cfg);
    const WhitePoint wp = resolve_white_point(wp_spec, model, bg);

    std::string csv = "target_L,target_u,target_v,r,g,b,off,residual,exact\n";
    for (const auto& spec : target_specs) {
        const LuvColor target = parse_target(spec, model, wp);
        const CorrectionResult res = correct_color(target, bg, model, wp, tolerance);
        csv += format_double(target.L) + ',' + format_double(target.u) + ',' +
               format_double(target.v) + ',' + std::to_string(res.best_command.r) + ',' +
               std::to_string(res.best_command.g) + ',' +
               std::to_string(res.best_command.b) + ',' +
               (res.best_command.off ? "1" : "0") + ',' + format_double(res.residual) +
               ',' + (res.exact ? "1" : "0") + '\n';
    }

    const fs::path out(out_path);
    if (fs::exists(out) && !force)
        throw std::runtime_error("output file exists: " + out_path +
                                 " (use --force to overwrite)");
    const fs::path tmp = out_path + ".tmp";
    write_text_file(tmp, csv);
    fs::rename(tmp, out);

    RunManifest manifest;
    manifest.command = "correct";
    manifest.add_file_digest("model", model_path);
    if (config_path) manifest.add_file_digest("config", *config_path);
    manifest.timestamp = manifest_timestamp();
    const fs::path mpath = out.parent_path() / (out.stem().string() + ".manifest.txt");
    manifest.write(mpath);

    std::cout << "correct: " << target_specs.size() << " targets -> " << out_path << "\n";
    return 0;
}

int cmd_palette() {
    std::printf("%-12s %5s %5s %5s\n", "name", "r", "g", "b");
    for (const auto& e : palette()) {
        if (e.color.off)
            std::printf("%-12s %5s %5s %5s\n", e.name.c_str(), "off", "off", "off");
        else
            std::printf("%-12s %5d %5d %5d\n", e.name.c_str(), e.color.r, e.color.g,
                        e.color.b);
    }
    return 0;
}

int cmd_gamut(const std::string& model_path, const std::string& background_spec,
              const std::optional<std::string>& config_path,
              const std::optional<std::string>& wp_spec, int samples,
              const std::string& out_dir, bool force) {
    const DisplayModel model = load_display_model(model_path);
    std::optional<SimulatorConfig> cfg;
    if (config_path) cfg = SimulatorConfig::from_file(*config_path);
    const BackgroundLight bg = parse_background(background_spec, cfg);
    const WhitePoint wp = resolve_white_point(wp_spec, model, bg);

    StagedDir stage(out_dir, force);
    const GamutCloud cloud = achievable_gamut(bg, model, wp, samples);

    std::string cloud_csv = "r,g,b,L,u_star,v_star\n";
    for (std::size_t i = 0; i < cloud.commands.size(); ++i) {
        const auto& c = cloud.commands[i];
        const auto& p = cloud.points[i];
        cloud_csv += std::to_string(c.r) + ',' + std::to_string(c.g) + ',' +
                     std::to_string(c.b) + ',' + format_double(p.L) + ',' +
                     format_double(p.u) + ',' + format_double(p.v) + '\n';
    }
    write_text_file(stage.dir() / "cloud.csv", cloud_csv);

    std::string hull_csv = "u,v\n";
    for (const auto& p : cloud.hull)
        hull_csv += format_double(p[0]) + ',' + format_double(p[1]) + '\n';
    write_text_file(stage.dir() / "hull.csv", hull_csv);

    // u'v' scatter with the hull outline.
    SvgWriter svg(420, 420);
    svg.rect(0, 0, 420, 420, "#ffffff", "#404040");
    auto px = [](double u) { return 30.0 + u / 0.65 * 370.0; };
    auto py = [](double v) { return 400.0 - v / 0.65 * 370.0; };
    for (const auto& uv : cloud.uv_points)
        svg.circle(px(uv.u), py(uv.v), 1.2, "#87a8c8");
    for (std::size_t i = 0; i < cloud.hull.size(); ++i) {
        const auto& a = cloud.hull[i];
        const auto& b = cloud.hull[(i + 1) % cloud.hull.size()];
        svg.line(px(a[0]), py(a[1]), px(b[0]), py(b[1]), "#202020", 1.5);
    }
    svg.circle(px(wp.uvn.u), py(wp.uvn.v), 4.0, "none", "#cc3333", 1.5);
    char caption[96];
    std::snprintf(caption, sizeof(caption), "hull area %.6f", cloud.hull_area);
    svg.text(30, 18, caption, 12);
    write_text_file(stage.dir() / "gamut.svg", svg.finish());

    RunManifest manifest;
    manifest.command = "gamut";
    manifest.add_file_digest("model", model_path);
    if (config_path) manifest.add_file_digest("config", *config_path);
    manifest.timestamp = manifest_timestamp();
    manifest.write(stage.dir() / "manifest.txt");

    stage.commit();
    std::cout << "gamut: " << cloud.points.size() << " samples, hull area "
              << format_double(cloud.hull_area) << " -> " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) try {
    CLI::App app{"Color blending toolkit for optical see-through AR displays"};
    app.require_subcommand(1);

    // simulate
    std::string sim_config, sim_out;
    std::optional<std::uint64_t> sim_seed;
    bool sim_force = false;
    auto* simulate = app.add_subcommand("simulate", "Generate synthetic colorimeter readings");
    simulate->add_option("--config", sim_config, "Simulator config file")->required();
    simulate->add_option("--out", sim_out, "Output directory")->required();
    simulate->add_option("--seed", sim_seed, "Override the config seed");
    simulate->add_flag("--force", sim_force, "Overwrite existing outputs");

    // analyze
    std::string an_readings, an_out;
    std::optional<std::string> an_classifier;
    bool an_force = false;
    auto* analyze = app.add_subcommand("analyze", "Aggregate readings and analyze all background pairs");
    analyze->add_option("--readings", an_readings, "Readings CSV")->required();
    analyze->add_option("--out", an_out, "Output directory")->required();
    analyze->add_option("--classifier", an_classifier, "Classifier threshold config");
    analyze->add_flag("--force", an_force, "Overwrite existing outputs");

    // correct
    std::string co_model, co_background, co_out;
    std::vector<std::string> co_targets;
    std::optional<std::string> co_config, co_wp;
    double co_tolerance = 1e-6;
    bool co_force = false;
    auto* correct = app.add_subcommand("correct", "Find display commands that preserve intended colors");
    correct->add_option("--model", co_model, "Display model file")->required();
    correct->add_option("--background", co_background, "Background: `x,y,Y` or an id (with --config)")->required();
    correct->add_option("--target", co_targets, "Target: palette name or `L,u,v` (repeatable)")->required();
    correct->add_option("--config", co_config, "Simulator config for background ids");
    correct->add_option("--white-point", co_wp, "White point `x,y,Y` (default: display white + background)");
    correct->add_option("--tolerance", co_tolerance, "Residual considered exact");
    correct->add_option("--out", co_out, "Output CSV")->required();
    correct->add_flag("--force", co_force, "Overwrite existing outputs");

    // palette
    auto* pal = app.add_subcommand("palette", "Print the 27-color palette");

    // gamut
    std::string ga_model, ga_background, ga_out;
    std::optional<std::string> ga_config, ga_wp;
    int ga_samples = 17;
    bool ga_force = false;
    auto* gamutc = app.add_subcommand("gamut", "Sample the achievable perceived gamut");
    gamutc->add_option("--model", ga_model, "Display model file")->required();
    gamutc->add_option("--background", ga_background, "Background: `x,y,Y` or an id (with --config)")->required();
    gamutc->add_option("--config", ga_config, "Simulator config for background ids");
    gamutc->add_option("--white-point", ga_wp, "White point `x,y,Y` (default: display white + background)");
    gamutc->add_option("--samples", ga_samples, "Samples per channel axis");
    gamutc->add_option("--out", ga_out, "Output directory")->required();
    gamutc->add_flag("--force", ga_force, "Overwrite existing outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim_config, sim_out, sim_seed, sim_force);
        if (analyze->parsed()) return cmd_analyze(an_readings, an_out, an_classifier, an_force);
        if (correct->parsed())
            return cmd_correct(co_model, co_background, co_targets, co_config, co_wp,
                               co_tolerance, co_out, co_force);
        if (pal->parsed()) return cmd_palette();
        if (gamutc->parsed())
            return cmd_gamut(ga_model, ga_background, ga_config, ga_wp, ga_samples,
                             ga_out, ga_force);
    } catch (const ConfigError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
} catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
}
