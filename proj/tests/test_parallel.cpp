// The OpenMP kernels must be bitwise-equivalent to their serial references.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ostc/analysis.hpp"
#include "ostc/dataset.hpp"
#include "ostc/solver.hpp"
#include "support.hpp"

using namespace ostc;
using test::d65_xyz;

namespace {

SimulatorConfig noisy_config() {
    SimulatorConfig cfg;
    cfg.seed = 1234;
    cfg.readings_per_cell = 17;
    cfg.noise_rel = 0.02;
    cfg.backgrounds = {
        {"white-poster", {0.3127, 0.3290, 150.0}},
        {"sand-real", {0.36, 0.37, 65.0}},
        {"brick-real", {0.42, 0.36, 30.0}},
    };
    return cfg;
}

}  // namespace

TEST_CASE("simulate_testbed: parallel equals serial bitwise") {
    const SimulatorConfig cfg = noisy_config();
    const auto parallel = simulate_testbed(cfg);
    const auto serial = simulate_testbed_serial(cfg);
    REQUIRE(parallel.size() == serial.size());
    CHECK(parallel == serial);
}

TEST_CASE("achievable_gamut: parallel equals serial bitwise") {
    const DisplayModel m = srgb_display_model(100.0, 2.2);
    const BackgroundLight bg{d65_xyz(60.0)};
    const WhitePoint wp = make_white_point(blend(m.white(), bg), LightingCondition::both);
    const GamutCloud a = achievable_gamut(bg, m, wp, 13);
    const GamutCloud b = achievable_gamut_serial(bg, m, wp, 13);
    REQUIRE(a.points.size() == b.points.size());
    CHECK(a.commands == b.commands);
    CHECK(a.points == b.points);
    CHECK(a.hull_area == b.hull_area);
}

TEST_CASE("best_on_lattice: parallel equals serial bitwise") {
    const DisplayModel m = srgb_display_model(100.0, 2.2);
    const BackgroundLight bg{d65_xyz(45.0)};
    const WhitePoint wp = make_white_point(blend(m.white(), bg), LightingCondition::both);
    for (double L : {20.0, 55.0, 90.0}) {
        const PerceptualObjective objective{&m, bg, wp, LuvColor{L, 25.0, -15.0}};
        const ScanBest a = best_on_lattice(objective, command_lattice(21));
        const ScanBest b = best_on_lattice_serial(objective, command_lattice(21));
        CHECK(a.command == b.command);
        CHECK(a.residual == b.residual);
    }
}

TEST_CASE("analyze_all_pairs: parallel equals serial") {
    const Dataset ds = aggregate_cells(simulate_testbed(noisy_config()));
    const auto a = analyze_all_pairs(ds, {});
    const auto b = analyze_all_pairs_serial(ds, {});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].background_a == b[i].background_a);
        CHECK(a[i].background_b == b[i].background_b);
        CHECK(a[i].avg_total == b[i].avg_total);
        CHECK(a[i].avg_lum == b[i].avg_lum);
        CHECK(a[i].stats.coherence == b[i].stats.coherence);
        CHECK(a[i].category == b[i].category);
        REQUIRE(a[i].shifts.size() == b[i].shifts.size());
        for (std::size_t j = 0; j < a[i].shifts.size(); ++j)
            CHECK(a[i].shifts[j].delta_luv == b[i].shifts[j].delta_luv);
    }
}
