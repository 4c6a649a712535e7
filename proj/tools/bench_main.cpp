// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ostc/analysis.hpp"
#include "ostc/dataset.hpp"
#include "ostc/solver.hpp"

using namespace ostc;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f, int repeats = 3) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = Clock::now();
        f();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-24s serial %9.2f ms   openmp %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                equal ? "results identical" : "RESULTS DIFFER");
}

SimulatorConfig bench_config(int readings_per_cell) {
    SimulatorConfig cfg;
    cfg.seed = 7;
    cfg.readings_per_cell = readings_per_cell;
    cfg.noise_rel = 0.01;
    cfg.backgrounds = {
        {"white-poster", {0.3127, 0.3290, 150.0}},
        {"sand-real", {0.36, 0.37, 65.0}},
        {"brick-real", {0.42, 0.36, 30.0}},
        {"green-foliage-real", {0.33, 0.42, 15.0}},
        {"pavement-poster", {0.327, 0.347, 44.0}},
    };
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--quick") quick = true;

#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both columns run serially\n\n");
#endif

    bool all_equal = true;

    {
        const SimulatorConfig cfg = bench_config(quick ? 100 : 600);
        std::vector<MeasurementRecord> a, b;
        const double ts = time_ms([&] { a = simulate_testbed_serial(cfg); });
        const double tp = time_ms([&] { b = simulate_testbed(cfg); });
        const bool eq = a == b;
        all_equal = all_equal && eq;
        report("simulate_testbed", ts, tp, eq);
    }

    const DisplayModel model = srgb_display_model(100.0, 2.2);
    const BackgroundLight bg{xyY_to_XYZ({0.3127, 0.3290, 80.0})};
    const WhitePoint wp =
        make_white_point(blend(model.white(), bg), LightingCondition::both);

    {
        const int samples = quick ? 32 : 56;
        GamutCloud a, b;
        const double ts =
            time_ms([&] { a = achievable_gamut_serial(bg, model, wp, samples); });
        const double tp = time_ms([&] { b = achievable_gamut(bg, model, wp, samples); });
        const bool eq = a.hull_area == b.hull_area && a.commands == b.commands;
        all_equal = all_equal && eq;
        report("achievable_gamut", ts, tp, eq);
    }

    {
        const LuvColor target{70.0, 40.0, 20.0};
        const PerceptualObjective objective{&model, bg, wp, target};
        const auto lattice = command_lattice(quick ? 48 : 86);
        ScanBest a, b;
        const double ts = time_ms([&] { a = best_on_lattice_serial(objective, lattice); });
        const double tp = time_ms([&] { b = best_on_lattice(objective, lattice); });
        const bool eq = a.command == b.command && a.residual == b.residual;
        all_equal = all_equal && eq;
        report("best_on_lattice", ts, tp, eq);
    }

    {
        const SimulatorConfig cfg = bench_config(quick ? 40 : 120);
        const Dataset ds = aggregate_cells(simulate_testbed(cfg));
        const ClassifierConfig ccfg;
        std::vector<PairAnalysis> a, b;
        const double ts = time_ms([&] { a = analyze_all_pairs_serial(ds, ccfg); });
        const double tp = time_ms([&] { b = analyze_all_pairs(ds, ccfg); });
        bool eq = a.size() == b.size();
        for (std::size_t i = 0; eq && i < a.size(); ++i)
            eq = a[i].avg_total == b[i].avg_total && a[i].category == b[i].category;
        all_equal = all_equal && eq;
        report("analyze_all_pairs", ts, tp, eq);
    }

    if (!all_equal) {
        std::printf("\nFAILURE: a parallel kernel diverged from its serial reference\n");
        return 1;
    }
    return 0;
}
