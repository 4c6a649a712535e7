#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ostc/analysis.hpp"
#include "ostc/hull.hpp"
#include "oracle_hull.hpp"
#include "support.hpp"

using namespace ostc;
using test::DatasetBuilder;
using test::d65_xyz;

namespace {

Dataset default_like_dataset() {
    const DisplayModel m = srgb_display_model(100.0, 2.2);
    return DatasetBuilder(m)
        .with_no_lights()
        .with_background("white-poster", d65_xyz(150.0))
        .with_background("sand-real", xyY_to_XYZ({0.36, 0.37, 65.0}))
        .with_background("brick-real", xyY_to_XYZ({0.42, 0.36, 30.0}))
        .with_background("brick-poster", xyY_to_XYZ({0.43, 0.36, 33.0}))
        .build();
}

}  // namespace

TEST_CASE("decompose splits a delta into luminance and chromaticity shares") {
    auto [lum1, chroma1] = decompose({5.0, 0.0, 0.0});
    CHECK(lum1 == 5.0);
    CHECK(chroma1 == 0.0);

    auto [lum2, chroma2] = decompose({0.0, 3.0, 4.0});
    CHECK(lum2 == 0.0);
    CHECK(chroma2 == 5.0);

    // (3,4,0): lum = 9/5, chroma = 16/5, verified by hand
    auto [lum3, chroma3] = decompose({3.0, 4.0, 0.0});
    CHECK(lum3 == doctest::Approx(1.8).epsilon(1e-15));
    CHECK(chroma3 == doctest::Approx(3.2).epsilon(1e-15));
    CHECK(lum3 + chroma3 == doctest::Approx(5.0).epsilon(1e-15));

    auto [lum0, chroma0] = decompose({0.0, 0.0, 0.0});
    CHECK(lum0 == 0.0);
    CHECK(chroma0 == 0.0);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> span(-150.0, 150.0);
    for (int i = 0; i < 1000; ++i) {
        const std::array<double, 3> d{span(rng), span(rng), span(rng)};
        auto [lum, chroma] = decompose(d);
        const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        CHECK(lum >= 0.0);
        CHECK(chroma >= 0.0);
        CHECK(lum + chroma == doctest::Approx(norm).epsilon(1e-12));
    }
}

TEST_CASE("pair_shifts basics") {
    const Dataset ds = default_like_dataset();

    SUBCASE("identical backgrounds give zero deltas") {
        for (const auto& s : pair_shifts(ds, "brick-real", "brick-real")) {
            CHECK(s.total == 0.0);
            CHECK(s.delta_luv == std::array<double, 3>{0.0, 0.0, 0.0});
        }
    }

    SUBCASE("no-lights pairs have 26 shifts, illuminated pairs 27") {
        CHECK(pair_shifts(ds, kNoLights, "white-poster").size() == 26);
        CHECK(pair_shifts(ds, "brick-real", "white-poster").size() == 27);
    }

    SUBCASE("red sits far right of the white cluster under no-lights") {
        const auto shifts = pair_shifts(ds, kNoLights, "white-poster");
        const ColorShift* red = nullptr;
        for (const auto& s : shifts)
            if (s.color_name == "red") red = &s;
        REQUIRE(red);
        CHECK(red->from_uv.u > 0.44);      // sRGB red u' ~ 0.45
        CHECK(red->to_uv.u < 0.25);        // washed toward the white point
    }

    SUBCASE("reversing the pair reverses deltas but keeps components") {
        const auto ab = pair_shifts(ds, "brick-real", "white-poster");
        const auto ba = pair_shifts(ds, "white-poster", "brick-real");
        REQUIRE(ab.size() == ba.size());
        for (std::size_t i = 0; i < ab.size(); ++i) {
            CHECK(ab[i].total == ba[i].total);
            CHECK(ab[i].lum_component == ba[i].lum_component);
            CHECK(ab[i].chroma_component == ba[i].chroma_component);
            CHECK(ab[i].delta_luv[0] == -ba[i].delta_luv[0]);
            CHECK(ab[i].delta_luv[1] == -ba[i].delta_luv[1]);
            CHECK(ab[i].delta_luv[2] == -ba[i].delta_luv[2]);
        }
    }

    SUBCASE("components sum to totals") {
        for (const auto& s : pair_shifts(ds, kNoLights, "sand-real")) {
            CHECK(s.lum_component >= 0.0);
            CHECK(s.chroma_component >= 0.0);
            CHECK(s.lum_component + s.chroma_component ==
                  doctest::Approx(s.total).epsilon(1e-12));
        }
    }

    SUBCASE("missing cells are named") {
        CHECK_THROWS_AS((void)pair_shifts(ds, "brick-real", "pavement-real"),
                        MissingCellError);
    }
}

TEST_CASE("pair_summary averages") {
    const Dataset ds = default_like_dataset();
    const auto shifts = pair_shifts(ds, kNoLights, "white-poster");
    const PairSummary s = pair_summary(shifts);
    CHECK(s.avg_lum + s.avg_chroma == doctest::Approx(s.avg_total).epsilon(1e-12));

    // identical shifts average to the single shift's values
    std::vector<ColorShift> same(5, shifts[0]);
    const PairSummary one = pair_summary(same);
    CHECK(one.avg_total == doctest::Approx(shifts[0].total).epsilon(1e-15));

    CHECK_THROWS_AS(pair_summary(std::vector<ColorShift>{}), std::invalid_argument);
}

TEST_CASE("classifier recovers the four archetype patterns") {
    const DisplayModel m = srgb_display_model(100.0, 2.2);
    const ClassifierConfig cfg;

    SUBCASE("(a) darkness vs bright white: chromaticity washout, star pattern") {
        const Dataset ds = DatasetBuilder(m)
                               .with_no_lights()
                               .with_background("white-poster", d65_xyz(150.0))
                               .build();
        const PairAnalysis p = analyze_pair(ds, kNoLights, "white-poster", cfg);
        CHECK(p.category == PairCategory::washout_chromaticity);
        CHECK(p.stats.coherence < 0.5);
        CHECK(p.stats.lum_fraction < 0.33);
        // the to-side cluster is much tighter than the no-lights spread
        CHECK(p.stats.dispersion_ratio < 0.5);
    }

    SUBCASE("(b) bright same-chroma backgrounds: luminance washout") {
        const Dataset ds = DatasetBuilder(m)
                               .with_no_lights()
                               .with_background("white-poster", d65_xyz(150.0))
                               .with_background("bright-a-real", d65_xyz(100.0))
                               .with_background("bright-b-real", d65_xyz(300.0))
                               .build();
        const PairAnalysis p = analyze_pair(ds, "bright-a-real", "bright-b-real", cfg);
        CHECK(p.category == PairCategory::washout_luminance);
        CHECK(p.stats.lum_fraction > 0.67);
    }

    SUBCASE("(c) mixed washout") {
        const Dataset ds = DatasetBuilder(m)
                               .with_no_lights()
                               .with_background("white-poster", d65_xyz(150.0))
                               .with_background("mid-a-real", xyY_to_XYZ({0.33, 0.34, 80.0}))
                               .with_background("mid-b-real", xyY_to_XYZ({0.36, 0.37, 280.0}))
                               .build();
        const PairAnalysis p = analyze_pair(ds, "mid-a-real", "mid-b-real", cfg);
        CHECK(p.category == PairCategory::washout_both);
        CHECK(p.stats.lum_fraction > 0.33);
        CHECK(p.stats.lum_fraction < 0.67);
    }

    SUBCASE("(d) dim chroma change: linear shift") {
        const Dataset ds = DatasetBuilder(m)
                               .with_no_lights()
                               .with_background("white-poster", d65_xyz(150.0))
                               .with_background("dim-a-real", xyY_to_XYZ({0.36, 0.40, 12.0}))
                               .with_background("dim-b-real", xyY_to_XYZ({0.42, 0.36, 12.0}))
                               .build();
        const PairAnalysis p = analyze_pair(ds, "dim-a-real", "dim-b-real", cfg);
        CHECK(p.category == PairCategory::linear_shift);
        CHECK(p.stats.coherence >= 0.8);
    }
}

TEST_CASE("a constructed constant u'v' offset classifies as a linear shift") {
    const DisplayModel m = srgb_display_model(100.0, 2.2);
    const BackgroundLight bg{xyY_to_XYZ({0.36, 0.40, 12.0})};

    std::map<CellKey, CellSummary> cells;
    auto put = [&](const std::string& bgname, const std::string& color,
                   LightingCondition cond, const TristimulusXYZ& xyz) {
        CellSummary cell;
        cell.key = CellKey{bgname, color, cond};
        cell.median_xyY = XYZ_to_xyY(xyz);
        cell.n_readings = 1;
        cells[cell.key] = cell;
    };
    // white-point cells
    put(std::string(kNoLights), "white", LightingCondition::display_only,
        display_to_XYZ({255, 255, 255, false}, m));
    put(std::string(kWhitePoster), "black", LightingCondition::background_only,
        d65_xyz(150.0));
    put(std::string(kWhitePoster), "white", LightingCondition::both,
        blend(display_to_XYZ({255, 255, 255, false}, m), BackgroundLight{d65_xyz(150.0)}));
    // side A: real blends; side B: the same points translated in u'v'
    const UvPrime offset{0.04, -0.02};
    for (const auto& e : palette()) {
        const TristimulusXYZ a = blend(display_to_XYZ(e.color, m), bg);
        const UvPrime uv = XYZ_to_uv(a);
        const TristimulusXYZ b =
            test::xyz_from_uv({uv.u + offset.u, uv.v + offset.v}, a.Y);
        put("shift-a-real", e.name, LightingCondition::both, a);
        put("shift-b-real", e.name, LightingCondition::both, b);
        if (e.name == "black") {
            put("shift-a-real", e.name, LightingCondition::background_only, a);
            put("shift-b-real", e.name, LightingCondition::background_only, b);
        }
    }
    const Dataset ds(cells, extract_white_points(cells));
    const PairAnalysis p = analyze_pair(ds, "shift-a-real", "shift-b-real", {});
    CHECK(p.stats.coherence == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p.category == PairCategory::linear_shift);
}

TEST_CASE("classifier edge behavior") {
    const Dataset ds = default_like_dataset();
    const ClassifierConfig cfg;

    SUBCASE("degenerate pair is rejected") {
        PairAnalysis p;
        p.background_a = "brick-real";
        p.background_b = "brick-real";
        p.shifts = pair_shifts(ds, "brick-real", "brick-real");
        p.avg_total = 0.0;
        CHECK_THROWS_AS(classify_pair(p, cfg), std::domain_error);
    }

    SUBCASE("washout classification is symmetric in the pair order") {
        const PairAnalysis ab = analyze_pair(ds, kNoLights, "white-poster", cfg);
        const PairAnalysis ba = analyze_pair(ds, "white-poster", kNoLights, cfg);
        CHECK(ab.category == ba.category);
        CHECK(ab.stats.coherence == doctest::Approx(ba.stats.coherence).epsilon(1e-12));
        CHECK(ab.avg_total == doctest::Approx(ba.avg_total).epsilon(1e-12));
    }

    SUBCASE("linear-shift classification is symmetric in the pair order") {
        const DisplayModel m = srgb_display_model(100.0, 2.2);
        const Dataset dim = DatasetBuilder(m)
                                .with_no_lights()
                                .with_background("white-poster", d65_xyz(150.0))
                                .with_background("dim-a-real", xyY_to_XYZ({0.36, 0.40, 12.0}))
                                .with_background("dim-b-real", xyY_to_XYZ({0.42, 0.36, 12.0}))
                                .build();
        const PairAnalysis ab = analyze_pair(dim, "dim-a-real", "dim-b-real", cfg);
        const PairAnalysis ba = analyze_pair(dim, "dim-b-real", "dim-a-real", cfg);
        CHECK(ab.category == PairCategory::linear_shift);
        CHECK(ba.category == PairCategory::linear_shift);
        CHECK(ab.stats.coherence == doctest::Approx(ba.stats.coherence).epsilon(1e-12));
    }

    SUBCASE("bad threshold configs are rejected") {
        std::stringstream in("r_min 1.5\n");
        CHECK_THROWS_AS(ClassifierConfig::from_key_values(KeyValueFile::parse(in)),
                        ConfigError);
        std::stringstream in2("f_lo 0.7\nf_hi 0.3\n");
        CHECK_THROWS_AS(ClassifierConfig::from_key_values(KeyValueFile::parse(in2)),
                        ConfigError);
    }
}

TEST_CASE("pair ordering matches the panel layout") {
    std::vector<std::string> bgs = {"brick-real", "no-lights", "white-poster",
                                    "sand-real"};
    const auto pairs = pair_order(bgs);
    REQUIRE(pairs.size() == 6);
    CHECK(pairs[0] == std::pair<std::string, std::string>{"no-lights", "brick-real"});
    CHECK(pairs[1] == std::pair<std::string, std::string>{"no-lights", "sand-real"});
    CHECK(pairs[2] == std::pair<std::string, std::string>{"no-lights", "white-poster"});
    CHECK(pairs[3] == std::pair<std::string, std::string>{"white-poster", "brick-real"});
    CHECK(pairs[4] == std::pair<std::string, std::string>{"white-poster", "sand-real"});
    CHECK(pairs[5] == std::pair<std::string, std::string>{"sand-real", "brick-real"});
}

TEST_CASE("gamut compression") {
    const DisplayModel m = srgb_display_model(100.0, 2.2);

    SUBCASE("zero background light gives ratio 1") {
        const Dataset ds = DatasetBuilder(m)
                               .with_no_lights()
                               .with_background("white-poster", d65_xyz(150.0))
                               .with_background("zero-real", TristimulusXYZ{0.0, 0.0, 0.0})
                               .build();
        CHECK(gamut_compression(ds, "zero-real") == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("ratio decreases monotonically with background luminance") {
        DatasetBuilder builder(m);
        builder.with_no_lights().with_background("white-poster", d65_xyz(150.0));
        const double sweep[] = {10.0, 30.0, 100.0, 300.0, 900.0};
        for (double Y : sweep)
            builder.with_background("lvl-" + std::to_string(int(Y)) + "-real", d65_xyz(Y));
        const Dataset ds = builder.build();
        double prev = 1.0;
        for (double Y : sweep) {
            const double r = gamut_compression(ds, "lvl-" + std::to_string(int(Y)) + "-real");
            CHECK(r < prev);
            CHECK(r > 0.0);
            prev = r;
        }
    }

    SUBCASE("the ratio agrees with an independent hull oracle") {
        const Dataset ds = DatasetBuilder(m)
                               .with_no_lights()
                               .with_background("white-poster", d65_xyz(100.0))
                               .build();
        const double got = gamut_compression(ds, "white-poster");

        std::vector<test::Pt> against, dark;
        for (const auto& e : palette()) {
            if (e.name == "black") continue;
            const TristimulusXYZ d = display_to_XYZ(e.color, m);
            const UvPrime a = XYZ_to_uv(blend(d, BackgroundLight{d65_xyz(100.0)}));
            const UvPrime b = XYZ_to_uv(d);
            against.push_back({a.u, a.v});
            dark.push_back({b.u, b.v});
        }
        const double want = test::oracle_hull_area(against) / test::oracle_hull_area(dark);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
        CHECK(got < 0.5);
    }

    SUBCASE("collinear points raise a degenerate-hull error") {
        std::vector<Point2> line = {{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}};
        CHECK_THROWS_AS(hull_area(line), std::domain_error);
    }
}

TEST_CASE("export writes 55 panels, an index, and the sidecar csv") {
    const DisplayModel m = srgb_display_model(100.0, 2.2);
    DatasetBuilder builder(m);
    builder.with_no_lights();
    SimulatorConfig cfg;
    cfg.backgrounds = {{"white-poster", {0.3127, 0.3290, 150.0}}};
    for (const auto& name : canonical_backgrounds())
        if (name != kNoLights && name != kWhitePoster)
            cfg.backgrounds.push_back({name, {0.35, 0.36, 20.0 + background_rank(name)}});
    for (const auto& [name, c] : cfg.backgrounds)
        builder.with_background(name, xyY_to_XYZ(c));
    const Dataset ds = builder.build();

    const auto pairs = analyze_all_pairs(ds, {});
    REQUIRE(pairs.size() == 55);

    const auto dir = std::filesystem::temp_directory_path() / "ostc-export-test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    export_small_multiples(pairs, dir);

    std::size_t panels = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir / "panels")) {
        CHECK(e.path().extension() == ".svg");
        ++panels;
    }
    CHECK(panels == 55);
    CHECK(std::filesystem::exists(dir / "index.html"));

    // sidecar rows: no-lights pairs contribute 26 rows, the rest 27
    std::ifstream shifts(dir / "shifts.csv");
    std::string line;
    std::getline(shifts, line);  // header
    std::size_t rows = 0;
    while (std::getline(shifts, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 10 * 26 + 45 * 27);

    // bar scaling: the globally largest pair spans the full track width,
    // everything else is proportionally shorter
    const PairAnalysis* largest = &pairs[0];
    for (const auto& p : pairs)
        if (p.avg_total > largest->avg_total) largest = &p;
    auto bar_width = [&](const PairAnalysis& p) {
        std::ifstream svg(dir / "panels" / (p.background_a + "__" + p.background_b + ".svg"));
        std::ostringstream buf;
        buf << svg.rdbuf();
        const std::string text = buf.str();
        double track = 0.0, colored = 0.0;
        std::size_t pos = 0;
        while ((pos = text.find("<rect ", pos)) != std::string::npos) {
            const std::size_t wpos = text.find("width=\"", pos) + 7;
            const double w = std::stod(text.substr(wpos));
            if (text.find("#e87ea1", pos) < text.find("/>", pos) ||
                text.find("#6699cc", pos) < text.find("/>", pos))
                colored += w;
            else if (text.find("#c0c0c0", pos) < text.find("/>", pos))
                track = w;
            pos += 6;
        }
        REQUIRE(track > 0.0);
        return colored / track;
    };
    CHECK(bar_width(*largest) == doctest::Approx(1.0).epsilon(0.01));
    for (const auto& p : pairs)
        if (&p != largest)
            CHECK(bar_width(p) <= p.avg_total / largest->avg_total + 0.01);

    std::filesystem::remove_all(dir);
}

TEST_CASE("report lists poster-vs-real pairs") {
    const Dataset ds = default_like_dataset();
    const auto pairs = analyze_all_pairs(ds, {});
    std::stringstream out;
    write_report(pairs, out);
    const std::string text = out.str();
    CHECK(text.find("Poster vs real comparisons") != std::string::npos);
    CHECK(text.find("brick-poster / brick-real") != std::string::npos);

    std::stringstream pcsv;
    write_pairs_csv(pairs, pcsv);
    std::string header;
    std::getline(pcsv, header);
    CHECK(header.starts_with("bg_a,bg_b,category,avg_total"));
}
