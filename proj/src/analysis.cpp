#include "ostc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ostc/hull.hpp"
#include "ostc/text.hpp"

namespace ostc {

std::string_view to_string(PairCategory c) {
    switch (c) {
        case PairCategory::washout_chromaticity: return "washout-chromaticity";
        case PairCategory::washout_luminance: return "washout-luminance";
        case PairCategory::washout_both: return "washout-both";
        case PairCategory::linear_shift: return "linear-shift";
    }
    return "?";
}

ClassifierConfig ClassifierConfig::from_file(const std::filesystem::path& path) {
    return from_key_values(KeyValueFile::parse_file(path));
}

ClassifierConfig ClassifierConfig::from_key_values(const KeyValueFile& kv) {
    for (const auto& e : kv.entries) {
        if (e.key != "r_min" && e.key != "f_lo" && e.key != "f_hi" && e.key != "epsilon")
            throw ConfigError("line " + std::to_string(e.line) + ": unknown config key '" +
                              e.key + "'");
    }
    ClassifierConfig cfg;
    cfg.r_min = kv.get_double_or("r_min", cfg.r_min);
    cfg.f_lo = kv.get_double_or("f_lo", cfg.f_lo);
    cfg.f_hi = kv.get_double_or("f_hi", cfg.f_hi);
    cfg.epsilon = kv.get_double_or("epsilon", cfg.epsilon);
    if (!(cfg.r_min > 0.0 && cfg.r_min <= 1.0))
        throw ConfigError("r_min must lie in (0, 1]");
    if (!(cfg.f_lo >= 0.0 && cfg.f_lo < cfg.f_hi && cfg.f_hi <= 1.0))
        throw ConfigError("need 0 <= f_lo < f_hi <= 1");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    return cfg;
}

std::pair<double, double> decompose(const std::array<double, 3>& delta) {
    const double total = std::sqrt(delta[0] * delta[0] + delta[1] * delta[1] +
                                   delta[2] * delta[2]);
    if (total == 0.0) return {0.0, 0.0};
    const double lum = delta[0] * delta[0] / total;
    return {lum, total - lum};
}

static LightingCondition side_condition(std::string_view bg) {
    return bg == kNoLights ? LightingCondition::display_only : LightingCondition::both;
}

std::vector<ColorShift> pair_shifts(const Dataset& ds, std::string_view bg_a,
                                    std::string_view bg_b) {
    const LightingCondition cond_a = side_condition(bg_a);
    const LightingCondition cond_b = side_condition(bg_b);
    const bool skip_black = bg_a == kNoLights || bg_b == kNoLights;
    const WhitePoint& wp_a = white_point_for(cond_a, ds.white_points());
    const WhitePoint& wp_b = white_point_for(cond_b, ds.white_points());

    std::vector<ColorShift> shifts;
    shifts.reserve(palette().size());
    for (const auto& entry : palette()) {
        if (skip_black && entry.name == "black") continue;
        const CellSummary& cell_a = ds.at(bg_a, entry.name, cond_a);
        const CellSummary& cell_b = ds.at(bg_b, entry.name, cond_b);
        const TristimulusXYZ xyz_a = xyY_to_XYZ(cell_a.median_xyY);
        const TristimulusXYZ xyz_b = xyY_to_XYZ(cell_b.median_xyY);
        const LuvColor luv_a = XYZ_to_Luv(xyz_a, wp_a);
        const LuvColor luv_b = XYZ_to_Luv(xyz_b, wp_b);

        ColorShift s;
        s.color_name = entry.name;
        s.color = entry.color;
        s.from_uv = XYZ_to_uv(xyz_a);
        s.to_uv = XYZ_to_uv(xyz_b);
        s.delta_luv = {luv_b.L - luv_a.L, luv_b.u - luv_a.u, luv_b.v - luv_a.v};
        s.total = delta_E(luv_a, luv_b);
        auto [lum, chroma] = decompose(s.delta_luv);
        s.lum_component = lum;
        s.chroma_component = chroma;
        shifts.push_back(std::move(s));
    }
    return shifts;
}

PairSummary pair_summary(std::span<const ColorShift> shifts) {
    if (shifts.empty()) throw std::invalid_argument("pair_summary: no shifts");
    PairSummary s;
    for (const auto& shift : shifts) {
        s.avg_total += shift.total;
        s.avg_lum += shift.lum_component;
        s.avg_chroma += shift.chroma_component;
    }
    const double n = static_cast<double>(shifts.size());
    s.avg_total /= n;
    s.avg_lum /= n;
    s.avg_chroma /= n;
    return s;
}

static double spread(std::span<const ColorShift> shifts, bool to_side) {
    double cu = 0.0, cv = 0.0;
    for (const auto& s : shifts) {
        const UvPrime& p = to_side ? s.to_uv : s.from_uv;
        cu += p.u;
        cv += p.v;
    }
    const double n = static_cast<double>(shifts.size());
    cu /= n;
    cv /= n;
    double sq = 0.0;
    for (const auto& s : shifts) {
        const UvPrime& p = to_side ? s.to_uv : s.from_uv;
        sq += (p.u - cu) * (p.u - cu) + (p.v - cv) * (p.v - cv);
    }
    return std::sqrt(sq / n);
}

PatternStats compute_pattern_stats(std::span<const ColorShift> shifts,
                                   const PairSummary& summary) {
    PatternStats st;
    st.lum_fraction = summary.avg_total > 0.0 ? summary.avg_lum / summary.avg_total : 0.0;

    // Mean resultant length of the u'v' shift directions: near 1 when the
    // colors move in parallel, near 0 for a radial star pattern.
    double sum_u = 0.0, sum_v = 0.0;
    std::size_t n_dir = 0;
    for (const auto& s : shifts) {
        const double du = s.to_uv.u - s.from_uv.u;
        const double dv = s.to_uv.v - s.from_uv.v;
        const double len = std::sqrt(du * du + dv * dv);
        if (len > 0.0) {
            sum_u += du / len;
            sum_v += dv / len;
            ++n_dir;
        }
    }
    st.coherence =
        n_dir == 0 ? 0.0 : std::sqrt(sum_u * sum_u + sum_v * sum_v) / static_cast<double>(n_dir);

    const double from_spread = spread(shifts, false);
    st.dispersion_ratio = from_spread > 0.0 ? spread(shifts, true) / from_spread : 0.0;
    return st;
}

PairCategory classify_pair(const PairAnalysis& p, const ClassifierConfig& cfg) {
    if (p.avg_total < cfg.epsilon)
        throw std::domain_error("degenerate pair (" + p.background_a + ", " +
                                p.background_b + "): no perceptual change");
    if (p.stats.coherence >= cfg.r_min) return PairCategory::linear_shift;
    if (p.stats.lum_fraction <= cfg.f_lo) return PairCategory::washout_chromaticity;
    if (p.stats.lum_fraction >= cfg.f_hi) return PairCategory::washout_luminance;
    return PairCategory::washout_both;
}

PairAnalysis analyze_pair(const Dataset& ds, std::string_view bg_a,
                          std::string_view bg_b, const ClassifierConfig& cfg) {
    PairAnalysis p;
    p.background_a = std::string(bg_a);
    p.background_b = std::string(bg_b);
    p.shifts = pair_shifts(ds, bg_a, bg_b);
    const PairSummary s = pair_summary(p.shifts);
    p.avg_total = s.avg_total;
    p.avg_lum = s.avg_lum;
    p.avg_chroma = s.avg_chroma;
    p.stats = compute_pattern_stats(p.shifts, s);
    p.category = classify_pair(p, cfg);
    return p;
}

std::vector<std::pair<std::string, std::string>> pair_order(
    const std::vector<std::string>& backgrounds) {
    std::vector<std::string> rows = backgrounds;
    std::sort(rows.begin(), rows.end(), [](const std::string& a, const std::string& b) {
        const int ra = background_rank(a), rb = background_rank(b);
        return ra != rb ? ra < rb : a < b;
    });
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::string> seconds(rows.begin() + i + 1, rows.end());
        std::sort(seconds.begin(), seconds.end());  // columns alphabetical
        for (const auto& b : seconds) pairs.emplace_back(rows[i], b);
    }
    return pairs;
}

static std::vector<PairAnalysis> run_pairs(const Dataset& ds, const ClassifierConfig& cfg,
                                           bool parallel) {
    const auto pairs = pair_order(ds.backgrounds());
    std::vector<PairAnalysis> out(pairs.size());
    std::exception_ptr error;
    const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[i] = analyze_pair(ds, pairs[i].first, pairs[i].second, cfg);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<PairAnalysis> analyze_all_pairs(const Dataset& ds, const ClassifierConfig& cfg) {
    return run_pairs(ds, cfg, true);
}

std::vector<PairAnalysis> analyze_all_pairs_serial(const Dataset& ds,
                                                   const ClassifierConfig& cfg) {
    return run_pairs(ds, cfg, false);
}

double gamut_compression(const Dataset& ds, std::string_view background) {
    std::vector<Point2> against, dark;
    for (const auto& entry : palette()) {
        if (entry.name == "black") continue;
        const CellSummary& cell =
            ds.at(background, entry.name, side_condition(background));
        const CellSummary& base =
            ds.at(kNoLights, entry.name, LightingCondition::display_only);
        const UvPrime uv_cell = XYZ_to_uv(xyY_to_XYZ(cell.median_xyY));
        const UvPrime uv_base = XYZ_to_uv(xyY_to_XYZ(base.median_xyY));
        against.push_back({uv_cell.u, uv_cell.v});
        dark.push_back({uv_base.u, uv_base.v});
    }
    return hull_area(std::move(against)) / hull_area(std::move(dark));
}

void write_pairs_csv(std::span<const PairAnalysis> pairs, std::ostream& out) {
    out << "bg_a,bg_b,category,avg_total,avg_lum,avg_chroma,lum_fraction,coherence,"
           "dispersion_ratio,n_shifts\n";
    for (const auto& p : pairs) {
        out << p.background_a << ',' << p.background_b << ',' << to_string(p.category) << ','
            << format_double(p.avg_total) << ',' << format_double(p.avg_lum) << ','
            << format_double(p.avg_chroma) << ',' << format_double(p.stats.lum_fraction)
            << ',' << format_double(p.stats.coherence) << ','
            << format_double(p.stats.dispersion_ratio) << ',' << p.shifts.size() << "\n";
    }
}

void write_shifts_csv(std::span<const PairAnalysis> pairs, std::ostream& out) {
    out << "bg_a,bg_b,color_name,u_from,v_from,u_to,v_to,dL,du,dv,total,lum,chroma\n";
    for (const auto& p : pairs) {
        for (const auto& s : p.shifts) {
            out << p.background_a << ',' << p.background_b << ',' << s.color_name << ','
                << format_double(s.from_uv.u) << ',' << format_double(s.from_uv.v) << ','
                << format_double(s.to_uv.u) << ',' << format_double(s.to_uv.v) << ','
                << format_double(s.delta_luv[0]) << ',' << format_double(s.delta_luv[1])
                << ',' << format_double(s.delta_luv[2]) << ',' << format_double(s.total)
                << ',' << format_double(s.lum_component) << ','
                << format_double(s.chroma_component) << "\n";
        }
    }
}

static std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

void write_report(std::span<const PairAnalysis> pairs, std::ostream& out) {
    out << "Pairwise background analysis: " << pairs.size() << " pairs\n\n";
    out << "pair                                            category              "
           "avg_total  avg_lum  avg_chroma\n";
    for (const auto& p : pairs) {
        std::string name = p.background_a + " / " + p.background_b;
        name.resize(std::max<std::size_t>(name.size(), 47), ' ');
        std::string cat(to_string(p.category));
        cat.resize(std::max<std::size_t>(cat.size(), 21), ' ');
        out << name << ' ' << cat << ' ' << fixed3(p.avg_total) << "  "
            << fixed3(p.avg_lum) << "  " << fixed3(p.avg_chroma) << "\n";
    }

    out << "\nPoster vs real comparisons (ids differing only in kind):\n";
    bool any = false;
    for (const auto& p : pairs) {
        const auto kind_a = background_kind(p.background_a);
        const auto kind_b = background_kind(p.background_b);
        const bool poster_real =
            (kind_a == BackgroundKind::poster && kind_b == BackgroundKind::real) ||
            (kind_a == BackgroundKind::real && kind_b == BackgroundKind::poster);
        if (!poster_real || background_base(p.background_a) != background_base(p.background_b))
            continue;
        any = true;
        out << "  " << p.background_a << " / " << p.background_b << ": "
            << to_string(p.category) << ", avg_total " << fixed3(p.avg_total) << "\n";
    }
    if (!any) out << "  (none present)\n";
}

}  // namespace ostc
