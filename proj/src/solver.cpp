#include "ostc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ostc {

LuvColor PerceptualObjective::perceived(const DisplayColor& c) const {
    return XYZ_to_Luv(blend(display_to_XYZ(c, *model), background), white_point);
}

double PerceptualObjective::operator()(const DisplayColor& c) const {
    return delta_E(target, perceived(c));
}

bool command_precedes(const DisplayColor& a, const DisplayColor& b) {
    if (a.off != b.off) return a.off;
    return std::tie(a.r, a.g, a.b) < std::tie(b.r, b.g, b.b);
}

static bool candidate_better(const DisplayColor& cand, double cand_res,
                             const DisplayColor& best, double best_res) {
    if (cand_res != best_res) return cand_res < best_res;
    return command_precedes(cand, best);
}

std::vector<int> command_lattice(int per_axis) {
    if (per_axis < 2) throw std::invalid_argument("lattice needs >= 2 values per axis");
    std::vector<int> values;
    values.reserve(per_axis);
    for (int i = 0; i < per_axis; ++i) {
        const int v = static_cast<int>(std::lround(i * 255.0 / (per_axis - 1)));
        if (values.empty() || values.back() != v) values.push_back(v);
    }
    return values;
}

static ScanBest scan(const PerceptualObjective& objective,
                     const std::vector<int>& axis_values, bool parallel) {
    const auto n = static_cast<std::int64_t>(axis_values.size());
    const std::int64_t total = n * n * n;

    const DisplayColor off = DisplayColor::off_command();
    ScanBest global{off, objective(off)};

#ifdef _OPENMP
    const int max_threads = parallel ? omp_get_max_threads() : 1;
#else
    const int max_threads = 1;
    (void)parallel;
#endif
    std::vector<ScanBest> per_thread(max_threads, global);

#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t idx = 0; idx < total; ++idx) {
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
#else
        const int tid = 0;
#endif
        const DisplayColor c{axis_values[idx / (n * n)],
                             axis_values[(idx / n) % n],
                             axis_values[idx % n], false};
        const double res = objective(c);
        ScanBest& best = per_thread[tid];
        if (candidate_better(c, res, best.command, best.residual)) {
            best.command = c;
            best.residual = res;
        }
    }
    // Merge in fixed thread order; the comparison is a total order, so the
    // winner is the same regardless of how the loop was split.
    for (const ScanBest& b : per_thread) {
        if (candidate_better(b.command, b.residual, global.command, global.residual))
            global = b;
    }
    return global;
}

ScanBest best_on_lattice(const PerceptualObjective& objective,
                         const std::vector<int>& axis_values) {
    return scan(objective, axis_values, true);
}

ScanBest best_on_lattice_serial(const PerceptualObjective& objective,
                                const std::vector<int>& axis_values) {
    return scan(objective, axis_values, false);
}

static GamutCloud gamut(const BackgroundLight& bg, const DisplayModel& m,
                        const WhitePoint& wp, int samples_per_axis, bool parallel) {
    if (samples_per_axis < 2)
        throw std::invalid_argument("achievable_gamut needs samples_per_axis >= 2");
    const std::vector<int> values = command_lattice(samples_per_axis);
    const auto n = static_cast<std::int64_t>(values.size());
    const std::int64_t total = n * n * n;

    GamutCloud cloud;
    cloud.commands.resize(total);
    cloud.points.resize(total);
    std::vector<UvPrime> uv(total);
    std::vector<char> has_uv(total, 0);

#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const DisplayColor c{values[idx / (n * n)], values[(idx / n) % n],
                             values[idx % n], false};
        cloud.commands[idx] = c;
        const TristimulusXYZ xyz = blend(display_to_XYZ(c, m), bg);
        cloud.points[idx] = XYZ_to_Luv(xyz, wp);
        if (xyz.X + 15.0 * xyz.Y + 3.0 * xyz.Z > 0.0) {
            uv[idx] = XYZ_to_uv(xyz);
            has_uv[idx] = 1;
        }
    }

    std::vector<Point2> pts;
    pts.reserve(total);
    for (std::int64_t idx = 0; idx < total; ++idx) {
        if (!has_uv[idx]) continue;
        cloud.uv_points.push_back(uv[idx]);
        pts.push_back({uv[idx].u, uv[idx].v});
    }
    cloud.hull = convex_hull(std::move(pts));
    cloud.hull_area = cloud.hull.size() >= 3 ? polygon_area(cloud.hull) : 0.0;
    return cloud;
}

GamutCloud achievable_gamut(const BackgroundLight& bg, const DisplayModel& m,
                            const WhitePoint& wp, int samples_per_axis) {
    return gamut(bg, m, wp, samples_per_axis, true);
}

GamutCloud achievable_gamut_serial(const BackgroundLight& bg, const DisplayModel& m,
                                   const WhitePoint& wp, int samples_per_axis) {
    return gamut(bg, m, wp, samples_per_axis, false);
}

namespace {

struct Descent {
    DisplayColor command;
    double residual;
    int iterations;
};

// Local integer descent over the 26-neighborhood in index space, moving only
// on strict improvement.
Descent descend(const PerceptualObjective& objective, const std::vector<int>& space,
                int start_r, int start_g, int start_b, double start_res) {
    const int last = static_cast<int>(space.size()) - 1;
    int pos[3] = {start_r, start_g, start_b};
    double cur = start_res;
    int iterations = 0;
    bool improved = true;
    while (improved) {
        improved = false;
        int best_pos[3] = {pos[0], pos[1], pos[2]};
        DisplayColor best_cand{space[pos[0]], space[pos[1]], space[pos[2]], false};
        double best_res = cur;
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dg = -1; dg <= 1; ++dg) {
                for (int db = -1; db <= 1; ++db) {
                    if (dr == 0 && dg == 0 && db == 0) continue;
                    const int p[3] = {pos[0] + dr, pos[1] + dg, pos[2] + db};
                    if (p[0] < 0 || p[0] > last || p[1] < 0 || p[1] > last || p[2] < 0 ||
                        p[2] > last)
                        continue;
                    const DisplayColor cand{space[p[0]], space[p[1]], space[p[2]], false};
                    const double res = objective(cand);
                    if (res < cur && candidate_better(cand, res, best_cand, best_res)) {
                        best_res = res;
                        best_cand = cand;
                        best_pos[0] = p[0];
                        best_pos[1] = p[1];
                        best_pos[2] = p[2];
                    }
                }
            }
        }
        if (best_res < cur) {
            cur = best_res;
            pos[0] = best_pos[0];
            pos[1] = best_pos[1];
            pos[2] = best_pos[2];
            improved = true;
            ++iterations;
        }
    }
    return Descent{DisplayColor{space[pos[0]], space[pos[1]], space[pos[2]], false}, cur,
                   iterations};
}

// Analytic seed: invert the perceptual pipeline (Luv -> XYZ, subtract the
// background, invert the primaries and the tone curve) and round onto the
// command grid. For a target that the display can reach exactly this lands
// on its command; otherwise it gives a projection worth polishing.
std::vector<std::array<int, 3>> analytic_seeds(const LuvColor& target,
                                               const BackgroundLight& bg,
                                               const DisplayModel& m,
                                               const WhitePoint& wp) {
    TristimulusXYZ want;
    try {
        want = Luv_to_XYZ(target, wp);
    } catch (const std::domain_error&) {
        return {};
    }
    const double d[3] = {want.X - bg.xyz.X, want.Y - bg.xyz.Y, want.Z - bg.xyz.Z};

    const auto& a = m.primaries;
    const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (std::abs(det) < 1e-15) return {};
    const double inv[3][3] = {
        {(a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det,
         (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det,
         (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det},
        {(a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det,
         (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det,
         (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det},
        {(a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det,
         (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det,
         (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det},
    };

    double cmd[3];
    for (int i = 0; i < 3; ++i) {
        const double lin =
            std::clamp(inv[i][0] * d[0] + inv[i][1] * d[1] + inv[i][2] * d[2], 0.0, 1.0);
        cmd[i] = 255.0 * std::pow(lin, 1.0 / m.tone_gamma);
    }

    // Round each channel both ways; the nearest grid point is among these.
    std::vector<std::array<int, 3>> seeds;
    for (int mask = 0; mask < 8; ++mask) {
        std::array<int, 3> s{};
        for (int i = 0; i < 3; ++i) {
            const double v = (mask >> i) & 1 ? std::ceil(cmd[i]) : std::floor(cmd[i]);
            s[i] = std::clamp(static_cast<int>(v), 0, 255);
        }
        if (std::find(seeds.begin(), seeds.end(), s) == seeds.end()) seeds.push_back(s);
    }
    return seeds;
}

}  // namespace

CorrectionResult correct_color(const LuvColor& target, const BackgroundLight& bg,
                               const DisplayModel& m, const WhitePoint& wp,
                               double tolerance, const SolverOptions& opts) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

    const PerceptualObjective objective{&m, bg, wp, target};

    // The search space: either the full 8-bit range or a restricted lattice.
    const std::vector<int> space = opts.lattice_per_axis >= 2
                                       ? command_lattice(opts.lattice_per_axis)
                                       : [] {
                                             std::vector<int> v(256);
                                             for (int i = 0; i < 256; ++i) v[i] = i;
                                             return v;
                                         }();
    const int last = static_cast<int>(space.size()) - 1;

    // Coarse scan over an evenly spaced subset of the space, keeping every
    // candidate so the descent can restart from the strongest few.
    const int coarse_n = std::min<int>(opts.coarse_per_axis, last + 1);
    if (coarse_n < 2) throw std::invalid_argument("coarse_per_axis must be >= 2");
    std::vector<int> coarse_index;  // positions of coarse values in `space`
    for (int i = 0; i < coarse_n; ++i) {
        const int idx = static_cast<int>(std::lround(i * double(last) / (coarse_n - 1)));
        if (coarse_index.empty() || coarse_index.back() != idx) coarse_index.push_back(idx);
    }

    struct Candidate {
        double residual;
        int r, g, b;  // index-space position
    };
    std::vector<Candidate> coarse;
    coarse.reserve(coarse_index.size() * coarse_index.size() * coarse_index.size());
    for (int r : coarse_index)
        for (int g : coarse_index)
            for (int b : coarse_index)
                coarse.push_back(
                    {objective(DisplayColor{space[r], space[g], space[b], false}), r, g, b});
    std::sort(coarse.begin(), coarse.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        return std::tie(a.r, a.g, a.b) < std::tie(b.r, b.g, b.b);
    });

    DisplayColor best_cmd{space[coarse[0].r], space[coarse[0].g], space[coarse[0].b], false};
    double best_res = coarse[0].residual;

    CorrectionResult result;
    result.iterations = 0;
    const int starts =
        std::min<std::size_t>(std::max(opts.descent_starts, 1), coarse.size());
    for (int s = 0; s < starts; ++s) {
        const Candidate& c = coarse[s];
        const Descent d = descend(objective, space, c.r, c.g, c.b, c.residual);
        result.iterations += d.iterations;
        if (candidate_better(d.command, d.residual, best_cmd, best_res)) {
            best_cmd = d.command;
            best_res = d.residual;
        }
    }

    // Also descend from the analytic inversion of the target, snapped onto
    // the search space.
    auto nearest_index = [&](int value) {
        const auto it = std::lower_bound(space.begin(), space.end(), value);
        if (it == space.end()) return last;
        int idx = static_cast<int>(it - space.begin());
        if (idx > 0 && value - space[idx - 1] <= space[idx] - value) --idx;
        return idx;
    };
    for (const auto& seed : analytic_seeds(target, bg, m, wp)) {
        const int r = nearest_index(seed[0]);
        const int g = nearest_index(seed[1]);
        const int b = nearest_index(seed[2]);
        const DisplayColor cand{space[r], space[g], space[b], false};
        const Descent d = descend(objective, space, r, g, b, objective(cand));
        result.iterations += d.iterations;
        if (candidate_better(d.command, d.residual, best_cmd, best_res)) {
            best_cmd = d.command;
            best_res = d.residual;
        }
    }

    // The off command is always in the search set.
    const DisplayColor off = DisplayColor::off_command();
    const double off_res = objective(off);
    if (candidate_better(off, off_res, best_cmd, best_res)) {
        best_cmd = off;
        best_res = off_res;
    }

    result.best_command = best_cmd;
    result.achieved = objective.perceived(best_cmd);
    result.residual = best_res;
    result.exact = best_res <= tolerance;
    return result;
}

std::vector<PaletteEntry> rank_distinguishable_colors(const BackgroundLight& bg,
                                                      const DisplayModel& m,
                                                      const WhitePoint& wp,
                                                      double min_separation) {
    if (!(min_separation >= 0.0))
        throw std::invalid_argument("min_separation must be nonnegative");
    std::vector<PaletteEntry> kept;
    std::vector<LuvColor> kept_luv;
    for (const auto& entry : palette()) {
        const LuvColor luv = XYZ_to_Luv(blend(display_to_XYZ(entry.color, m), bg), wp);
        bool ok = true;
        for (const LuvColor& other : kept_luv) {
            if (!(delta_E(luv, other) > min_separation)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            kept.push_back(entry);
            kept_luv.push_back(luv);
        }
    }
    return kept;
}

}  // namespace ostc
