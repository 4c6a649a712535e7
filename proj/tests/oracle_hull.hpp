#pragma once

// Independent convex-hull oracle: Jarvis gift wrapping plus a direct
// shoelace sum, kept deliberately separate from the monotone-chain
// implementation it cross-checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace ostc::test {

using Pt = std::array<double, 2>;

inline double oracle_hull_area(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return 0.0;

    auto turn = [](const Pt& o, const Pt& a, const Pt& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };

    std::size_t start = 0;  // leftmost-lowest point is on the hull
    for (std::size_t i = 1; i < n; ++i)
        if (pts[i] < pts[start]) start = i;

    std::vector<Pt> hull;
    std::size_t cur = start;
    do {
        hull.push_back(pts[cur]);
        std::size_t next = (cur + 1) % n;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = turn(pts[cur], pts[next], pts[i]);
            if (t < 0.0) next = i;  // i is clockwise of next: wrap tighter
            else if (t == 0.0 && i != cur) {
                // collinear: keep the farthest
                const double dn = std::hypot(pts[next][0] - pts[cur][0],
                                             pts[next][1] - pts[cur][1]);
                const double di = std::hypot(pts[i][0] - pts[cur][0],
                                             pts[i][1] - pts[cur][1]);
                if (di > dn) next = i;
            }
        }
        cur = next;
        if (hull.size() > n) break;  // degenerate input
    } while (cur != start);

    if (hull.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Pt& p = hull[i];
        const Pt& q = hull[(i + 1) % hull.size()];
        twice += p[0] * q[1] - q[0] * p[1];
    }
    return std::abs(twice) / 2.0;
}

}  // namespace ostc::test
