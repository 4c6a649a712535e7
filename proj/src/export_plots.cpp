#include <algorithm>
#include <fstream>

#include "ostc/analysis.hpp"
#include "ostc/svg.hpp"
#include "ostc/text.hpp"

namespace ostc {

namespace {

constexpr double kPanelW = 320.0;
constexpr double kPanelH = 360.0;
constexpr double kTitleH = 20.0;
constexpr double kBarH = 36.0;
constexpr double kMargin = 26.0;
constexpr double kUvMax = 0.65;  // plotted u'v' range [0, 0.65] covers the gamut

struct PlotArea {
    double x0, y0, w, h;
    double px(double u) const { return x0 + u / kUvMax * w; }
    double py(double v) const { return y0 + h - v / kUvMax * h; }
};

std::string panel_filename(const PairAnalysis& p) {
    return p.background_a + "__" + p.background_b + ".svg";
}

std::string panel_svg(const PairAnalysis& p, double global_max) {
    SvgWriter svg(kPanelW, kPanelH);
    svg.rect(0, 0, kPanelW, kPanelH, "#ffffff", "#404040");
    svg.text(kPanelW / 2, 14, p.background_a + " \xE2\x86\x92 " + p.background_b, 11,
             "#000000", "middle");

    const PlotArea area{kMargin, kTitleH + 6,
                        kPanelW - kMargin - 10,
                        kPanelH - kTitleH - kBarH - kMargin - 6};
    svg.rect(area.x0, area.y0, area.w, area.h, "none", "#808080");
    for (double tick = 0.1; tick < kUvMax; tick += 0.1) {
        svg.line(area.px(tick), area.y0 + area.h, area.px(tick), area.y0 + area.h + 3,
                 "#808080");
        svg.line(area.x0 - 3, area.py(tick), area.x0, area.py(tick), "#808080");
    }
    svg.text(area.x0 + area.w / 2, area.y0 + area.h + 14, "u'", 9, "#404040", "middle");
    svg.text(area.x0 - 14, area.y0 + area.h / 2, "v'", 9, "#404040", "middle");

    for (const auto& s : p.shifts) {
        svg.line(area.px(s.from_uv.u), area.py(s.from_uv.v), area.px(s.to_uv.u),
                 area.py(s.to_uv.v), "#b0b0b0");
    }
    for (const auto& s : p.shifts) {
        svg.circle(area.px(s.from_uv.u), area.py(s.from_uv.v), 2.6, "#ffffff", "#202020");
        svg.circle(area.px(s.to_uv.u), area.py(s.to_uv.v), 2.6, "#707070", "#202020");
    }

    // Stacked bar: pink = luminance share, blue = chromaticity share, width
    // proportional to this pair's average against the global maximum.
    const double bar_y = kPanelH - kBarH + 4;
    const double track_w = kPanelW - 2 * kMargin;
    const double frac = global_max > 0.0 ? p.avg_total / global_max : 0.0;
    const double lum_w = global_max > 0.0 ? p.avg_lum / global_max * track_w : 0.0;
    svg.rect(kMargin, bar_y, track_w, 10, "none", "#c0c0c0");
    if (lum_w > 0.0) svg.rect(kMargin, bar_y, lum_w, 10, "#e87ea1");
    if (frac * track_w - lum_w > 0.0)
        svg.rect(kMargin + lum_w, bar_y, frac * track_w - lum_w, 10, "#6699cc");
    char label[128];
    std::snprintf(label, sizeof(label), "%s  avg %.1f (lum %.1f, chroma %.1f)",
                  std::string(to_string(p.category)).c_str(), p.avg_total, p.avg_lum,
                  p.avg_chroma);
    svg.text(kMargin, bar_y + 24, label, 9, "#404040");
    return svg.finish();
}

const char* category_color(PairCategory c) {
    switch (c) {
        case PairCategory::washout_chromaticity: return "#cc3333";
        case PairCategory::washout_luminance: return "#d9a21b";
        case PairCategory::washout_both: return "#7a5bc7";
        case PairCategory::linear_shift: return "#2f8f4e";
    }
    return "#000000";
}

void write_index(std::span<const PairAnalysis> pairs, const std::filesystem::path& dir) {
    std::ofstream out(dir / "index.html");
    if (!out) throw std::runtime_error("cannot write " + (dir / "index.html").string());
    out << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
           "<title>Pairwise background analysis</title>\n"
           "<style>body{font-family:sans-serif} .panel{display:inline-block;margin:4px;"
           "border:3px solid}</style></head>\n<body>\n<h1>Pairwise background analysis</h1>\n"
           "<p>Border colors: <span style=\"color:#cc3333\">washout-chromaticity</span>, "
           "<span style=\"color:#d9a21b\">washout-luminance</span>, "
           "<span style=\"color:#7a5bc7\">washout-both</span>, "
           "<span style=\"color:#2f8f4e\">linear-shift</span>.</p>\n";
    std::string row;
    for (const auto& p : pairs) {
        if (p.background_a != row) {
            if (!row.empty()) out << "</div>\n";
            row = p.background_a;
            out << "<h2>" << row << "</h2>\n<div>\n";
        }
        out << "<span class=\"panel\" style=\"border-color:" << category_color(p.category)
            << "\"><img src=\"panels/" << panel_filename(p) << "\" width=\"320\"></span>\n";
    }
    if (!row.empty()) out << "</div>\n";
    out << "</body></html>\n";
}

}  // namespace

void export_small_multiples(std::span<const PairAnalysis> pairs,
                            const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "panels");
    double global_max = 0.0;
    for (const auto& p : pairs) global_max = std::max(global_max, p.avg_total);

    for (const auto& p : pairs) {
        const auto path = dir / "panels" / panel_filename(p);
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << panel_svg(p, global_max);
    }
    write_index(pairs, dir);

    std::ofstream shifts(dir / "shifts.csv");
    if (!shifts) throw std::runtime_error("cannot write " + (dir / "shifts.csv").string());
    write_shifts_csv(pairs, shifts);
}

}  // namespace ostc
