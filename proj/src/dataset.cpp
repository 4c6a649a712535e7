#include "ostc/dataset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "ostc/text.hpp"

namespace ostc {

const Palette& palette() {
    static const Palette table = [] {
        // Channel triples in the published table order.
        struct Row { const char* name; int r, g, b; };
        const Row rows[] = {
            {"black", 0, 0, 0},        {"maroon", 128, 0, 0},
            {"olive", 128, 128, 0},    {"green", 0, 128, 0},
            {"teal", 0, 128, 128},     {"navy", 0, 0, 128},
            {"purple", 128, 0, 128},   {"gray", 128, 128, 128},
            {"red", 255, 0, 0},        {"orange", 255, 128, 0},
            {"yellow", 255, 255, 0},   {"chartreuse", 128, 255, 0},
            {"lime", 0, 255, 0},       {"spring", 0, 255, 128},
            {"cyan", 0, 255, 255},     {"azure", 0, 128, 255},
            {"blue", 0, 0, 255},       {"violet", 128, 0, 255},
            {"magenta", 255, 0, 255},  {"rose", 255, 0, 128},
            {"salmon", 255, 128, 128}, {"maize", 255, 255, 128},
            {"mint", 128, 255, 128},   {"aqua", 128, 255, 255},
            {"periwinkle", 128, 128, 255}, {"pink", 255, 128, 255},
            {"white", 255, 255, 255},
        };
        Palette p;
        for (const auto& r : rows) {
            DisplayColor c{r.r, r.g, r.b, false};
            if (r.r == 0 && r.g == 0 && r.b == 0) c = DisplayColor::off_command();
            p.push_back(PaletteEntry{r.name, c});
        }
        return p;
    }();
    return table;
}

const PaletteEntry* palette_find(std::string_view name) {
    for (const auto& e : palette())
        if (e.name == name) return &e;
    return nullptr;
}

int palette_index(std::string_view name) {
    const auto& p = palette();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].name == name) return static_cast<int>(i);
    return -1;
}

BackgroundKind background_kind(std::string_view name) {
    if (name == kNoLights) return BackgroundKind::no_lights;
    if (name == kWhitePoster) return BackgroundKind::white_poster;
    if (name.ends_with("-poster")) return BackgroundKind::poster;
    return BackgroundKind::real;
}

std::string background_base(std::string_view name) {
    if (name.ends_with("-poster")) name.remove_suffix(7);
    else if (name.ends_with("-real")) name.remove_suffix(5);
    return std::string(name);
}

const std::vector<std::string>& canonical_backgrounds() {
    static const std::vector<std::string> order = {
        "no-lights",      "white-poster",
        "sand-real",      "sidewalk-poster",
        "brick-poster",   "brick-real",
        "brown-foliage-real",
        "green-foliage-poster", "green-foliage-real",
        "pavement-poster", "pavement-real",
    };
    return order;
}

int background_rank(std::string_view name) {
    const auto& order = canonical_backgrounds();
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] == name) return static_cast<int>(i);
    return static_cast<int>(order.size());
}

void validate_record(const MeasurementRecord& r) {
    if (!palette_find(r.color_name))
        throw std::domain_error("unknown palette color: '" + r.color_name + "'");
    if (r.condition == LightingCondition::display_only && r.background != kNoLights)
        throw std::domain_error(
            "display_only readings must use the no-lights background, got '" +
            r.background + "'");
    if (r.condition == LightingCondition::background_only && r.color_name != "black")
        throw std::domain_error(
            "background_only readings must use the black (display off) color, got '" +
            r.color_name + "'");
    validate_chromaticity(r.reading);
}

const CellSummary* Dataset::find(std::string_view background, std::string_view color,
                                 LightingCondition condition) const {
    auto it = cells_.find(CellKey{std::string(background), std::string(color), condition});
    return it == cells_.end() ? nullptr : &it->second;
}

const CellSummary& Dataset::at(std::string_view background, std::string_view color,
                               LightingCondition condition) const {
    const CellSummary* c = find(background, color, condition);
    if (!c) {
        throw MissingCellError("missing cell: background=" + std::string(background) +
                               " color=" + std::string(color) +
                               " condition=" + std::string(to_string(condition)));
    }
    return *c;
}

std::size_t Dataset::count(LightingCondition condition) const {
    std::size_t n = 0;
    for (const auto& [key, cell] : cells_)
        if (key.condition == condition) ++n;
    return n;
}

std::vector<std::string> Dataset::backgrounds() const {
    std::vector<std::string> out;
    for (const auto& [key, cell] : cells_)
        if (std::find(out.begin(), out.end(), key.background) == out.end())
            out.push_back(key.background);
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        const int ra = background_rank(a), rb = background_rank(b);
        return ra != rb ? ra < rb : a < b;
    });
    return out;
}

static const char* kReadingsHeader = "timestamp,background,color_name,condition,x,y,Y";

std::vector<MeasurementRecord> parse_readings(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("line 1: empty readings stream (expected header)");
    if (trim(line) != kReadingsHeader)
        throw ParseError("line 1: bad header, expected '" + std::string(kReadingsHeader) + "'");

    std::vector<MeasurementRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty()) continue;
        auto fields = split(t, ',');
        if (fields.size() != 7)
            throw ParseError("line " + std::to_string(lineno) + ": expected 7 fields, got " +
                             std::to_string(fields.size()));
        MeasurementRecord r;
        try {
            r.timestamp = parse_double(fields[0], "timestamp");
            r.background = std::string(trim(fields[1]));
            r.color_name = std::string(trim(fields[2]));
            r.condition = parse_condition(trim(fields[3]));
            r.reading.x = parse_double(fields[4], "x");
            r.reading.y = parse_double(fields[5], "y");
            r.reading.Y = parse_double(fields[6], "Y");
        } catch (const std::invalid_argument& ex) {
            throw ParseError("line " + std::to_string(lineno) + ": " + ex.what());
        }
        try {
            validate_record(r);
        } catch (const std::domain_error& ex) {
            throw std::domain_error("line " + std::to_string(lineno) + ": " + ex.what());
        }
        out.push_back(std::move(r));
    }
    return out;
}

static double median_of(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

WhitePointSet extract_white_points(const std::map<CellKey, CellSummary>& cells) {
    auto lookup = [&](std::string_view bg, std::string_view color,
                      LightingCondition cond) -> const CellSummary& {
        auto it = cells.find(CellKey{std::string(bg), std::string(color), cond});
        if (it == cells.end()) {
            throw MissingCellError("missing white-point cell: background=" + std::string(bg) +
                                   " color=" + std::string(color) +
                                   " condition=" + std::string(to_string(cond)));
        }
        return it->second;
    };
    const CellSummary& wp1 = lookup(kNoLights, "white", LightingCondition::display_only);
    const CellSummary& wp2 = lookup(kWhitePoster, "black", LightingCondition::background_only);
    const CellSummary& wp3 = lookup(kWhitePoster, "white", LightingCondition::both);
    return WhitePointSet{
        make_white_point(xyY_to_XYZ(wp1.median_xyY), LightingCondition::display_only),
        make_white_point(xyY_to_XYZ(wp2.median_xyY), LightingCondition::background_only),
        make_white_point(xyY_to_XYZ(wp3.median_xyY), LightingCondition::both),
    };
}

const WhitePoint& white_point_for(LightingCondition condition, const WhitePointSet& wps) {
    switch (condition) {
        case LightingCondition::display_only: return wps.display_only;
        case LightingCondition::background_only: return wps.background_only;
        case LightingCondition::both: return wps.both;
    }
    return wps.both;
}

Dataset aggregate_cells(const std::vector<MeasurementRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no records");

    struct Acc {
        std::vector<double> x, y, Y;
    };
    std::map<CellKey, Acc> groups;
    std::map<std::string, std::size_t> per_background;
    for (const auto& r : records) {
        Acc& a = groups[CellKey{r.background, r.color_name, r.condition}];
        a.x.push_back(r.reading.x);
        a.y.push_back(r.reading.y);
        a.Y.push_back(r.reading.Y);
        ++per_background[r.background];
    }

    std::map<CellKey, CellSummary> cells;
    for (auto& [key, acc] : groups) {
        CellSummary cell;
        cell.key = key;
        cell.n_readings = acc.x.size();
        cell.median_xyY = ChromaticityXY{median_of(acc.x), median_of(acc.y), median_of(acc.Y)};
        cells.emplace(key, std::move(cell));
    }

    std::vector<std::string> warnings;
    for (const auto& [bg, n] : per_background) {
        if (n < kMinReadingsPerBackground || n > kMaxReadingsPerBackground) {
            warnings.push_back("background '" + bg + "' has " + std::to_string(n) +
                               " readings, outside the plausible range [" +
                               std::to_string(kMinReadingsPerBackground) + ", " +
                               std::to_string(kMaxReadingsPerBackground) + "]");
        }
    }
    // Soft sanity window on chromaticity; measurement noise may exceed it.
    for (const auto& [key, cell] : cells) {
        if (!uv_within_window(XYZ_to_uv(xyY_to_XYZ(cell.median_xyY)))) {
            warnings.push_back("cell (" + key.background + ", " + key.color + ", " +
                               std::string(to_string(key.condition)) +
                               ") has u'v' outside the [0, 0.7] window");
        }
    }

    WhitePointSet wps = extract_white_points(cells);
    return Dataset(std::move(cells), wps, std::move(warnings));
}

void write_cells_csv(const Dataset& ds, std::ostream& out) {
    out << "background,color_name,condition,x,y,Y,n_readings\n";
    for (const auto& [key, cell] : ds.cells()) {
        out << key.background << ',' << key.color << ',' << to_string(key.condition) << ','
            << format_double(cell.median_xyY.x) << ',' << format_double(cell.median_xyY.y)
            << ',' << format_double(cell.median_xyY.Y) << ',' << cell.n_readings << "\n";
    }
}

void write_readings_csv(const std::vector<MeasurementRecord>& records, std::ostream& out) {
    out << kReadingsHeader << "\n";
    for (const auto& r : records) {
        out << format_double(r.timestamp) << ',' << r.background << ',' << r.color_name << ','
            << to_string(r.condition) << ',' << format_double(r.reading.x) << ','
            << format_double(r.reading.y) << ',' << format_double(r.reading.Y) << "\n";
    }
}

}  // namespace ostc
