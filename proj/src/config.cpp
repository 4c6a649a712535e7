#include "ostc/config.hpp"

#include <fstream>
#include <istream>

#include "ostc/text.hpp"

namespace ostc {

KeyValueFile KeyValueFile::parse(std::istream& in) {
    KeyValueFile out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto fields = split_whitespace(t);
        Entry e;
        e.key = fields.front();
        e.values.assign(fields.begin() + 1, fields.end());
        e.line = lineno;
        out.entries.push_back(std::move(e));
    }
    return out;
}

KeyValueFile KeyValueFile::parse_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path.string());
    return parse(f);
}

const KeyValueFile::Entry* KeyValueFile::find(std::string_view key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

std::string KeyValueFile::get_string(std::string_view key) const {
    const Entry* e = find(key);
    if (!e || e->values.size() != 1)
        throw ConfigError("config key '" + std::string(key) +
                          "' missing or not a single value");
    return e->values.front();
}

double KeyValueFile::get_double(std::string_view key) const {
    try {
        return parse_double(get_string(key), key);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
}

long KeyValueFile::get_long(std::string_view key) const {
    try {
        return parse_long(get_string(key), key);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
}

double KeyValueFile::get_double_or(std::string_view key, double fallback) const {
    return find(key) ? get_double(key) : fallback;
}

long KeyValueFile::get_long_or(std::string_view key, long fallback) const {
    return find(key) ? get_long(key) : fallback;
}

}  // namespace ostc
