#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ostc {

// Raised for unusable configuration or command specs; the CLI maps it to
// exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key-value text file: one `key value...` entry per line, `#` comments,
// blank lines ignored. Keys may repeat (used for background lists).
struct KeyValueFile {
    struct Entry {
        std::string key;
        std::vector<std::string> values;
        int line = 0;
    };
    std::vector<Entry> entries;

    static KeyValueFile parse(std::istream& in);
    static KeyValueFile parse_file(const std::filesystem::path& path);

    const Entry* find(std::string_view key) const;
    // Single-value accessors; throw ConfigError when absent/malformed.
    std::string get_string(std::string_view key) const;
    double get_double(std::string_view key) const;
    long get_long(std::string_view key) const;
    // With defaults.
    double get_double_or(std::string_view key, double fallback) const;
    long get_long_or(std::string_view key, long fallback) const;
};

}  // namespace ostc
