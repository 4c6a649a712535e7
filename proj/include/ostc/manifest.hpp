#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ostc {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Reproducibility record emitted alongside every output set. Two runs with
// identical manifests produce bitwise-identical outputs. The timestamp is
// taken from SOURCE_DATE_EPOCH when set and is 0 otherwise, so that repeated
// runs stay byte-identical.
struct RunManifest {
    std::string command;  // subcommand that produced the outputs
    std::vector<std::pair<std::string, std::string>> input_digests;  // name -> hex
    std::optional<std::uint64_t> seed;
    std::int64_t timestamp = 0;

    void add_file_digest(const std::string& label, const std::filesystem::path& path);
    void write(std::ostream& out) const;
    void write(const std::filesystem::path& path) const;
};

std::int64_t manifest_timestamp();
std::string digest_file(const std::filesystem::path& path);
std::string digest_bytes(std::string_view bytes);

}  // namespace ostc
