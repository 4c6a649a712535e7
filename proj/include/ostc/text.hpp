#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ostc {

// Shortest decimal form that parses back to the exact same double.
std::string format_double(double v);

// Strict full-string parse; throws std::invalid_argument with `what_name`
// in the message on failure.
double parse_double(std::string_view s, std::string_view what_name = "number");
long parse_long(std::string_view s, std::string_view what_name = "integer");

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);

// 64-bit FNV-1a, used for file digests in run manifests.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::string to_hex(std::uint64_t v);

// splitmix64 step; mixes a counter into an independent stream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ostc
