#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace annogate {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
void append_line(const std::filesystem::path& path, std::string_view line);

// Splits on '\n'; a trailing newline does not produce an empty final element.
std::vector<std::string> split_lines(std::string_view text);

std::string trim(std::string_view s);
std::string lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// RFC 4180 CSV. Fields containing separator, quote, or newline get quoted.
std::string csv_join(const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> csv_parse(std::string_view text);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

std::uint64_t splitmix64(std::uint64_t x);
// Uniform draw in [0,1) from a single 64-bit key.
double unit_draw(std::uint64_t key);
// Deterministic stream key for one (seed, sample, dimension, pass) cell.
std::uint64_t cell_key(std::uint64_t seed, std::string_view sample_id,
                       std::string_view dimension_key, int pass_index);
// Bias-free bounded draw used by the deterministic shuffle.
std::uint64_t bounded(std::uint64_t random, std::uint64_t n);

// UTC ISO-8601 seconds. Honors ANNOGATE_FIXED_CLOCK=<unix-seconds> so runs
// can be made byte-for-byte reproducible.
std::string now_iso8601();

}  // namespace annogate
