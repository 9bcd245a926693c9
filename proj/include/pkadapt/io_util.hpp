#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pkadapt {

// Shortest decimal encoding that round-trips the exact double value.
// All numeric text output in the project goes through this so golden
// files are stable.
std::string format_double(double value);

// Strict full-string parse; returns nullopt on trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
// Write to <path>.tmp then rename, so readers never see partial content.
void write_file_atomic(const std::string& path, std::string_view content);

// One CSV record; quotes fields containing separator, quote or newline.
std::string csv_join(const std::vector<std::string>& fields);

// Split a single CSV record (quoted fields allowed, no embedded newlines).
std::vector<std::string> csv_split_line(std::string_view line);

// SHA-256 hex digest (via OpenSSL).
std::string sha256_hex(std::string_view data);

// FNV-1a 64-bit with an explicit offset basis; the fixed hash used by the
// deterministic text embedder (documented in docs/cache.md).
std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 14695981039346656037ull);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

void warn(const std::string& message);

}  // namespace pkadapt
