#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qmelab/sample.hpp"

namespace qmelab {

// Loads a sample from CSV (one point per row, columns are dimensions, header
// row optional) or JSON (array of numbers, or array of equal-length arrays).
// Dispatch is by extension, .json vs anything else as CSV. Parse failures
// throw ValidationError naming the file and offending line.
Sample load_sample(const std::filesystem::path& path);

Sample parse_csv_sample(std::istream& in, const std::string& name);
Sample parse_json_sample(const nlohmann::json& j, const std::string& name);

// Shortest-of-17-significant-digits is not what the output contract asks
// for: every real is emitted with exactly 17 significant digits (printf
// "%.17g"), which round-trips any double.
std::string format_real(double v);

// Serializes a JSON tree with format_real applied to every floating-point
// number. Layout is deterministic (keys sorted by nlohmann's object order,
// two-space indent).
std::string dump_json(const nlohmann::json& j, int indent = 2);

// FNV-1a 64-bit, used for config provenance hashes.
std::uint64_t fnv1a64(std::string_view text);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace qmelab
