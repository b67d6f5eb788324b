/// @file report.hpp
/// @brief CSV tables, JSON summaries and the reproducibility manifest.

#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace onsager {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Shortest round-trip decimal (std::to_chars); non-finite values as nan/inf.
std::string format_number(double v);

using Cell = std::variant<double, long long, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::string str() const;
    void write(const std::filesystem::path& path) const;
};

/// Serializes with 2-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

/// tool version, command, FNV-1a hash of the canonical config dump, seeds.
Json make_manifest(const std::string& command, const Json& config, const std::vector<std::uint64_t>& seeds);

} // namespace onsager
