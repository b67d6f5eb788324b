/// @file report.cpp
/// @brief Deterministic CSV / JSON writers.

#include "onsager/report.hpp"
#include "onsager/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace onsager {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<Cell> row) {
    require(row.size() == header.size(), "CsvTable: row width differs from header");
    rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::ostringstream out;
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out << ',';
            if (const auto* d = std::get_if<double>(&row[k])) out << format_number(*d);
            else if (const auto* i = std::get_if<long long>(&row[k])) out << *i;
            else out << std::get<std::string>(row[k]);
        }
        out << '\n';
    }
    return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    out << str();
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        fail(ErrorKind::io, "malformed JSON in " + path.string() + ": " + e.what());
    }
}

Json make_manifest(const std::string& command, const Json& config, const std::vector<std::uint64_t>& seeds) {
    Json m;
    m["tool"] = "onsager";
    m["version"] = kToolVersion;
    m["command"] = command;
    m["config_hash"] = hex64(fnv1a64(config.dump()));
    m["seeds"] = seeds;
    m["threads"] = 1;
    return m;
}

} // namespace onsager
