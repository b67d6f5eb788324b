/// @file commands.hpp
/// @brief Subcommands of the onsager tool. Each returns the process exit code.

#pragma once

#include "onsager/config.hpp"

#include <filesystem>
#include <string>

namespace onsager::cli {

/// 0 positive verdict, 2 negative verdict, 3 precondition or hypothesis failure, 1 internal.
enum Exit : int { ok = 0, internal = 1, negative = 2, rejected = 3 };

int cmd_gen(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_diagnose(const RunConfig& cfg, const std::filesystem::path& input, const std::filesystem::path& out);
int cmd_boundary(const RunConfig& cfg, const std::filesystem::path& input, const std::filesystem::path& out);
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_report(const RunConfig& cfg, const std::filesystem::path& input, const std::filesystem::path& out);

/// Output location: an absolute --out wins; otherwise it is placed under
/// ONSAGER_OUT_DIR, then the config's output_dir, then the working directory.
std::filesystem::path resolve_output(const std::string& flag, const RunConfig& cfg, const std::string& fallback);

} // namespace onsager::cli
