/// @file config.hpp
/// @brief Run configuration for the command-line tool.
///
/// One JSON document with a global block and one section per command. Unknown
/// keys are rejected with their JSON pointer. Serializing a parsed config gives
/// the canonical form: every key present, fixed order, so a canonical file
/// round-trips byte for byte.

#pragma once

#include "onsager/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace onsager {

struct GenConfig {
    std::string kind = "taylor-green";
    std::string grid = "64x64";
    std::string extent;  ///< "Lx x Ly"; empty means 2 pi per periodic axis, 1 per wall axis
    double alpha = 0.4;
    int cutoff = 0;
    std::uint64_t seed = 0;
    double nu = 0.0;
    double t = 0.0;
    double amplitude = 1.0;
    double shear_u = 1.0;
    double shear_w = 0.5;
    int frames = 1;
    double dt = 0.1;
};

struct DiagnoseConfig {
    double alpha = -1.0;  ///< < 0: estimate from the field
    std::vector<double> eps_h;  ///< kernel radii in units of the largest spacing; empty: halvings down to 2h
    double phi_radius = 0.0;  ///< <= 0: a quarter of the smallest extent
    bool identity = false;
    double kappa = 0.0;
};

struct BoundaryConfig {
    std::vector<double> etas{0.4, 0.2, 0.1};
    double eta0 = 0.0;
    double gamma = 0.0;  ///< modulus band; <= 0 selects the largest eta
    double energy_tolerance = 1e-8;
    double beta = 1.0;
};

struct SweepConfig {
    std::string grid = "32x32";
    std::string extent;
    std::string initial = "taylor-green";
    double amplitude = 0.1;
    double mean_speed = 1.0;
    std::vector<double> nus{1e-2, 3e-3, 1e-3};
    double t_star = 1.0;
    double dt = 0.01;
    double cfl_limit = 0.5;
    std::vector<double> etas;  ///< channel only: shells for the viscous flux matrix
    int frames = 5;            ///< snapshots per run kept for the flux matrix
};

struct RunConfig {
    std::string output_dir;  ///< empty: ONSAGER_OUT_DIR or the working directory
    std::uint64_t seed = 0;
    int threads = 1;
    GenConfig gen;
    DiagnoseConfig diagnose;
    BoundaryConfig boundary;
    SweepConfig sweep;
};

/// Throws Error(precondition) naming the JSON pointer of the first unknown key
/// or mistyped value. Missing keys keep their defaults.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::filesystem::path& path);

Json to_json(const RunConfig& c);
/// Only the section a command consumes, plus the global block.
Json to_json(const RunConfig& c, const std::string& command);

/// "1,2.5,3" -> {1, 2.5, 3}.
std::vector<double> parse_list(const std::string& text);
/// "2x1" or "6.283x6.283x1".
std::vector<double> parse_extent(const std::string& text);

} // namespace onsager
