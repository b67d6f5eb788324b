/// @file holder.hpp
/// @brief Hoelder seminorm and exponent estimation from sup-type increments.

#pragma once

#include "onsager/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace onsager {

struct HolderOptions {
    std::uint64_t seed = 20240611;
    /// Stratified random pairs drawn by holder_norm (on top of the exhaustive first shell).
    std::size_t sample_pairs = 100000;
    /// Upper separation; <= 0 selects a quarter of the shortest region extent.
    double r_max = 0.0;
};

struct HolderEstimate {
    double exponent = 0.0;
    double seminorm = 0.0;
    std::size_t pair_count = 0;
    double r_min = 0.0;
    double r_max = 0.0;
    double fit_residual = 0.0;  ///< RMS log residual of the slope fit
    double r2 = 0.0;
    std::vector<double> radii;
    std::vector<double> increments;  ///< S(r) per ladder rung
    std::string flag;                ///< empty, or e.g. "degenerate: zero increments"
    std::uint64_t seed = 0;
};

/// Discrete sup of |u(x)-u(y)| / |x-y|^alpha over pairs in the region with
/// 2h <= |x-y| <= r_max. `field` may hold one or several components.
double holder_norm(const Grid& grid, const VectorField& field, double alpha, const Region& region,
                   const HolderOptions& opts = {});

/// Slope of log S(r) against log r on the dyadic ladder r = 2h 2^k <= r_max,
/// clamped to [0, 1]; the seminorm is holder_norm at that exponent.
HolderEstimate estimate_holder_exponent(const Grid& grid, const VectorField& field, const Region& region,
                                        const HolderOptions& opts = {});

} // namespace onsager
