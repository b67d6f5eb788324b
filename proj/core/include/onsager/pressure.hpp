/// @file pressure.hpp
/// @brief Pressure recovery from -Lap p = d_i d_j (u_i u_j) and pressure norms.

#pragma once

#include "onsager/fft.hpp"
#include "onsager/grid.hpp"
#include "onsager/regions.hpp"

#include <optional>
#include <string>

namespace onsager {

struct PressureSolveReport {
    ScalarField pressure;
    double residual = 0.0;  ///< max |-Lap p - d_i d_j(u_i u_j)| on the interior
    bool mean_zero = true;
    std::string boundary_condition;
    double compatibility_defect = 0.0;  ///< weighted mean removed from the zero tangential mode (channel)
};

/// Source s = d_i d_j (u_i u_j) using the shared derivative operator.
ScalarField pressure_source(const Grid& grid, const VectorField& u);

/// Spectral solve on a fully periodic grid: p_hat = -k_i k_j (u_i u_j)_hat / |k|^2, p_hat(0) = 0.
PressureSolveReport solve_pressure_periodic(const Snapshot& snap);

/// Channel solve: spectral along periodic axes, second-order tridiagonal along the wall
/// axis with dp/dn = -(u . grad u) . n on both walls. Rejects u . n != 0 on the walls.
PressureSolveReport solve_pressure_channel(const Snapshot& snap, double impermeability_tol = 1e-10);

/// Dispatches on the grid's axis kinds.
PressureSolveReport solve_pressure(const Snapshot& snap);

/// Inner solver of the channel problem for one tangential mode: -p'' + k2 p = rhs on
/// nodes 0..N-1, p'(0) = g0, p'(L) = g1. For k2 = 0 the data are projected onto the
/// compatible subspace and p is returned with zero interior mean.
std::vector<Complex> solve_neumann_line(std::vector<Complex> rhs, double k2, double h, Complex g0, Complex g1,
                                        double* defect = nullptr);

struct SobolevNormEstimate {
    double beta = 0.0;
    double value = 0.0;
    std::string region;
    std::string convention;
};

/// (sum (1+|k|^2)^-beta |f_hat|^2)^(1/2) of field * cutoff restricted to the region,
/// extended periodically along periodic axes and oddly across the wall axis,
/// normalized so beta = 0 gives the trapezoid L2 norm.
SobolevNormEstimate negative_sobolev_norm(const Grid& grid, const ScalarField& field, double beta,
                                          const Region& region, const ScalarField* cutoff = nullptr);

struct InteriorHolderReport {
    double pressure_holder = 0.0;         ///< holder_norm(p, alpha, Q2)
    double velocity_holder_squared = 0.0; ///< holder_norm(u, alpha, Q-tilde)^2
    double pressure_negative_norm = 0.0;  ///< H^-beta norm of p near the boundary layer region
    double beta = 1.0;
    double ratio = 0.0;
    bool degenerate = false;  ///< 0/0
    std::string note;
    std::optional<double> pressure_exponent;
    std::optional<double> velocity_exponent;
};

/// Compares the interior pressure seminorm with the velocity seminorm squared plus the
/// near-boundary negative norm. `near` defaults to Q-tilde minus Q1.
InteriorHolderReport interior_holder_check(const Snapshot& snap, const RegionChain& chain, double alpha,
                                           double beta = 1.0, const Region* near = nullptr,
                                           bool estimate_exponents = false);

} // namespace onsager
