/// @file boundary_flux.hpp
/// @brief Boundary cutoffs, shell fluxes, the global energy balance and its verdict.

#pragma once

#include "onsager/grid.hpp"

#include <string>
#include <vector>

namespace onsager {

struct ShellSpec {
    double eta = 0.0;
    double eta0 = 0.0;
    double lower = 0.0;  ///< eta / 4 (open)
    double upper = 0.0;  ///< eta / 2 (open)
    std::size_t planes = 0;  ///< wall-parallel node planes inside the shell, per wall
};

/// Requires a channel, 0 < eta < eta0 < half width, and >= 3 planes in the shell.
ShellSpec make_shell_spec(const Domain& domain, double eta, double eta0);

struct BoundaryCutoff {
    ScalarField psi;
    VectorField grad;  ///< analytic: -(1/eta) smooth_step'(d/eta) n
};

/// psi = smooth_step(d / eta); psi = 1 on a periodic box.
BoundaryCutoff boundary_cutoff(const Domain& domain, double eta);

/// (1/eta) int int_{eta/4 < d < eta/2} |(|u|^2/2 + p) u.n| dx dt.
double shell_flux(const Trajectory& traj, double eta, const Domain& domain);

/// Ladder policy: all zero, or monotone decreasing within 10% with last <= first / 4.
bool shell_trend_ok(const std::vector<double>& fluxes);

struct GlobalBalanceReport {
    double e1 = 0.0;
    double e2 = 0.0;
    double boundary_term = 0.0;
    double residual = 0.0;  ///< (e2 - e1) + boundary_term
    double budget = 0.0;
};

/// t1, t2 must be snapshot times of the trajectory.
GlobalBalanceReport global_balance(const Trajectory& traj, double eta, double t1, double t2, const Domain& domain);

struct VerdictOptions {
    double eta0 = 0.0;              ///< <= 0 selects 0.9 * half width
    double energy_tolerance = 1e-8; ///< relative drift counted as conservation
    double beta = 1.0;              ///< negative Sobolev exponent of the pressure check
};

struct ConservationVerdict {
    std::vector<double> etas;
    std::vector<double> shell_fluxes;
    std::vector<double> pressure_norms;
    bool shell_trend_ok = false;
    double interior_exponent = 0.0;
    bool interior_ok = false;
    bool pressure_bounded = false;
    double energy_drift = 0.0;  ///< |E(t2) - E(t1)| / E(t1) (absolute if E(t1) = 0)
    bool energy_conserved = false;
    std::vector<std::string> failed;  ///< names of failed hypotheses
    std::string verdict;
    int exit_code = 1;  ///< 0 positive, 2 energy not conserved, 3 hypotheses fail
};

/// Ladder of >= 3 decreasing admissible shells.
ConservationVerdict conservation_verdict(const Trajectory& traj, const std::vector<double>& etas,
                                         const Domain& domain, const VerdictOptions& opts = {});

struct ModulusReport {
    double gamma = 0.0;
    double bound_M = 0.0;
    std::vector<double> distances;  ///< distance classes inside V_gamma, ascending
    std::vector<double> envelope;   ///< max |u.n| per class
    double intercept = 0.0;
    double slope = 0.0;
    bool vanishes = false;
    double tolerance = 0.0;
};

/// Envelope of |u.n| against wall distance on V_gamma = {d < gamma}; the modulus
/// vanishes when the line through the three nearest classes has |intercept| <= tol.
ModulusReport modulus_check(const Trajectory& traj, double gamma, const Domain& domain, double tolerance = 1e-8);

} // namespace onsager
