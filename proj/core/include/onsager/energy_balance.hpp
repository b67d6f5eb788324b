/// @file energy_balance.hpp
/// @brief Local weak energy identity and the defect of the mollified energy balance.

#pragma once

#include "onsager/fit.hpp"
#include "onsager/grid.hpp"

#include <string>
#include <vector>

namespace onsager {

/// psi(t, x) = chi(t) phi(x). chi is a raised-cosine window in closed form.
struct TestFunction {
    double t_a = 0.0;
    double t_b = 0.0;
    std::vector<double> chi;      ///< chi at the snapshot times
    std::vector<double> chi_dot;  ///< analytic d chi / dt at the snapshot times
    ScalarField phi;
};

/// Raised-cosine chi on [t_a, t_b] sampled at the trajectory's times.
TestFunction make_test_function(const Trajectory& traj, double t_a, double t_b, const ScalarField& phi);

/// Window covering the whole trajectory: chi vanishes at both end snapshots.
TestFunction make_test_function(const Trajectory& traj, const ScalarField& phi);

struct EnergyBalanceReport {
    double lhs = 0.0;       ///< int int e d_t(chi phi) + (e + p) u . grad(chi phi)
    double rhs = 0.0;       ///< - int chi int R : grad(phi u^eps)
    double flux = 0.0;      ///< int chi int R : grad(phi u^eps)
    double residual = 0.0;  ///< lhs - rhs
    double epsilon = 0.0;
    double kappa = 0.0;
    double budget = 0.0;    ///< discretization budget (refinement based), NaN if unavailable
    std::string budget_note;
};

/// Weak identity with (eps, kappa) smoothing. kappa = 0 disables time smoothing.
/// `region` is where mollified data are formed and differentiated; phi must vanish
/// outside it with room for the derivative stencil.
EnergyBalanceReport weak_energy_identity(const Trajectory& traj, const TestFunction& test, double epsilon,
                                         double kappa, const Region& region, bool with_budget = false);

/// D_eps = -[d_t(|u^eps|^2/2) + div((|u^eps|^2/2 + p^eps) u^eps)] per snapshot,
/// zero outside `region`. Time derivative by second-order differences.
std::vector<ScalarField> dr_dissipation_field(const Trajectory& traj, double epsilon, const Region& region);

/// sum_k dt_k chi_k int phi D_k (trapezoid in time).
double integrate_defect(const Trajectory& traj, const std::vector<ScalarField>& defect, const TestFunction& test,
                        const Region& region);

struct ConvergenceSweep {
    SlopeFit fit;
    double alpha = 0.0;
    bool monotone = false;
    std::string verdict;  ///< "consistent with conservation", "inconclusive/non-vanishing ..." etc.
    bool positive = false;
};

/// |commutator flux|(eps) over a decreasing ladder, fitted against 3 alpha - 1.
ConvergenceSweep dr_convergence_sweep(const Trajectory& traj, const std::vector<double>& epsilons,
                                      const TestFunction& test, const Region& region, double alpha);

} // namespace onsager
