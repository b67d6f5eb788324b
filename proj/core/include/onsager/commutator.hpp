/// @file commutator.hpp
/// @brief Commutator stress (u u)^eps - u^eps u^eps, its flux, and slope probes.

#pragma once

#include "onsager/fit.hpp"
#include "onsager/grid.hpp"
#include "onsager/mollify.hpp"

#include <vector>

namespace onsager {

struct CommutatorStress {
    int n = 0;
    double epsilon = 0.0;
    Region region;
    /// Row-major n x n components; entry (i, j) and (j, i) hold identical data.
    std::vector<ScalarField> tensor;

    const ScalarField& at(int i, int j) const { return tensor[static_cast<std::size_t>(i * n + j)]; }
    /// Frobenius norm per node.
    ScalarField frobenius() const;
};

/// Mollify each product u_i u_j and subtract the tensor of mollified components.
CommutatorStress commutator_stress(const Grid& grid, const VectorField& u, const Mollifier& m, const Region& region,
                                   MollifyPath path = MollifyPath::automatic);

/// sum_o m_o (du_o)(du_o) - (u - u^eps)(u - u^eps), du_o(x) = u(x+o) - u(x).
CommutatorStress commutator_via_increments(const Grid& grid, const VectorField& u, const Mollifier& m,
                                           const Region& region);

/// Pointwise contraction R : grad(phi u^eps), i.e. sum_ij R_ij d_i(phi u^eps_j),
/// with derivatives taken on `region` only.
ScalarField flux_density(const Grid& grid, const CommutatorStress& R, const VectorField& u_eps,
                         const ScalarField& phi, const Region& region);

/// int R : grad(phi u^eps) dx for one field.
double spatial_flux(const Grid& grid, const VectorField& u, const Mollifier& m, const ScalarField& phi,
                    const Region& region);

/// Time quadrature of spatial_flux weighted by chi (one weight per snapshot).
double flux_term(const Trajectory& traj, double epsilon, const std::vector<double>& chi, const ScalarField& phi,
                 const Region& region);

/// Signed flux_term and the same quadrature of |R : grad(phi u^eps)|.
struct FluxTerms {
    double value = 0.0;
    double absolute = 0.0;
};
FluxTerms flux_terms(const Trajectory& traj, double epsilon, const std::vector<double>& chi, const ScalarField& phi,
                     const Region& region);

/// A signed flux below this fraction of its absolute counterpart is cancellation noise.
inline constexpr double kCancellationFloor = 1e-12;

/// Sum over snapshots of dt * chi_k * values_k with trapezoid end weights.
double time_quadrature(const std::vector<double>& values, const std::vector<double>& chi, double dt);

struct ScalingProbe {
    SlopeFit flux;      ///< |int chi int R : grad(phi u^eps)|, predicted 3 alpha - 1
    SlopeFit sup_R;     ///< sup over supp(phi) of |R|, predicted 2 alpha
    SlopeFit sup_grad;  ///< sup over supp(phi) of |grad(phi u^eps)|, predicted alpha - 1
    SlopeFit flux_abs;  ///< int chi int |R : grad(phi u^eps)|, predicted 3 alpha - 1
    double alpha = 0.0;
    double holder_seminorm = 0.0;
    bool passed() const { return flux.passed && sup_R.passed && sup_grad.passed; }
};

/// Three log-log fits over a decreasing ladder of kernel radii (>= 4 rungs, each >= 2h).
ScalingProbe scaling_probe(const Trajectory& traj, double alpha, const std::vector<double>& epsilons,
                           const std::vector<double>& chi, const ScalarField& phi, const Region& region);

} // namespace onsager
