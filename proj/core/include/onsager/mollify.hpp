/// @file mollify.hpp
/// @brief Sampled radial mollifiers and space / space-time smoothing.

#pragma once

#include "onsager/grid.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace onsager {

struct StencilEntry {
    std::array<int, kMaxRank> offset{0, 0, 0};
    double radius = 0.0;  ///< physical |offset|
    double mass = 0.0;    ///< weight * cell volume; masses sum to 1
};

class Mollifier {
public:
    double epsilon() const { return epsilon_; }
    int dimension() const { return grid_.rank(); }
    const Grid& grid() const { return grid_; }
    /// Every node offset with |offset| <= epsilon; rim entries carry zero mass.
    const std::vector<StencilEntry>& stencil() const { return stencil_; }
    std::size_t nonzero_count() const;
    /// weight = mass / cell volume, so sum(weight) * h^n = 1.
    double weight(std::size_t i) const { return stencil_[i].mass / grid_.cell_volume(); }
    double mass_sum() const;
    /// Largest offset magnitude per axis, in nodes.
    std::array<int, kMaxRank> reach() const { return reach_; }
    /// Discrete transform sum_o m_o exp(-i k.o h) on a fully periodic grid.
    const ScalarField& spectrum() const;

private:
    friend Mollifier make_mollifier(double epsilon, const Grid& grid);
    double epsilon_ = 0.0;
    Grid grid_;
    std::vector<StencilEntry> stencil_;
    std::array<int, kMaxRank> reach_{0, 0, 0};
    std::shared_ptr<ScalarField> spectrum_;
};

/// Bump kernel of radius epsilon sampled on the grid and renormalized.
/// Requires epsilon >= 2 * max spacing.
Mollifier make_mollifier(double epsilon, const Grid& grid);

enum class MollifyPath { automatic, direct, spectral };

/// Nodes of `region` whose stencil leaves `valid`, leaves the grid across a
/// wall, or whose wall distance is below epsilon. Empty when admissible.
std::vector<std::size_t> margin_violations(const Mollifier& m, const Region& region, const Region& valid);

/// (w)^eps on `region`, zero elsewhere. Throws margin_violation listing
/// offending nodes. The spectral path needs a fully periodic grid.
ScalarField mollify_field(const ScalarField& field, const Mollifier& m, const Region& region,
                          MollifyPath path = MollifyPath::automatic);
ScalarField mollify_field(const ScalarField& field, const Mollifier& m, const Region& region,
                          const Region& valid, MollifyPath path = MollifyPath::automatic);

VectorField mollify_vector(const VectorField& field, const Mollifier& m, const Region& region,
                           MollifyPath path = MollifyPath::automatic);

/// Sampled one-dimensional time kernel of radius kappa on step dt.
struct TimeKernel {
    double kappa = 0.0;
    double dt = 0.0;
    std::vector<double> masses;  ///< index j <-> offset j - half_width
    int half_width = 0;
};

/// Requires kappa > dt so at least one neighbour carries mass.
TimeKernel make_time_kernel(double kappa, double dt);

/// Time then space smoothing of velocity (and pressure when present). The
/// result holds the snapshots whose time stencil fits in the trajectory.
Trajectory time_space_mollify(const Trajectory& traj, double epsilon, double kappa, const Region& region,
                              bool space_first = false);

} // namespace onsager
