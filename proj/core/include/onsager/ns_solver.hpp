/// @file ns_solver.hpp
/// @brief 2D incompressible Navier-Stokes on a staggered (MAC) grid.
///
/// Periodic box or channel with no-slip walls on axis 1. The node grid of the
/// configuration fixes the cells: a periodic axis of N nodes has N cells, the
/// wall axis of N nodes has N-1 cells. u lives on x-faces, v on y-faces.
/// Snapshots handed out are resampled to nodes.

#pragma once

#include "onsager/grid.hpp"
#include "onsager/synth.hpp"

#include <optional>
#include <string>
#include <vector>

namespace onsager {

struct SolverConfig {
    Grid grid;               ///< node grid; axis 1 may be a wall axis
    double nu = 0.0;
    double dt = 0.0;         ///< upper bound; the run uses t_end / ceil(t_end / dt)
    double t_end = 0.0;
    GeneratorSpec initial;
    std::optional<Snapshot> initial_field;  ///< overrides `initial` when set
    double cfl_limit = 0.5;
    std::size_t record_stride = 1;          ///< snapshot every this many steps
    bool with_pressure = true;              ///< attach the re-solved pressure to snapshots
};

struct SolverState {
    Grid grid;
    double time = 0.0;
    std::size_t steps = 0;
    std::vector<double> u;  ///< nx * ny_cells, x-faces
    std::vector<double> v;  ///< nx * (ny_cells or ny_cells + 1), y-faces
    double dissipated = 0.0;  ///< nu * int ||grad u||^2 so far
};

struct DissipationSeries {
    std::vector<double> times;
    std::vector<double> kinetic_energy;
    std::vector<double> cumulative_dissipation;
    std::vector<double> leray_residual;
    std::vector<double> gradient_norm;  ///< ||grad u||^2 (discrete Dirichlet form)
    std::vector<double> divergence;     ///< max |div u| after each step
    double max_leray_residual() const;
};

struct RunResult {
    Trajectory trajectory;
    DissipationSeries series;
    SolverState final_state;
};

/// Face-sampled, projected initial state. Channel data must vanish on the walls.
SolverState initial_state(const SolverConfig& config);

/// One step of length dt: half CN diffusion, relaxed RK2 advection, half CN
/// diffusion, projection.
SolverState step(const SolverState& state, const SolverConfig& config, double dt);

RunResult run(const SolverConfig& config);

/// MAC energy 1/2 ||u||^2 and Dirichlet form ||grad u||^2.
double mac_energy(const SolverState& state);
double mac_gradient_norm(const SolverState& state);
double mac_max_divergence(const SolverState& state);

/// Orthogonal projection onto discretely divergence-free face fields.
void mac_project(SolverState& state);

/// MAC L2 error of the face values against a point velocity.
double mac_l2_error(const SolverState& state, const PointVelocity& exact);

/// Node-collocated snapshot (u = 0 on the walls of a channel).
Snapshot to_snapshot(const SolverState& state);

struct SweepEntry {
    double nu = 0.0;
    double dissipation = 0.0;  ///< nu int_0^{t*} ||grad u||^2
    double layer_width = 0.0;  ///< sqrt(nu t*)
    bool under_resolved = false;
    double max_leray_residual = 0.0;
    DissipationSeries series;
};

struct DissipationSweep {
    std::vector<SweepEntry> entries;
    double t_star = 0.0;
    bool monotone = false;
    bool halved = false;
    bool positive = false;
    std::string verdict;
};

/// Runs the base configuration for every nu in a decreasing ladder up to t_star.
DissipationSweep dissipation_sweep(const SolverConfig& base, const std::vector<double>& nus, double t_star);

struct ViscousRun {
    double nu = 0.0;
    Trajectory trajectory;  ///< snapshots with pressure
};

struct ViscousFluxReport {
    std::vector<double> nus;
    std::vector<double> etas;
    std::vector<std::vector<double>> flux;  ///< flux[nu index][eta index]
    std::vector<std::string> nu_trend;      ///< per eta
    std::vector<double> extrapolated;       ///< Richardson to nu = 0 from the two smallest nu
    bool eta_trend_ok = false;
    bool positive = false;
    std::string verdict;
};

ViscousFluxReport viscous_flux_criterion(const std::vector<ViscousRun>& runs, const std::vector<double>& etas);

} // namespace onsager
