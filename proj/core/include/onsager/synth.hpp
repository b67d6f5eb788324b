/// @file synth.hpp
/// @brief Synthetic velocity / pressure fields with known structure.

#pragma once

#include "onsager/grid.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace onsager {

using Profile1 = std::function<double(double)>;
using Profile2 = std::function<double(double, double)>;

/// u = (U(x2), 0, W(x1 - t U(x2), x2)) on a 3D periodic grid.
Snapshot shear_flow(const Profile1& U, const Profile2& W, double t, const Grid& grid);

/// Random divergence-free Fourier synthesis with |k|^-(alpha + n/2) amplitudes
/// on modes 0 < |m| <= cutoff (integer mode norm), unit RMS speed, zero mean.
/// Phases are drawn in a grid-independent mode order, so the same seed gives
/// the same function on every grid that resolves the cutoff.
Snapshot fractional_field(double alpha, int cutoff, std::uint64_t seed, const Grid& grid);

/// u = e^{-2 nu t}(sin x cos y, -cos x sin y), p = e^{-4 nu t}(cos 2x + cos 2y)/4.
/// This sign is the one that solves the Euler / Navier-Stokes momentum equation.
Snapshot taylor_green(const Grid& grid, double t, double nu);

/// Steady cellular channel flow from psi = A sin(2 pi x/Lx) sin(pi y/Ly), walls
/// on axis 1. Exact Euler solution: u . n = 0 on the walls, p = -|u|^2/2 - k psi^2/2
/// shifted to zero mean over interior nodes, with k = (2 pi/Lx)^2 + (pi/Ly)^2.
Snapshot cellular_channel(const Grid& grid, double amplitude);

/// No-slip channel data: Poiseuille profile u = U 4y(H-y)/H^2 plus the cell
/// psi = A sin(2 pi x/Lx) sin^2(pi y/H). Velocity vanishes on both walls; no pressure.
Snapshot poiseuille_channel(const Grid& grid, double mean_speed, double amplitude);

enum class GeneratorKind {
    shear,
    fractional,
    taylor_green_steady,
    taylor_green_viscous,
    cellular_channel,
    poiseuille_channel
};

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::taylor_green_steady;
    double alpha = 0.4;
    int cutoff = 0;  ///< 0 selects the largest cutoff below every axis' Nyquist index
    std::uint64_t seed = 0;
    double nu = 0.0;
    double t = 0.0;
    double amplitude = 1.0;
    /// Shear profiles: U(s) = shear_u * sin(s), W(a, b) = cos(a) + shear_w * sin(2a) cos(b).
    /// shear_u is also the Poiseuille centreline speed.
    double shear_u = 1.0;
    double shear_w = 0.5;
};

Snapshot generate(const GeneratorSpec& spec, const Grid& grid);

/// Closed-form velocity at an arbitrary point in 2D, or an empty function when
/// the kind has no closed form (fractional, shear).
using PointVelocity = std::function<Vec(const Vec&)>;
PointVelocity analytic_velocity(const GeneratorSpec& spec, const Grid& grid);

/// Default cutoff: floor(min_a N_a / 3).
int default_cutoff(const Grid& grid);

} // namespace onsager
