/// @file calculus.hpp
/// @brief Derivatives, trapezoid quadrature and deterministic reductions.
///
/// One derivative operator is used by every diagnostic: spectral along a
/// periodic axis whenever the whole grid line is valid data, otherwise
/// second-order central differences with second-order one-sided closures at
/// the ends of each valid run.

#pragma once

#include "onsager/grid.hpp"

#include <span>

namespace onsager {

/// Pairwise (tree) summation; the order depends only on the length.
double pairwise_sum(std::span<const double> values);

/// Trapezoid weights including the cell volume: half weight on wall planes.
ScalarField trapezoid_weights(const Grid& grid);

double integrate(const Grid& grid, const ScalarField& f);
double integrate(const Grid& grid, const ScalarField& f, const Region& region);

/// d f / d x_axis on the whole grid.
ScalarField partial(const Grid& grid, const ScalarField& f, int axis);

/// d f / d x_axis using only values on `valid`; zero outside it. Runs of a
/// single node get derivative zero, runs of two nodes a one-sided difference.
ScalarField partial(const Grid& grid, const ScalarField& f, int axis, const Region& valid);

ScalarField divergence(const Snapshot& snap);
ScalarField divergence(const Grid& grid, const VectorField& u, const Region& valid);

/// Trapezoid quadrature of |u|^2 / 2.
double energy(const Snapshot& snap);

double max_abs(const ScalarField& f);
double max_abs(const ScalarField& f, const Region& region);

/// sum_a u_a^2 / 2, pointwise.
ScalarField kinetic_density(const VectorField& u);

} // namespace onsager
