/// @file kernels.hpp
/// @brief The standard bump profile and the smooth step built from it.

#pragma once

namespace onsager {

/// exp(-1/(1-s^2)) for |s| < 1, else 0.
double bump(double s);

/// Integral of bump over (-1, 1).
double bump_integral();

/// 0 for s <= 1/4, 1 for s >= 1/2, C-infinity and nondecreasing in between:
/// the normalized integral of the bump rescaled onto (1/4, 1/2).
double smooth_step(double s);

/// Derivative of smooth_step; supported in [1/4, 1/2].
double smooth_step_derivative(double s);

/// Raised-cosine window on [a, b]: (1 - cos(2 pi (t-a)/(b-a)))/2, zero outside.
double raised_cosine(double t, double a, double b);
double raised_cosine_derivative(double t, double a, double b);

} // namespace onsager
