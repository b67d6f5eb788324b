/// @file kernels.cpp
/// @brief Bump profile, smooth step and raised-cosine window.

#include "onsager/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace onsager {

namespace {

constexpr int kPanels = 256;

// Cumulative integrals of the bump at t_k = -1 + k/kPanels, k = 0..kPanels.
const std::array<double, kPanels + 1>& cumulative_table() {
    static const auto table = [] {
        std::array<double, kPanels + 1> c{};
        for (int k = 1; k <= kPanels; ++k) {
            const double a = -1.0 + double(k - 1) / kPanels, b = -1.0 + double(k) / kPanels;
            c[k] = c[k - 1] + boost::math::quadrature::gauss_kronrod<double, 31>::integrate(bump, a, b, 15, 1e-16);
        }
        return c;
    }();
    return table;
}

// Integral of the bump over (-1, t] for t <= 0: table entry plus one short
// fixed Gauss panel.
double left_integral(double t) {
    if (t <= -1.0) return 0.0;
    const auto& c = cumulative_table();
    const int k = std::min(kPanels, static_cast<int>((t + 1.0) * kPanels));
    const double a = -1.0 + double(k) / kPanels;
    if (t <= a) return c[k];
    return c[k] + boost::math::quadrature::gauss<double, 20>::integrate(bump, a, t);
}

} // namespace

double bump(double s) {
    const double q = 1.0 - s * s;
    return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

double bump_integral() {
    static const double half = left_integral(0.0);
    return 2.0 * half;
}

double smooth_step(double s) {
    if (s <= 0.25) return 0.0;
    if (s >= 0.5) return 1.0;
    const double t = 8.0 * s - 3.0;  // maps (1/4, 1/2) onto (-1, 1)
    const double total = bump_integral();
    if (t <= 0.0) return left_integral(t) / total;
    return 1.0 - left_integral(-t) / total;
}

double smooth_step_derivative(double s) {
    if (s <= 0.25 || s >= 0.5) return 0.0;
    return 8.0 * bump(8.0 * s - 3.0) / bump_integral();
}

double raised_cosine(double t, double a, double b) {
    if (t <= a || t >= b) return 0.0;
    return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * (t - a) / (b - a)));
}

double raised_cosine_derivative(double t, double a, double b) {
    if (t <= a || t >= b) return 0.0;
    const double w = b - a;
    return std::numbers::pi / w * std::sin(2.0 * std::numbers::pi * (t - a) / w);
}

} // namespace onsager
