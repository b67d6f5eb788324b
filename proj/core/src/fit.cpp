/// @file fit.cpp
/// @brief Line and slope fits.

#include "onsager/fit.hpp"
#include "onsager/calculus.hpp"
#include "onsager/errors.hpp"

#include <cmath>
#include <cstdio>

namespace onsager {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, "fit_line: need at least two points");
    const double n = static_cast<double>(x.size());
    const double mx = pairwise_sum(x) / n;
    const double my = pairwise_sum(y) / n;
    std::vector<double> sxx, sxy, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx.push_back((x[i] - mx) * (x[i] - mx));
        sxy.push_back((x[i] - mx) * (y[i] - my));
        syy.push_back((y[i] - my) * (y[i] - my));
    }
    const double Sxx = pairwise_sum(sxx), Sxy = pairwise_sum(sxy), Syy = pairwise_sum(syy);
    require(Sxx > 0.0, "fit_line: abscissae are all equal");
    LineFit f;
    f.slope = Sxy / Sxx;
    f.intercept = my - f.slope * mx;
    std::vector<double> res;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        res.push_back(r * r);
    }
    const double ss = pairwise_sum(res);
    f.r2 = Syy > 0.0 ? 1.0 - ss / Syy : 1.0;
    f.rms_residual = std::sqrt(ss / n);
    return f;
}

SlopeFit fit_slope(const std::string& quantity, std::vector<double> epsilons, std::vector<double> values,
                   double predicted_slope, double tolerance, double r2_gate) {
    return fit_slope(quantity, std::move(epsilons), std::move(values), {}, predicted_slope, tolerance, r2_gate);
}

SlopeFit fit_slope(const std::string& quantity, std::vector<double> epsilons, std::vector<double> values,
                   const std::vector<double>& floors, double predicted_slope, double tolerance, double r2_gate) {
    require(epsilons.size() == values.size(), "fit_slope: ladder and values differ in length");
    require(floors.empty() || floors.size() == values.size(), "fit_slope: one floor per rung required");
    require(epsilons.size() >= 4, "fit_slope: fewer than 4 ladder rungs");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        require(epsilons[i] < epsilons[i - 1], "fit_slope: ladder must be strictly decreasing");

    SlopeFit s;
    s.quantity = quantity;
    s.epsilons = epsilons;
    s.values = values;
    s.predicted_slope = predicted_slope;
    s.tolerance = tolerance;

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = std::abs(values[i]);
        const double floor = floors.empty() ? 0.0 : floors[i];
        if (v > floor && std::isfinite(v)) {
            lx.push_back(std::log(epsilons[i]));
            ly.push_back(std::log(v));
        }
    }
    char buf[256];
    if (lx.empty()) {
        s.degenerate = true;
        s.passed = true;
        s.verdict = floors.empty() ? "degenerate: all values zero" : "degenerate: all values zero to round-off";
        return s;
    }
    if (lx.size() < 2) {
        s.verdict = "insufficient nonzero rungs";
        return s;
    }
    const LineFit f = fit_line(lx, ly);
    s.slope = f.slope;
    s.intercept = f.intercept;
    s.r2 = f.r2;
    s.asserted = lx.size() >= 4 && f.r2 >= r2_gate;
    s.passed = s.asserted && s.slope >= predicted_slope - tolerance;
    if (!s.asserted)
        std::snprintf(buf, sizeof buf, "not asserted: r2 %.4f below gate %.2f", f.r2, r2_gate);
    else
        std::snprintf(buf, sizeof buf, "%s: slope %.4f vs predicted %.4f - %.2f", s.passed ? "pass" : "fail",
                      s.slope, predicted_slope, tolerance);
    s.verdict = buf;
    return s;
}

} // namespace onsager
