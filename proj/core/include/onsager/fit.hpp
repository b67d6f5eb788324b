/// @file fit.hpp
/// @brief Least-squares lines and log-log slope fits with verdicts.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace onsager {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double rms_residual = 0.0;
};

/// Ordinary least squares y = slope x + intercept; needs at least 2 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

inline constexpr double kSlopeTolerance = 0.15;
inline constexpr double kR2Gate = 0.9;

struct SlopeFit {
    std::string quantity;
    std::vector<double> epsilons;
    std::vector<double> values;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double predicted_slope = 0.0;
    double tolerance = kSlopeTolerance;
    bool degenerate = false;  ///< every value is zero; no slope defined
    bool asserted = false;    ///< r2 >= gate, so the slope comparison counts
    bool passed = false;      ///< asserted and slope >= predicted - tolerance (or degenerate)
    std::string verdict;
};

/// Fits log|values| against log epsilons. Requires >= 4 strictly decreasing
/// epsilons. Zero entries are excluded from the fit; all-zero is degenerate.
SlopeFit fit_slope(const std::string& quantity, std::vector<double> epsilons, std::vector<double> values,
                   double predicted_slope, double tolerance = kSlopeTolerance, double r2_gate = kR2Gate);

/// As above, but |values[i]| <= floors[i] counts as zero (round-off).
SlopeFit fit_slope(const std::string& quantity, std::vector<double> epsilons, std::vector<double> values,
                   const std::vector<double>& floors, double predicted_slope, double tolerance = kSlopeTolerance,
                   double r2_gate = kR2Gate);

} // namespace onsager
