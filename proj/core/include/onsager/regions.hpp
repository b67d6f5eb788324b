/// @file regions.hpp
/// @brief Nested margin regions, distance transforms and cutoff fields.

#pragma once

#include "onsager/grid.hpp"

#include <optional>
#include <vector>

namespace onsager {

/// Distance between two nodes, using the minimum image on periodic axes.
double node_distance(const Grid& grid, std::size_t a, std::size_t b);

/// Distance from every node to the set (0 on the set, +inf if the set is empty).
ScalarField distance_to_set(const Region& set);

/// Nodes at distance <= r from the set.
Region dilate(const Region& set, double r);

/// Brute-force minimum distance between two node sets (+inf if either is empty).
double set_distance(const Region& a, const Region& b);

/// Nodes within `radius` of `centre` (minimum image on periodic axes).
Region ball_region(const Grid& grid, const Vec& centre, double radius);

/// Nested time windows [t1 + k tau, t2 - k tau], k = 0..3.
struct TimeChain {
    double t1 = 0.0;
    double t2 = 0.0;
    double tau = 0.0;
    std::pair<double, double> window(int k) const { return {t1 + k * tau, t2 - k * tau}; }
};

/// Q3 within Q2 within Q1 within Q-tilde, successive gaps >= eta.
struct RegionChain {
    Region q3, q2, q1, qtilde;
    double eta = 0.0;
    std::optional<TimeChain> time;
    /// Measured successive gaps (Q3|Q2, Q2|Q1, Q1|Q-tilde); +inf when a set is the whole grid.
    std::array<double, 3> gaps{};
};

/// Dilations of the support by eta, 2 eta, 3 eta and 4 eta. In a channel the
/// outermost set must stay off the wall planes.
RegionChain nested_regions(const Region& support, double eta, const Domain& domain);

struct CutoffField {
    ScalarField values;
    Region inner;
    Region outer;
    double width = 0.0;  ///< smooth_step argument scale
    double gap = 0.0;    ///< distance from inner to the complement of outer
};

/// smooth_step(dist(x, complement of outer) / (2 gap)): 1 on inner, 0 off outer.
CutoffField cutoff_region(const Domain& domain, const Region& inner, const Region& outer);

} // namespace onsager
