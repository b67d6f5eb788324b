/// @file regions.cpp
/// @brief Brute-force distance transforms, region chains and cutoffs.

#include "onsager/regions.hpp"
#include "onsager/errors.hpp"
#include "onsager/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace onsager {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nodes of the set that have a face neighbour outside it.
std::vector<std::size_t> boundary_nodes(const Region& set) {
    const Grid& g = set.grid();
    std::vector<std::size_t> out;
    for (std::size_t f : set.nodes()) {
        const Index idx = g.unflat(f);
        bool edge = false;
        for (int a = 0; a < g.rank() && !edge; ++a) {
            const std::size_t n = g.dim(a);
            for (int s : {-1, 1}) {
                long i = static_cast<long>(idx[a]) + s;
                if (g.periodic(a)) i = (i + static_cast<long>(n)) % static_cast<long>(n);
                else if (i < 0 || i >= static_cast<long>(n)) continue;
                if (!set.contains(f - idx[a] * g.stride(a) + static_cast<std::size_t>(i) * g.stride(a))) {
                    edge = true;
                    break;
                }
            }
        }
        if (edge) out.push_back(f);
    }
    return out;
}

double axis_delta(const Grid& g, int a, std::size_t i, std::size_t j) {
    double d = std::abs(static_cast<double>(i) - static_cast<double>(j));
    if (g.periodic(a)) d = std::min(d, static_cast<double>(g.dim(a)) - d);
    return d * g.spacing(a);
}

} // namespace

double node_distance(const Grid& g, std::size_t a, std::size_t b) {
    const Index ia = g.unflat(a), ib = g.unflat(b);
    double s = 0.0;
    for (int k = 0; k < g.rank(); ++k) {
        const double d = axis_delta(g, k, ia[k], ib[k]);
        s += d * d;
    }
    return std::sqrt(s);
}

ScalarField distance_to_set(const Region& set) {
    const Grid& g = set.grid();
    ScalarField d(g.size(), kInf);
    if (set.empty()) return d;
    const auto edge = boundary_nodes(set);
    std::vector<Index> eidx;
    eidx.reserve(edge.size());
    for (std::size_t e : edge) eidx.push_back(g.unflat(e));
    for (std::size_t f = 0; f < g.size(); ++f) {
        if (set.contains(f)) {
            d[f] = 0.0;
            continue;
        }
        const Index idx = g.unflat(f);
        double best = kInf;
        for (const Index& e : eidx) {
            double s = 0.0;
            for (int k = 0; k < g.rank(); ++k) {
                const double dk = axis_delta(g, k, idx[k], e[k]);
                s += dk * dk;
            }
            best = std::min(best, s);
        }
        d[f] = std::sqrt(best);
    }
    return d;
}

Region dilate(const Region& set, double r) {
    const ScalarField d = distance_to_set(set);
    std::vector<std::uint8_t> mask(d.size());
    const double tol = 1e-12 * std::max(r, set.grid().max_spacing());
    for (std::size_t i = 0; i < d.size(); ++i) mask[i] = d[i] <= r + tol ? 1 : 0;
    return Region(set.grid(), std::move(mask));
}

double set_distance(const Region& a, const Region& b) {
    require(a.grid() == b.grid(), "set_distance: grid mismatch");
    if (a.empty() || b.empty()) return kInf;
    const auto ea = boundary_nodes(a);
    const auto eb = boundary_nodes(b);
    // Overlapping sets are at distance 0; otherwise the nearest pair lies on the edges.
    for (std::size_t f : a.nodes())
        if (b.contains(f)) return 0.0;
    double best = kInf;
    for (std::size_t x : ea)
        for (std::size_t y : eb) best = std::min(best, node_distance(a.grid(), x, y));
    return best;
}

Region ball_region(const Grid& grid, const Vec& centre, double radius) {
    std::vector<std::uint8_t> mask(grid.size(), 0);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const Index idx = grid.unflat(f);
        double s = 0.0;
        for (int a = 0; a < grid.rank(); ++a) {
            double d = std::abs(grid.coord(a, idx[a]) - centre[a]);
            if (grid.periodic(a)) d = std::min(d, grid.extent(a) - d);
            s += d * d;
        }
        mask[f] = std::sqrt(s) <= radius ? 1 : 0;
    }
    return Region(grid, std::move(mask));
}

RegionChain nested_regions(const Region& support, double eta, const Domain& domain) {
    require(eta > 0.0, "nested_regions: eta must be positive");
    require(!support.empty(), "nested_regions: empty support");
    const Grid& g = domain.grid();
    require(support.grid() == g, "nested_regions: grid mismatch");

    if (domain.is_channel()) {
        const int w = domain.wall_axis();
        double dmin = kInf;
        for (std::size_t f : support.nodes()) {
            const double y = g.coord(w, g.unflat(f)[w]);
            dmin = std::min(dmin, std::min(y, g.extent(w) - y));
        }
        if (!(4.0 * eta < dmin))
            fail(ErrorKind::precondition, "domain too small for margins: maximal feasible eta is below " +
                                              std::to_string(dmin / 4.0));
    }

    RegionChain c;
    c.eta = eta;
    const ScalarField d = distance_to_set(support);
    const double tol = 1e-12 * std::max(eta, g.max_spacing());
    auto level = [&](double r) {
        std::vector<std::uint8_t> mask(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) mask[i] = d[i] <= r + tol ? 1 : 0;
        return Region(g, std::move(mask));
    };
    c.q3 = level(eta);
    c.q2 = level(2.0 * eta);
    c.q1 = level(3.0 * eta);
    c.qtilde = level(4.0 * eta);

    const Region* seq[4] = {&c.q3, &c.q2, &c.q1, &c.qtilde};
    for (int k = 0; k < 3; ++k) {
        c.gaps[k] = set_distance(*seq[k], seq[k + 1]->complement());
        if (c.gaps[k] < eta * (1.0 - 1e-12))
            fail(ErrorKind::internal, "nested_regions: verified gap below eta");
    }
    return c;
}

CutoffField cutoff_region(const Domain& domain, const Region& inner, const Region& outer) {
    const Grid& g = domain.grid();
    require(inner.grid() == g && outer.grid() == g, "cutoff_region: grid mismatch");
    require(!inner.empty(), "cutoff_region: empty inner region");
    require(inner.subset_of(outer), "cutoff_region: inner region is not contained in the outer region");
    CutoffField c;
    c.inner = inner;
    c.outer = outer;
    const Region rest = outer.complement();
    if (rest.empty()) {
        c.values.assign(g.size(), 1.0);
        c.gap = kInf;
        c.width = kInf;
        return c;
    }
    c.gap = set_distance(inner, rest);
    if (c.gap == 0.0 || inner.size() == outer.size())
        fail(ErrorKind::precondition, "cutoff_region: zero-width transition (inner touches the outer boundary)");
    if (c.gap < 2.0 * g.max_spacing() * (1.0 - 1e-12))
        fail(ErrorKind::precondition, "cutoff_region: transition narrower than 2h");
    c.width = 2.0 * c.gap;
    const ScalarField d = distance_to_set(rest);
    c.values.resize(g.size());
    for (std::size_t i = 0; i < d.size(); ++i) c.values[i] = smooth_step(d[i] / c.width);
    return c;
}

} // namespace onsager
