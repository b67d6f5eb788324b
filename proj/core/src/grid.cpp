/// @file grid.cpp
/// @brief Grid, Region, Domain and container implementations.

#include "onsager/grid.hpp"
#include "onsager/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace onsager {

Grid::Grid(std::span<const std::size_t> dims, std::span<const double> spacing,
           std::span<const AxisKind> kinds) {
    require(dims.size() == 2 || dims.size() == 3, "grid rank must be 2 or 3");
    require(spacing.size() == dims.size() && kinds.size() == dims.size(),
            "grid dims, spacing and axis kinds must have equal length");
    rank_ = static_cast<int>(dims.size());
    for (int a = 0; a < rank_; ++a) {
        if (dims[a] < kMinNodesPerAxis)
            fail(ErrorKind::precondition, "grid too coarse for mollification: axis " +
                                              std::to_string(a) + " has " +
                                              std::to_string(dims[a]) + " nodes (minimum 8)");
        require(std::isfinite(spacing[a]) && spacing[a] > 0.0, "grid spacing must be positive");
        dims_[a] = dims[a];
        spacing_[a] = spacing[a];
        kinds_[a] = kinds[a];
    }
    std::size_t s = 1;
    for (int a = rank_ - 1; a >= 0; --a) {
        strides_[a] = s;
        s *= dims_[a];
    }
    size_ = s;
}

bool Grid::fully_periodic() const {
    for (int a = 0; a < rank_; ++a)
        if (!periodic(a)) return false;
    return true;
}

int Grid::wall_axis_count() const {
    int n = 0;
    for (int a = 0; a < rank_; ++a)
        if (!periodic(a)) ++n;
    return n;
}

double Grid::extent(int axis) const {
    const double n = static_cast<double>(dims_[axis]);
    return periodic(axis) ? n * spacing_[axis] : (n - 1.0) * spacing_[axis];
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < rank_; ++a) v *= spacing_[a];
    return v;
}

double Grid::max_spacing() const {
    double h = 0.0;
    for (int a = 0; a < rank_; ++a) h = std::max(h, spacing_[a]);
    return h;
}

std::size_t Grid::flat(const Index& idx) const {
    std::size_t f = 0;
    for (int a = 0; a < rank_; ++a) f += idx[a] * strides_[a];
    return f;
}

Index Grid::unflat(std::size_t flat) const {
    Index idx{0, 0, 0};
    for (int a = 0; a < rank_; ++a) {
        idx[a] = flat / strides_[a];
        flat -= idx[a] * strides_[a];
    }
    return idx;
}

Vec Grid::position(const Index& idx) const {
    Vec x{0.0, 0.0, 0.0};
    for (int a = 0; a < rank_; ++a) x[a] = coord(a, idx[a]);
    return x;
}

bool Grid::operator==(const Grid& o) const {
    if (rank_ != o.rank_) return false;
    for (int a = 0; a < rank_; ++a)
        if (dims_[a] != o.dims_[a] || spacing_[a] != o.spacing_[a] || kinds_[a] != o.kinds_[a])
            return false;
    return true;
}

Grid make_grid(std::span<const std::size_t> dims, std::span<const double> extents,
               std::span<const AxisKind> kinds) {
    require(dims.size() == extents.size() && dims.size() == kinds.size(),
            "make_grid: dims, extents and axis kinds must have equal length");
    std::vector<double> h(dims.size());
    for (std::size_t a = 0; a < dims.size(); ++a) {
        require(extents[a] > 0.0 && std::isfinite(extents[a]), "make_grid: extents must be positive");
        if (dims[a] < kMinNodesPerAxis)
            fail(ErrorKind::precondition, "grid too coarse for mollification: dims must be >= 8");
        const double n = static_cast<double>(dims[a]);
        h[a] = kinds[a] == AxisKind::periodic ? extents[a] / n : extents[a] / (n - 1.0);
    }
    return Grid(dims, h, kinds);
}

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        require(!part.empty() && part.find_first_not_of("0123456789") == std::string::npos,
                "grid: expected NxM or NxMxK, got '" + text + "'");
        dims.push_back(static_cast<std::size_t>(std::stoull(part)));
    }
    require(dims.size() == 2 || dims.size() == 3, "grid: expected 2 or 3 axes, got '" + text + "'");
    return dims;
}

// ---------------------------------------------------------------------------

Region::Region(const Grid& grid, std::vector<std::uint8_t> mask) : grid_(grid), mask_(std::move(mask)) {
    require(mask_.size() == grid_.size(), "region mask size does not match grid");
    for (std::size_t i = 0; i < mask_.size(); ++i)
        if (mask_[i]) {
            mask_[i] = 1;
            nodes_.push_back(i);
        }
}

Region Region::all(const Grid& grid) { return Region(grid, std::vector<std::uint8_t>(grid.size(), 1)); }

Region Region::box(const Grid& grid, const Index& lo, const Index& hi) {
    std::vector<std::uint8_t> mask(grid.size(), 0);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const Index idx = grid.unflat(f);
        bool in = true;
        for (int a = 0; a < grid.rank(); ++a) in = in && idx[a] >= lo[a] && idx[a] < hi[a];
        mask[f] = in ? 1 : 0;
    }
    return Region(grid, std::move(mask));
}

Region Region::slab(const Grid& grid, int wall_axis, double margin) {
    require(wall_axis >= 0 && wall_axis < grid.rank(), "slab: bad wall axis");
    const double L = grid.extent(wall_axis);
    std::vector<std::uint8_t> mask(grid.size(), 0);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const double y = grid.coord(wall_axis, grid.unflat(f)[wall_axis]);
        mask[f] = std::min(y, L - y) >= margin ? 1 : 0;
    }
    return Region(grid, std::move(mask));
}

std::size_t Region::span_nodes(int axis) const {
    if (nodes_.empty()) return 0;
    const std::size_t n = grid_.dim(axis);
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t f : nodes_) seen[grid_.unflat(f)[axis]] = 1;
    if (!grid_.periodic(axis)) {
        std::size_t lo = n, hi = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (seen[i]) {
                lo = std::min(lo, i);
                hi = std::max(hi, i);
            }
        return hi - lo + 1;
    }
    // Periodic: span is n minus the longest cyclic gap of unseen indices.
    std::size_t longest = 0, run = 0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
        if (!seen[k % n]) {
            run = std::min(run + 1, n);
            longest = std::max(longest, run);
        } else {
            run = 0;
        }
    }
    return n - longest;
}

double Region::min_physical_extent() const {
    double m = std::numeric_limits<double>::infinity();
    for (int a = 0; a < grid_.rank(); ++a) {
        const std::size_t s = span_nodes(a);
        const double e = s == grid_.dim(a) && grid_.periodic(a)
                             ? grid_.extent(a)
                             : static_cast<double>(s == 0 ? 0 : s - 1) * grid_.spacing(a);
        m = std::min(m, e);
    }
    return m;
}

Region Region::intersect(const Region& other) const {
    require(grid_ == other.grid_, "region intersect: grid mismatch");
    std::vector<std::uint8_t> m(mask_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] & other.mask_[i];
    return Region(grid_, std::move(m));
}

Region Region::complement() const {
    std::vector<std::uint8_t> m(mask_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] ? 0 : 1;
    return Region(grid_, std::move(m));
}

bool Region::subset_of(const Region& other) const {
    if (!(grid_ == other.grid_)) return false;
    for (std::size_t f : nodes_)
        if (!other.mask_[f]) return false;
    return true;
}

// ---------------------------------------------------------------------------

Domain Domain::periodic_box(const Grid& grid) {
    require(grid.fully_periodic(), "periodic box requires every axis periodic");
    return Domain(grid, Geometry::periodic_box, -1);
}

Domain Domain::channel(const Grid& grid) {
    require(grid.wall_axis_count() == 1, "channel geometry requires exactly one wall-bounded axis");
    int wall = -1;
    for (int a = 0; a < grid.rank(); ++a)
        if (!grid.periodic(a)) wall = a;
    return Domain(grid, Geometry::channel, wall);
}

Domain Domain::from_grid(const Grid& grid) {
    return grid.fully_periodic() ? periodic_box(grid) : channel(grid);
}

double Domain::height() const {
    return is_channel() ? grid_.extent(wall_axis_) : std::numeric_limits<double>::infinity();
}

BoundaryPoint distance_to_boundary(const Domain& domain, const Index& node) {
    if (!domain.is_channel()) fail(ErrorKind::precondition, "no boundary: domain is fully periodic");
    const Grid& g = domain.grid();
    const int w = domain.wall_axis();
    require(node[w] > 0 && node[w] + 1 < g.dim(w), "distance_to_boundary: node must be strictly interior");
    BoundaryPoint bp;
    const Vec x = g.position(node);
    const double L = g.extent(w);
    const double y = x[w];
    bp.sigma = x;
    if (y <= L - y) {
        bp.distance = y;
        bp.sigma[w] = 0.0;
        bp.normal[w] = -1.0;
    } else {
        bp.distance = L - y;
        bp.sigma[w] = L;
        bp.normal[w] = 1.0;
    }
    return bp;
}

ScalarField distance_field(const Domain& domain) {
    const Grid& g = domain.grid();
    ScalarField d(g.size(), std::numeric_limits<double>::infinity());
    if (!domain.is_channel()) return d;
    const int w = domain.wall_axis();
    const double L = g.extent(w);
    const std::size_t n = g.dim(w);
    for (std::size_t f = 0; f < g.size(); ++f) {
        const std::size_t j = g.unflat(f)[w];
        if (j == 0 || j + 1 == n) {
            d[f] = 0.0;
            continue;
        }
        const double y = g.coord(w, j);
        d[f] = std::min(y, L - y);
    }
    return d;
}

ScalarField normal_sign_field(const Domain& domain) {
    const Grid& g = domain.grid();
    ScalarField s(g.size(), 0.0);
    if (!domain.is_channel()) return s;
    const int w = domain.wall_axis();
    const double L = g.extent(w);
    const std::size_t n = g.dim(w);
    for (std::size_t f = 0; f < g.size(); ++f) {
        const std::size_t j = g.unflat(f)[w];
        if (j == 0) s[f] = -1.0;
        else if (j + 1 == n) s[f] = 1.0;
        else {
            const double y = g.coord(w, j);
            s[f] = y <= L - y ? -1.0 : 1.0;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

void Snapshot::validate() const {
    require(grid.size() > 0, "snapshot: empty grid");
    require(components() == grid.rank(), "snapshot: velocity component count must equal grid rank");
    for (const auto& c : velocity) require(c.size() == grid.size(), "snapshot: velocity size mismatch");
    if (pressure) require(pressure->size() == grid.size(), "snapshot: pressure size mismatch");
}

Snapshot zero_snapshot(const Grid& grid, double time, bool with_pressure) {
    Snapshot s;
    s.grid = grid;
    s.velocity.assign(grid.rank(), ScalarField(grid.size(), 0.0));
    if (with_pressure) s.pressure = ScalarField(grid.size(), 0.0);
    s.time = time;
    s.tags.divergence_free = true;
    s.tags.impermeable = true;
    return s;
}

bool Trajectory::has_pressure() const {
    return !snapshots.empty() &&
           std::all_of(snapshots.begin(), snapshots.end(), [](const Snapshot& s) { return s.has_pressure(); });
}

void Trajectory::validate() const {
    require(!snapshots.empty(), "trajectory: no snapshots");
    for (const auto& s : snapshots) {
        s.validate();
        require(s.grid == snapshots.front().grid, "trajectory: snapshots on different grids");
    }
    if (snapshots.size() > 1) {
        require(dt > 0.0, "trajectory: dt must be positive");
        for (std::size_t k = 0; k < snapshots.size(); ++k) {
            const double expect = snapshots.front().time + static_cast<double>(k) * dt;
            require(std::abs(snapshots[k].time - expect) <= 1e-9 * std::max(1.0, std::abs(expect)),
                    "trajectory: snapshot times are not an arithmetic progression with step dt");
        }
    }
}

Trajectory frozen_trajectory(const Snapshot& snap, std::size_t count, double dt) {
    Trajectory tr;
    tr.dt = dt;
    for (std::size_t k = 0; k < count; ++k) {
        Snapshot s = snap;
        s.time = snap.time + static_cast<double>(k) * dt;
        tr.snapshots.push_back(std::move(s));
    }
    return tr;
}

} // namespace onsager
