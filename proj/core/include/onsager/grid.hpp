/// @file grid.hpp
/// @brief Uniform Cartesian grids, index regions, domains and field containers.
///
/// Fields are node-collocated and stored in C order: the last axis varies
/// fastest. Periodic axes hold N distinct nodes (node N is identified with
/// node 0); wall-bounded axes hold N nodes that include both wall planes at
/// coordinates 0 and (N-1)h.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace onsager {

inline constexpr int kMaxRank = 3;
inline constexpr std::size_t kMinNodesPerAxis = 8;

using Index = std::array<std::size_t, kMaxRank>;
using Vec = std::array<double, kMaxRank>;

using ScalarField = std::vector<double>;
using VectorField = std::vector<ScalarField>;

enum class AxisKind : std::uint8_t { periodic = 0, wall = 1 };

class Grid {
public:
    Grid() = default;
    Grid(std::span<const std::size_t> dims, std::span<const double> spacing,
         std::span<const AxisKind> kinds);

    int rank() const { return rank_; }
    std::size_t dim(int axis) const { return dims_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    AxisKind kind(int axis) const { return kinds_[axis]; }
    bool periodic(int axis) const { return kinds_[axis] == AxisKind::periodic; }
    bool fully_periodic() const;
    int wall_axis_count() const;

    /// Physical length of the axis: N h (periodic) or (N-1) h (wall-bounded).
    double extent(int axis) const;
    double coord(int axis, std::size_t i) const { return static_cast<double>(i) * spacing_[axis]; }
    double cell_volume() const;
    double max_spacing() const;

    std::size_t size() const { return size_; }
    std::size_t stride(int axis) const { return strides_[axis]; }
    std::size_t flat(const Index& idx) const;
    Index unflat(std::size_t flat) const;
    Vec position(const Index& idx) const;

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    int rank_ = 0;
    Index dims_{1, 1, 1};
    Index strides_{0, 0, 0};
    Vec spacing_{0.0, 0.0, 0.0};
    std::array<AxisKind, kMaxRank> kinds_{AxisKind::periodic, AxisKind::periodic, AxisKind::periodic};
    std::size_t size_ = 0;
};

/// spacing = extent/dims on periodic axes, extent/(dims-1) on wall axes.
Grid make_grid(std::span<const std::size_t> dims, std::span<const double> extents,
               std::span<const AxisKind> kinds);

/// Parse "256x256" or "64x65x32".
std::vector<std::size_t> parse_dims(const std::string& text);

/// A set of grid nodes, kept both as a mask and as a sorted flat-index list.
class Region {
public:
    Region() = default;
    Region(const Grid& grid, std::vector<std::uint8_t> mask);

    static Region all(const Grid& grid);
    /// Nodes with lo[a] <= i[a] < hi[a] on every axis.
    static Region box(const Grid& grid, const Index& lo, const Index& hi);
    /// Nodes whose wall-axis distance from either wall plane is >= margin.
    static Region slab(const Grid& grid, int wall_axis, double margin);

    const Grid& grid() const { return grid_; }
    bool contains(std::size_t flat) const { return mask_[flat] != 0; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    const std::vector<std::size_t>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    bool covers_grid() const { return nodes_.size() == grid_.size(); }

    /// Number of distinct node indices spanned along an axis (0 if empty).
    std::size_t span_nodes(int axis) const;
    /// Smallest physical span (span_nodes - 1) * h over all axes.
    double min_physical_extent() const;

    Region intersect(const Region& other) const;
    Region complement() const;
    bool subset_of(const Region& other) const;

private:
    Grid grid_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::size_t> nodes_;
};

enum class Geometry { periodic_box, channel };

class Domain {
public:
    static Domain periodic_box(const Grid& grid);
    /// Channel: exactly one wall-bounded axis, all others periodic.
    static Domain channel(const Grid& grid);
    /// Picks the geometry implied by the grid's axis kinds.
    static Domain from_grid(const Grid& grid);

    const Grid& grid() const { return grid_; }
    Geometry geometry() const { return geometry_; }
    bool is_channel() const { return geometry_ == Geometry::channel; }
    int wall_axis() const { return wall_axis_; }
    double height() const;
    double half_width() const { return 0.5 * height(); }

private:
    Domain(const Grid& grid, Geometry geometry, int wall_axis)
        : grid_(grid), geometry_(geometry), wall_axis_(wall_axis) {}

    Grid grid_;
    Geometry geometry_ = Geometry::periodic_box;
    int wall_axis_ = -1;
};

struct BoundaryPoint {
    double distance = 0.0;
    Vec sigma{};   ///< nearest boundary point
    Vec normal{};  ///< outward unit normal at sigma
};

/// Nearest wall point of an interior node. Mid-channel ties go to the lower wall.
BoundaryPoint distance_to_boundary(const Domain& domain, const Index& node);

/// d(x) for every node (wall nodes included, d = 0 there).
ScalarField distance_field(const Domain& domain);

/// Signed outward normal component n(sigma(x)) along the wall axis, per node:
/// -1 for nodes attributed to the lower wall, +1 for the upper wall.
ScalarField normal_sign_field(const Domain& domain);

struct SnapshotTags {
    bool divergence_free = false;
    double divergence_tolerance = 0.0;
    bool impermeable = false;
    std::map<std::string, std::string> metadata;
};

struct Snapshot {
    Grid grid;
    VectorField velocity;
    std::optional<ScalarField> pressure;
    double time = 0.0;
    SnapshotTags tags;

    int components() const { return static_cast<int>(velocity.size()); }
    bool has_pressure() const { return pressure.has_value(); }
    /// Component count equals grid rank, every field has grid.size() entries.
    void validate() const;
};

/// Zero velocity (and optionally zero pressure) snapshot.
Snapshot zero_snapshot(const Grid& grid, double time, bool with_pressure);

struct Trajectory {
    std::vector<Snapshot> snapshots;
    double dt = 0.0;
    /// Integrability exponent q of L^q(0,T;L^2), carried as metadata only.
    std::optional<double> time_exponent_q;

    const Grid& grid() const { return snapshots.front().grid; }
    std::size_t size() const { return snapshots.size(); }
    double t_begin() const { return snapshots.front().time; }
    double t_end() const { return snapshots.back().time; }
    bool has_pressure() const;
    /// Non-empty, common grid, times in arithmetic progression with step dt.
    void validate() const;
};

/// Trajectory of identical copies of a snapshot at times t0 + k dt.
Trajectory frozen_trajectory(const Snapshot& snap, std::size_t count, double dt);

} // namespace onsager
