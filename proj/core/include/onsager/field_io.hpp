/// @file field_io.hpp
/// @brief OFLX1 binary field files, JSON sidecars and trajectory directories.
///
/// Header (little-endian): "OFLX1", u32 axis count, per axis u64 dims, f64
/// spacing, u8 axis kind; u32 component count; f64 time. Payload: components
/// in C-order as f64. `<file>.json` carries tags and provenance.

#pragma once

#include "onsager/grid.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace onsager {

struct RawField {
    Grid grid;
    double time = 0.0;
    std::vector<ScalarField> components;
};

void write_raw_field(const std::filesystem::path& path, const RawField& field);
RawField read_raw_field(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& field_path);
std::filesystem::path pressure_path(const std::filesystem::path& velocity_path);

/// Writes `path` (velocity), its sidecar, and `<stem>.pressure.oflx` when the
/// snapshot carries a pressure. Extra sidecar entries are stored verbatim.
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap,
                    const std::map<std::string, std::string>& extra = {});

/// Reads velocity, sidecar tags and the pressure file if present.
Snapshot read_snapshot(const std::filesystem::path& path);

/// Directory with trajectory.json and snapshot_NNNN.oflx files.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj);
Trajectory read_trajectory(const std::filesystem::path& dir);

/// A trajectory directory, or a single snapshot file read as a one-element trajectory.
Trajectory read_trajectory_or_snapshot(const std::filesystem::path& path);

} // namespace onsager
