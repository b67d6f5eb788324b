/// @file field_io.cpp
/// @brief Binary field format and JSON sidecars.

#include "onsager/field_io.hpp"
#include "onsager/errors.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace onsager {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

static_assert(std::endian::native == std::endian::little, "field files assume a little-endian host");

constexpr char kMagic[5] = {'O', 'F', 'L', 'X', '1'};

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in, const fs::path& path) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) fail(ErrorKind::io, "truncated field file: " + path.string());
    return v;
}

json tags_to_json(const SnapshotTags& t) {
    json j;
    j["divergence_free"] = t.divergence_free;
    j["divergence_tolerance"] = t.divergence_tolerance;
    j["impermeable"] = t.impermeable;
    json meta = json::object();
    for (const auto& [k, v] : t.metadata) meta[k] = v;
    j["metadata"] = meta;
    return j;
}

SnapshotTags tags_from_json(const json& j) {
    SnapshotTags t;
    t.divergence_free = j.value("divergence_free", false);
    t.divergence_tolerance = j.value("divergence_tolerance", 0.0);
    t.impermeable = j.value("impermeable", false);
    if (j.contains("metadata"))
        for (const auto& [k, v] : j["metadata"].items()) t.metadata[k] = v.get<std::string>();
    return t;
}

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::io, "malformed JSON in " + path.string() + ": " + e.what());
    }
}

} // namespace

void write_raw_field(const fs::path& path, const RawField& field) {
    const Grid& g = field.grid;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.rank()));
    for (int a = 0; a < g.rank(); ++a) {
        put<std::uint64_t>(out, g.dim(a));
        put<double>(out, g.spacing(a));
        put<std::uint8_t>(out, static_cast<std::uint8_t>(g.kind(a)));
    }
    put<std::uint32_t>(out, static_cast<std::uint32_t>(field.components.size()));
    put<double>(out, field.time);
    for (const auto& c : field.components) {
        require(c.size() == g.size(), "write_raw_field: component size mismatch");
        out.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(double)));
    }
    if (!out) fail(ErrorKind::io, "write failed: " + path.string());
}

RawField read_raw_field(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open field file " + path.string());
    char magic[5];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) fail(ErrorKind::io, "not an OFLX1 file: " + path.string());
    const auto rank = get<std::uint32_t>(in, path);
    if (rank != 2 && rank != 3) fail(ErrorKind::io, "unsupported axis count in " + path.string());
    std::vector<std::size_t> dims(rank);
    std::vector<double> spacing(rank);
    std::vector<AxisKind> kinds(rank);
    for (std::uint32_t a = 0; a < rank; ++a) {
        dims[a] = get<std::uint64_t>(in, path);
        spacing[a] = get<double>(in, path);
        const auto k = get<std::uint8_t>(in, path);
        if (k > 1) fail(ErrorKind::io, "bad axis kind in " + path.string());
        kinds[a] = static_cast<AxisKind>(k);
    }
    RawField f;
    f.grid = Grid(dims, spacing, kinds);
    const auto ncomp = get<std::uint32_t>(in, path);
    f.time = get<double>(in, path);
    f.components.assign(ncomp, ScalarField(f.grid.size()));
    for (auto& c : f.components) {
        in.read(reinterpret_cast<char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(double)));
        if (!in) fail(ErrorKind::io, "truncated payload in " + path.string());
    }
    return f;
}

fs::path sidecar_path(const fs::path& field_path) { return fs::path(field_path.string() + ".json"); }

fs::path pressure_path(const fs::path& velocity_path) {
    fs::path p = velocity_path;
    p.replace_extension(".pressure.oflx");
    return p;
}

void write_snapshot(const fs::path& path, const Snapshot& snap, const std::map<std::string, std::string>& extra) {
    snap.validate();
    write_raw_field(path, RawField{snap.grid, snap.time, snap.velocity});
    json side;
    side["field"] = "velocity";
    side["time"] = snap.time;
    side["tags"] = tags_to_json(snap.tags);
    for (const auto& [k, v] : extra) side[k] = v;
    if (snap.pressure) side["pressure_file"] = pressure_path(path).filename().string();
    write_json_file(sidecar_path(path), side);
    if (snap.pressure) {
        const fs::path pp = pressure_path(path);
        write_raw_field(pp, RawField{snap.grid, snap.time, {*snap.pressure}});
        json ps;
        ps["field"] = "pressure";
        ps["time"] = snap.time;
        ps["velocity_file"] = path.filename().string();
        write_json_file(sidecar_path(pp), ps);
    }
}

Snapshot read_snapshot(const fs::path& path) {
    RawField raw = read_raw_field(path);
    Snapshot s;
    s.grid = raw.grid;
    s.time = raw.time;
    s.velocity = std::move(raw.components);
    const fs::path side = sidecar_path(path);
    if (fs::exists(side)) {
        const json j = read_json_file(side);
        if (j.value("field", std::string("velocity")) == "pressure")
            fail(ErrorKind::io, path.string() + " is a pressure file, not a velocity snapshot");
        if (j.contains("tags")) s.tags = tags_from_json(j["tags"]);
    }
    const fs::path pp = pressure_path(path);
    if (fs::exists(pp)) {
        RawField p = read_raw_field(pp);
        if (p.grid != s.grid || p.components.size() != 1)
            fail(ErrorKind::io, "pressure file does not match its velocity: " + pp.string());
        s.pressure = std::move(p.components[0]);
    }
    s.validate();
    return s;
}

void write_trajectory(const fs::path& dir, const Trajectory& traj) {
    traj.validate();
    fs::create_directories(dir);
    json j;
    j["dt"] = traj.dt;
    j["count"] = traj.size();
    if (traj.time_exponent_q) j["time_exponent_q"] = *traj.time_exponent_q;
    json files = json::array();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%04zu.oflx", k);
        write_snapshot(dir / name, traj.snapshots[k]);
        files.push_back(name);
    }
    j["files"] = files;
    write_json_file(dir / "trajectory.json", j);
}

Trajectory read_trajectory(const fs::path& dir) {
    const json j = read_json_file(dir / "trajectory.json");
    Trajectory t;
    t.dt = j.at("dt").get<double>();
    if (j.contains("time_exponent_q")) t.time_exponent_q = j["time_exponent_q"].get<double>();
    for (const auto& f : j.at("files")) t.snapshots.push_back(read_snapshot(dir / f.get<std::string>()));
    t.validate();
    return t;
}

Trajectory read_trajectory_or_snapshot(const fs::path& path) {
    if (fs::is_directory(path)) return read_trajectory(path);
    Trajectory t;
    t.snapshots.push_back(read_snapshot(path));
    t.dt = 1.0;
    return t;
}

} // namespace onsager
