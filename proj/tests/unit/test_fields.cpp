#include "helpers.hpp"

#include "onsager/calculus.hpp"
#include "onsager/errors.hpp"
#include "onsager/field_io.hpp"
#include "onsager/pressure.hpp"
#include "onsager/synth.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace onsager;
namespace fs = std::filesystem;

TEST_CASE("grid dimensions parse and reject garbage") {
    CHECK(parse_dims("64x65") == std::vector<std::size_t>{64, 65});
    CHECK_THROWS_AS(parse_dims("64xx"), Error);
}

TEST_CASE("Taylor-Green energy on the 2 pi box") {
    const Snapshot s = taylor_green(test::box(64), 0.0, 0.0);
    CHECK(energy(s) == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-12));
    CHECK(max_abs(divergence(s)) <= 1e-12);
}

TEST_CASE("zero snapshot has zero energy") {
    const Snapshot z = zero_snapshot(test::box(16), 0.0, true);
    CHECK(energy(z) == 0.0);
    CHECK(z.has_pressure());
}

TEST_CASE("periodic pressure of Taylor-Green has the positive sign") {
    const Grid g = test::box(64);
    Snapshot s = taylor_green(g, 0.0, 0.0);
    s.pressure.reset();
    const PressureSolveReport r = solve_pressure_periodic(s);
    double err = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f) {
        const Index i = g.unflat(f);
        const double p = 0.25 * (std::cos(2.0 * g.coord(0, i[0])) + std::cos(2.0 * g.coord(1, i[1])));
        err = std::max(err, std::abs(r.pressure[f] - p));
    }
    CHECK(err <= 1e-12);
}

TEST_CASE("snapshot files round-trip exactly") {
    const fs::path dir = fs::temp_directory_path() / "onsager_unit_io";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const Grid g = test::channel(16, 17, 2.0, 1.0);
    Snapshot s = cellular_channel(g, 0.7);
    s.time = 0.375;
    s.pressure = solve_pressure(s).pressure;
    write_snapshot(dir / "cell.oflx", s);
    const Snapshot back = read_snapshot(dir / "cell.oflx");
    CHECK(back.grid == g);
    CHECK(back.time == s.time);
    CHECK(back.velocity == s.velocity);
    REQUIRE(back.pressure.has_value());
    CHECK(*back.pressure == *s.pressure);
    CHECK(back.tags.impermeable == s.tags.impermeable);

    Trajectory tr = frozen_trajectory(s, 3, 0.25);
    write_trajectory(dir / "traj", tr);
    const Trajectory tb = read_trajectory(dir / "traj");
    REQUIRE(tb.size() == 3);
    CHECK(tb.dt == tr.dt);
    CHECK(tb.snapshots[2].velocity == tr.snapshots[2].velocity);
    fs::remove_all(dir);
}

TEST_CASE("reading a missing file is an io error") {
    try {
        read_snapshot("/nonexistent/onsager/field.oflx");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io);
    }
}
