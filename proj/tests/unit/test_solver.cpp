#include "helpers.hpp"

#include "onsager/ns_solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace onsager;

namespace {

SolverConfig rough(const Grid& g) {
    SolverConfig c;
    c.grid = g;
    c.nu = 0.0;
    c.dt = 0.01;
    c.t_end = 0.05;
    c.initial.kind = g.fully_periodic() ? GeneratorKind::fractional : GeneratorKind::poiseuille_channel;
    c.initial.alpha = 0.5;
    c.initial.cutoff = 8;
    c.initial.seed = 9;
    c.initial.amplitude = 0.2;
    c.with_pressure = false;
    return c;
}

} // namespace

TEST_CASE("projection is idempotent and divergence free") {
    for (const Grid& g : {test::box(32), test::channel(32, 33, 1.0, 1.0)}) {
        SolverState s = initial_state(rough(g));
        mac_project(s);
        CHECK(mac_max_divergence(s) <= 1e-11);
        const std::vector<double> u = s.u, v = s.v;
        mac_project(s);
        double d = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u[i] - s.u[i]));
        for (std::size_t i = 0; i < v.size(); ++i) d = std::max(d, std::abs(v[i] - s.v[i]));
        CHECK(d <= 1e-12);
    }
}

TEST_CASE("inviscid periodic run conserves energy") {
    const RunResult r = run(rough(test::box(32)));
    const auto& e = r.series.kinetic_energy;
    CHECK(std::abs(e.back() - e.front()) <= 1e-10 * e.front());
    CHECK(r.series.max_leray_residual() <= 1e-8);
}

TEST_CASE("viscous Taylor-Green decays at the analytic rate") {
    SolverConfig c;
    c.grid = test::box(32);
    c.nu = 0.05;
    c.dt = 0.01;
    c.t_end = 0.5;
    c.initial.kind = GeneratorKind::taylor_green_steady;
    c.with_pressure = false;
    const RunResult r = run(c);
    const double ratio = r.series.kinetic_energy.back() / r.series.kinetic_energy.front();
    CHECK(ratio == doctest::Approx(std::exp(-4.0 * c.nu * c.t_end)).epsilon(5e-3));
}
