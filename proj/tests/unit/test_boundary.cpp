#include "helpers.hpp"

#include "onsager/boundary_flux.hpp"
#include "onsager/errors.hpp"
#include "onsager/synth.hpp"

#include <doctest.h>

#include <cmath>

using namespace onsager;

namespace {

// Normal velocity equal to the wall distance, Bernoulli head 1.
Snapshot linear_normal(const Grid& g, double offset = 0.0) {
    Snapshot s;
    s.grid = g;
    s.velocity.assign(2, ScalarField(g.size(), 0.0));
    s.pressure = ScalarField(g.size(), 0.0);
    const double ly = g.coord(1, g.dim(1) - 1);
    for (std::size_t f = 0; f < g.size(); ++f) {
        const double y = g.coord(1, g.unflat(f)[1]);
        const double v = (y <= 0.5 * ly ? -y : ly - y) + offset;
        s.velocity[1][f] = v;
        (*s.pressure)[f] = 1.0 - 0.5 * v * v;
    }
    return s;
}

} // namespace

TEST_CASE("shell flux of u.n = d with unit head") {
    const Grid g = test::channel(64, 257, 1.0, 1.0);
    const Domain dom = Domain::channel(g);
    const Trajectory tr = frozen_trajectory(linear_normal(g), 3, 0.5);
    const double T = 1.0;
    for (double eta : {0.4, 0.2}) {
        // Node sum over the open shell, both walls.
        double nodes = 0.0;
        for (std::size_t j = 0; j < g.dim(1); ++j) {
            const double y = g.coord(1, j);
            const double d = std::min(y, 1.0 - y);
            if (d > eta / 4 && d < eta / 2) nodes += d * g.cell_volume() * static_cast<double>(g.dim(0));
        }
        const double phi = shell_flux(tr, eta, dom);
        CHECK(phi == doctest::Approx(T * nodes / eta).epsilon(1e-12));
        // Continuum value 2 * Lx * (3 eta^2 / 32) / eta * T.
        CHECK(phi == doctest::Approx(3.0 * eta / 16.0 * T).epsilon(0.03));
    }
}

TEST_CASE("shell trend policy") {
    CHECK(shell_trend_ok({0.0, 0.0, 0.0}));
    CHECK(shell_trend_ok({1.0, 0.5, 0.24}));
    CHECK(shell_trend_ok({1.0, 1.05, 0.2}));
    CHECK_FALSE(shell_trend_ok({1.0, 1.2, 0.2}));
    CHECK_FALSE(shell_trend_ok({1.0, 0.5, 0.3}));
}

TEST_CASE("boundary cutoff is one in the bulk and zero at the wall") {
    const Grid g = test::channel(8, 65, 1.0, 1.0);
    const BoundaryCutoff c = boundary_cutoff(Domain::channel(g), 0.2);
    CHECK(c.psi[g.flat({0, 0, 0})] == 0.0);
    CHECK(c.psi[g.flat({0, 32, 0})] == 1.0);
}

TEST_CASE("modulus check separates vanishing and non-vanishing normal velocity") {
    const Grid g = test::channel(32, 129, 1.0, 1.0);
    const Domain dom = Domain::channel(g);
    const ModulusReport good = modulus_check(frozen_trajectory(linear_normal(g), 2, 0.5), 0.2, dom);
    CHECK(good.vanishes);
    CHECK(std::abs(good.intercept) <= 1e-8);
    CHECK(good.slope == doctest::Approx(1.0).epsilon(1e-8));

    Snapshot leak = zero_snapshot(g, 0.0, true);
    for (double& v : leak.velocity[1]) v = 0.1;
    const ModulusReport bad = modulus_check(frozen_trajectory(leak, 2, 0.5), 0.2, dom);
    CHECK_FALSE(bad.vanishes);
    CHECK(bad.intercept == doctest::Approx(0.1));
}

TEST_CASE("shell ladder needs a channel with enough planes") {
    const Grid g = test::channel(8, 17, 1.0, 1.0);
    CHECK_THROWS_AS(make_shell_spec(Domain::channel(g), 0.05, 0.4), Error);
    CHECK_THROWS_AS(make_shell_spec(Domain::periodic_box(test::box(16)), 0.1, 0.4), Error);
}

TEST_CASE("verdict pressure check ignores the pressure gauge") {
    const Grid g = test::channel(32, 257, 1.0, 1.0);
    const Domain dom = Domain::channel(g);
    Snapshot s = cellular_channel(g, 1.0);
    Snapshot shifted = s;
    for (double& p : *shifted.pressure) p += 5.0;
    const std::vector<double> etas{0.4, 0.2, 0.1};
    const ConservationVerdict a = conservation_verdict(frozen_trajectory(s, 3, 0.25), etas, dom);
    const ConservationVerdict b = conservation_verdict(frozen_trajectory(shifted, 3, 0.25), etas, dom);
    REQUIRE(a.pressure_norms.size() == 3);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(b.pressure_norms[k] == doctest::Approx(a.pressure_norms[k]).epsilon(1e-10));
    CHECK(a.pressure_bounded == b.pressure_bounded);
}

TEST_CASE("zero field in a channel conserves energy trivially") {
    const Grid g = test::channel(32, 65, 1.0, 1.0);
    const Trajectory tr = frozen_trajectory(zero_snapshot(g, 0.0, true), 3, 0.25);
    const Domain dom = Domain::channel(g);
    for (double eta : {0.4, 0.2}) CHECK(shell_flux(tr, eta, dom) == 0.0);
    const GlobalBalanceReport gb = global_balance(tr, 0.2, tr.t_begin(), tr.t_end(), dom);
    CHECK(gb.residual == 0.0);
}
