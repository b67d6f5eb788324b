#include "helpers.hpp"

#include "onsager/commutator.hpp"
#include "onsager/mollify.hpp"
#include "onsager/synth.hpp"

#include <doctest.h>

#include <cmath>

using namespace onsager;

TEST_CASE("mollifier masses sum to one") {
    for (double r : {2.0, 3.5, 8.0}) {
        const Grid g = test::box(64);
        const Mollifier m = make_mollifier(r * g.spacing(0), g);
        CHECK(m.mass_sum() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("mollification preserves constants on both paths") {
    const Grid g = test::box(64);
    const Mollifier m = make_mollifier(5.0 * g.spacing(0), g);
    const ScalarField c(g.size(), 2.5);
    for (MollifyPath p : {MollifyPath::direct, MollifyPath::spectral}) {
        const ScalarField out = mollify_field(c, m, Region::all(g), p);
        for (std::size_t f = 0; f < g.size(); f += 97) CHECK(out[f] == doctest::Approx(2.5).epsilon(1e-13));
    }
}

TEST_CASE("direct and spectral mollification agree") {
    const Grid g = test::box(64);
    const Snapshot s = fractional_field(0.5, 20, 3, g);
    const Mollifier m = make_mollifier(4.0 * g.spacing(0), g);
    const ScalarField a = mollify_field(s.velocity[0], m, Region::all(g), MollifyPath::direct);
    const ScalarField b = mollify_field(s.velocity[0], m, Region::all(g), MollifyPath::spectral);
    double d = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f) d = std::max(d, std::abs(a[f] - b[f]));
    CHECK(d <= 1e-12);
}

TEST_CASE("commutator stress vanishes for a constant field") {
    const Grid g = test::box(32);
    VectorField u(2, ScalarField(g.size(), 0.0));
    for (std::size_t f = 0; f < g.size(); ++f) {
        u[0][f] = 1.5;
        u[1][f] = -0.25;
    }
    const Mollifier m = make_mollifier(3.0 * g.spacing(0), g);
    const CommutatorStress R = commutator_stress(g, u, m, Region::all(g));
    for (const auto& comp : R.tensor)
        for (double x : comp) CHECK(std::abs(x) <= 1e-14);
}

TEST_CASE("time kernel masses sum to one") {
    const TimeKernel k = make_time_kernel(0.3, 0.05);
    double sum = 0.0;
    for (double x : k.masses) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}
