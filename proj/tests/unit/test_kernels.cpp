#include "onsager/kernels.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <cmath>

using namespace onsager;

namespace {

// Independent oracle: adaptive quadrature of the bump mapped onto (1/4, 1/2).
double reference_step(double s) {
    if (s <= 0.25) return 0.0;
    if (s >= 0.5) return 1.0;
    const double t = 8.0 * s - 3.0;
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate(bump, -1.0, t, 1e-14) / q.integrate(bump, -1.0, 1.0, 1e-14);
}

} // namespace

TEST_CASE("bump vanishes outside the unit interval") {
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(-1.5) == 0.0);
    CHECK(bump(0.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("smooth step matches adaptive quadrature") {
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double s = 0.2 + 0.35 * i / 400.0;
        worst = std::max(worst, std::abs(smooth_step(s) - reference_step(s)));
    }
    CHECK(worst <= 1e-12);
    CHECK(smooth_step(0.25) == 0.0);
    CHECK(smooth_step(0.5) == 1.0);
}

TEST_CASE("smooth step is nondecreasing and its derivative integrates to one") {
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double v = smooth_step(0.25 + 0.25 * i / 1000.0);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    const double area = boost::math::quadrature::tanh_sinh<double>().integrate(smooth_step_derivative, 0.25, 0.5);
    CHECK(area == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("smooth step derivative agrees with a central difference") {
    const double h = 1e-6;
    for (double s : {0.3, 0.375, 0.41, 0.47}) {
        const double fd = (smooth_step(s + h) - smooth_step(s - h)) / (2.0 * h);
        CHECK(smooth_step_derivative(s) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("raised cosine window") {
    CHECK(raised_cosine(0.0, 0.0, 1.0) == 0.0);
    CHECK(raised_cosine(0.5, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(raised_cosine(1.5, 0.0, 1.0) == 0.0);
    const double h = 1e-6;
    const double fd = (raised_cosine(0.3 + h, 0.0, 1.0) - raised_cosine(0.3 - h, 0.0, 1.0)) / (2.0 * h);
    CHECK(raised_cosine_derivative(0.3, 0.0, 1.0) == doctest::Approx(fd).epsilon(1e-7));
}
