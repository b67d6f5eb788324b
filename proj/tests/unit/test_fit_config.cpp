#include "onsager/config.hpp"
#include "onsager/errors.hpp"
#include "onsager/fit.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace onsager;

TEST_CASE("exact power law gives its exponent") {
    std::vector<double> eps{0.4, 0.2, 0.1, 0.05}, v;
    for (double e : eps) v.push_back(3.0 * std::pow(e, 0.7));
    const SlopeFit f = fit_slope("q", eps, v, 0.7);
    CHECK(f.slope == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0));
    CHECK(f.passed);
    const SlopeFit steep = fit_slope("q", eps, v, 1.0);
    CHECK_FALSE(steep.passed);
}

TEST_CASE("values under the round-off floor are excluded") {
    std::vector<double> eps{0.4, 0.2, 0.1, 0.05}, v{1e-20, -3e-21, 2e-20, 0.0};
    const SlopeFit f = fit_slope("q", eps, v, {1e-15, 1e-15, 1e-15, 1e-15}, 0.5);
    CHECK(f.degenerate);
    CHECK(f.passed);
}

TEST_CASE("config round trip is canonical") {
    RunConfig c;
    c.gen.kind = "cellular-channel";
    c.boundary.etas = {0.4, 0.2, 0.1, 0.05};
    c.sweep.nus = {1e-2, 1e-3};
    c.seed = 7;
    const Json j = to_json(c);
    const Json back = to_json(parse_config(j));
    CHECK(back.dump() == j.dump());
}

TEST_CASE("config rejects unknown keys and wrong types with a pointer") {
    Json j = to_json(RunConfig{});
    j["gen"]["color"] = "red";
    try {
        parse_config(j);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("/gen/color") != std::string::npos);
    }
    Json k = to_json(RunConfig{});
    k["boundary"]["etas"] = "0.4";
    CHECK_THROWS_AS(parse_config(k), Error);
    Json n = to_json(RunConfig{});
    n["seed"] = -1;
    CHECK_THROWS_AS(parse_config(n), Error);
}

TEST_CASE("list and extent parsing") {
    CHECK(parse_list("1,2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
    CHECK(parse_extent("2x1") == std::vector<double>{2.0, 1.0});
    CHECK_THROWS_AS(parse_list("1,,2"), Error);
    CHECK_THROWS_AS(parse_list("abc"), Error);
}
