/// @file synth.cpp
/// @brief Analytic and random field generators.

#include "onsager/synth.hpp"
#include "onsager/calculus.hpp"
#include "onsager/errors.hpp"
#include "onsager/fft.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace onsager {

namespace {

constexpr double kPi = std::numbers::pi;

Snapshot blank(const Grid& grid, double t) {
    Snapshot s;
    s.grid = grid;
    s.time = t;
    s.velocity.assign(grid.rank(), ScalarField(grid.size(), 0.0));
    return s;
}

} // namespace

Snapshot shear_flow(const Profile1& U, const Profile2& W, double t, const Grid& grid) {
    require(grid.rank() == 3, "shear_flow: the construction is intrinsically 3D");
    require(grid.fully_periodic(), "shear_flow: requires a periodic grid");
    Snapshot s = blank(grid, t);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const Vec x = grid.position(grid.unflat(f));
        const double u = U(x[1]);
        s.velocity[0][f] = u;
        s.velocity[2][f] = W(x[0] - t * u, x[1]);
    }
    s.tags.divergence_free = true;
    s.tags.divergence_tolerance = 1e-12;
    s.tags.metadata["generator"] = "shear";
    s.tags.metadata["energy_stationary"] = "true";
    return s;
}

Snapshot fractional_field(double alpha, int cutoff, std::uint64_t seed, const Grid& grid) {
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(ErrorKind::precondition, "fractional_field: alpha must lie in (0,1), got " + std::to_string(alpha));
    require(grid.fully_periodic(), "fractional_field: requires a periodic grid");
    require(cutoff >= 1, "fractional_field: cutoff must be >= 1");
    const int n = grid.rank();
    for (int a = 0; a < n; ++a)
        require(2 * cutoff < static_cast<int>(grid.dim(a)), "fractional_field: cutoff not resolved by the grid");

    std::mt19937_64 gen(seed);
    std::vector<ComplexField> hat(n, ComplexField(grid.size(), Complex(0.0, 0.0)));
    const double expo = alpha + 0.5 * n;
    const int c = cutoff;
    const int c2 = n > 2 ? c : 0;

    auto store = [&](int a, long m) {
        const long N = static_cast<long>(grid.dim(a));
        return static_cast<std::size_t>(((m % N) + N) % N);
    };

    for (int m0 = -c; m0 <= c; ++m0)
        for (int m1 = -c; m1 <= c; ++m1)
            for (int m2 = -c2; m2 <= c2; ++m2) {
                const int norm2 = m0 * m0 + m1 * m1 + m2 * m2;
                if (norm2 == 0 || norm2 > c * c) continue;
                // Canonical half: first nonzero signed component positive.
                const int lead = m0 != 0 ? m0 : (m1 != 0 ? m1 : m2);
                if (lead < 0) continue;
                const int m[3] = {m0, m1, m2};
                double k[3] = {0.0, 0.0, 0.0};
                double kk = 0.0;
                for (int a = 0; a < n; ++a) {
                    k[a] = 2.0 * kPi * m[a] / grid.extent(a);
                    kk += k[a] * k[a];
                }
                const double amp = std::pow(std::sqrt(kk), -expo);
                Complex v[3];
                for (int a = 0; a < n; ++a) {
                    const double theta = 2.0 * kPi * detail::uniform53(gen);
                    v[a] = amp * Complex(std::cos(theta), std::sin(theta));
                }
                Complex kv = 0.0;
                for (int a = 0; a < n; ++a) kv += k[a] * v[a];
                for (int a = 0; a < n; ++a) v[a] -= k[a] * kv / kk;

                Index pos{0, 0, 0}, neg{0, 0, 0};
                for (int a = 0; a < n; ++a) {
                    pos[a] = store(a, m[a]);
                    neg[a] = store(a, -m[a]);
                }
                const std::size_t fp = grid.flat(pos), fn = grid.flat(neg);
                for (int a = 0; a < n; ++a) {
                    hat[a][fp] = v[a];
                    hat[a][fn] = std::conj(v[a]);
                }
            }

    Snapshot s = blank(grid, 0.0);
    for (int a = 0; a < n; ++a) s.velocity[a] = fft_inverse_real(grid, hat[a]);
    double ms = 0.0;
    {
        ScalarField e = kinetic_density(s.velocity);
        ms = 2.0 * pairwise_sum(e) / static_cast<double>(grid.size());
    }
    const double scale = ms > 0.0 ? 1.0 / std::sqrt(ms) : 1.0;
    for (auto& comp : s.velocity)
        for (double& x : comp) x *= scale;

    s.tags.divergence_free = true;
    s.tags.divergence_tolerance = 1e-12;
    s.tags.metadata["generator"] = "fractional";
    s.tags.metadata["alpha"] = std::to_string(alpha);
    s.tags.metadata["cutoff"] = std::to_string(cutoff);
    s.tags.metadata["seed"] = std::to_string(seed);
    return s;
}

Snapshot taylor_green(const Grid& grid, double t, double nu) {
    require(grid.rank() == 2 && grid.fully_periodic(), "taylor_green: requires a 2D periodic grid");
    for (int a = 0; a < 2; ++a)
        require(std::abs(grid.extent(a) - 2.0 * kPi) <= 1e-12, "taylor_green: extents must be 2*pi");
    Snapshot s = blank(grid, t);
    const double fu = std::exp(-2.0 * nu * t);
    const double fp = std::exp(-4.0 * nu * t);
    ScalarField p(grid.size());
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const Vec x = grid.position(grid.unflat(f));
        s.velocity[0][f] = fu * std::sin(x[0]) * std::cos(x[1]);
        s.velocity[1][f] = -fu * std::cos(x[0]) * std::sin(x[1]);
        p[f] = fp * (std::cos(2.0 * x[0]) + std::cos(2.0 * x[1])) / 4.0;
    }
    s.pressure = std::move(p);
    s.tags.divergence_free = true;
    s.tags.divergence_tolerance = 1e-12;
    s.tags.metadata["generator"] = nu == 0.0 ? "taylor_green_steady" : "taylor_green_viscous";
    return s;
}

Snapshot cellular_channel(const Grid& grid, double amplitude) {
    require(grid.rank() == 2 && grid.periodic(0) && !grid.periodic(1),
            "cellular_channel: requires a 2D channel with walls on axis 1");
    const double Lx = grid.extent(0), Ly = grid.extent(1);
    const double a = 2.0 * kPi / Lx, b = kPi / Ly;
    const double k = a * a + b * b;
    Snapshot s = blank(grid, 0.0);
    ScalarField p(grid.size());
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const Index idx = grid.unflat(f);
        const Vec x = grid.position(idx);
        const double psi = amplitude * std::sin(a * x[0]) * std::sin(b * x[1]);
        const double u = amplitude * b * std::sin(a * x[0]) * std::cos(b * x[1]);
        // Wall-normal velocity is set to exactly zero on the wall planes.
        const bool wall = idx[1] == 0 || idx[1] + 1 == grid.dim(1);
        const double v = wall ? 0.0 : -amplitude * a * std::cos(a * x[0]) * std::sin(b * x[1]);
        s.velocity[0][f] = u;
        s.velocity[1][f] = v;
        p[f] = -0.5 * (u * u + v * v) - 0.5 * k * psi * psi;
    }
    double sum = 0.0;
    std::size_t count = 0;
    std::vector<double> vals;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const std::size_t j = grid.unflat(f)[1];
        if (j == 0 || j + 1 == grid.dim(1)) continue;
        vals.push_back(p[f]);
        ++count;
    }
    sum = pairwise_sum(vals);
    const double mean = sum / static_cast<double>(count);
    for (double& x : p) x -= mean;
    s.pressure = std::move(p);
    s.tags.divergence_free = true;
    s.tags.divergence_tolerance = 1e-2;
    s.tags.impermeable = true;
    s.tags.metadata["generator"] = "cellular_channel";
    return s;
}

namespace {

struct PoiseuilleParams {
    double Lx, H, U, A;
};

Vec poiseuille_velocity(const PoiseuilleParams& c, const Vec& x) {
    const double a = 2.0 * kPi / c.Lx, b = kPi / c.H;
    const double sy = std::sin(b * x[1]);
    Vec v{};
    v[0] = c.U * 4.0 * x[1] * (c.H - x[1]) / (c.H * c.H) + c.A * std::sin(a * x[0]) * b * std::sin(2.0 * b * x[1]);
    v[1] = -c.A * a * std::cos(a * x[0]) * sy * sy;
    return v;
}

} // namespace

Snapshot poiseuille_channel(const Grid& grid, double mean_speed, double amplitude) {
    require(grid.rank() == 2 && grid.periodic(0) && !grid.periodic(1),
            "poiseuille_channel: requires a 2D channel with walls on axis 1");
    const PoiseuilleParams c{grid.extent(0), grid.extent(1), mean_speed, amplitude};
    Snapshot s = blank(grid, 0.0);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const Index idx = grid.unflat(f);
        if (idx[1] == 0 || idx[1] + 1 == grid.dim(1)) continue;
        const Vec v = poiseuille_velocity(c, grid.position(idx));
        s.velocity[0][f] = v[0];
        s.velocity[1][f] = v[1];
    }
    s.tags.divergence_free = true;
    s.tags.divergence_tolerance = 1e-2;
    s.tags.impermeable = true;
    s.tags.metadata["generator"] = "poiseuille_channel";
    return s;
}

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::shear: return "shear";
    case GeneratorKind::fractional: return "fractional";
    case GeneratorKind::taylor_green_steady: return "taylor-green";
    case GeneratorKind::taylor_green_viscous: return "taylor-green-viscous";
    case GeneratorKind::cellular_channel: return "cellular-channel";
    case GeneratorKind::poiseuille_channel: return "poiseuille-channel";
    }
    return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
    std::string k = name;
    std::replace(k.begin(), k.end(), '_', '-');
    if (k == "shear") return GeneratorKind::shear;
    if (k == "fractional") return GeneratorKind::fractional;
    if (k == "taylor-green" || k == "taylor-green-steady") return GeneratorKind::taylor_green_steady;
    if (k == "taylor-green-viscous") return GeneratorKind::taylor_green_viscous;
    if (k == "cellular-channel") return GeneratorKind::cellular_channel;
    if (k == "poiseuille-channel") return GeneratorKind::poiseuille_channel;
    fail(ErrorKind::precondition, "unknown generator kind '" + name + "'");
}

int default_cutoff(const Grid& grid) {
    std::size_t m = grid.dim(0);
    for (int a = 1; a < grid.rank(); ++a) m = std::min(m, grid.dim(a));
    return static_cast<int>(m / 3);
}

Snapshot generate(const GeneratorSpec& spec, const Grid& grid) {
    switch (spec.kind) {
    case GeneratorKind::shear: {
        const double su = spec.shear_u, sw = spec.shear_w;
        Snapshot s = shear_flow([su](double x) { return su * std::sin(x); },
                                [sw](double a, double b) { return std::cos(a) + sw * std::sin(2.0 * a) * std::cos(b); },
                                spec.t, grid);
        return s;
    }
    case GeneratorKind::fractional:
        return fractional_field(spec.alpha, spec.cutoff > 0 ? spec.cutoff : default_cutoff(grid), spec.seed, grid);
    case GeneratorKind::taylor_green_steady: return taylor_green(grid, spec.t, 0.0);
    case GeneratorKind::taylor_green_viscous: return taylor_green(grid, spec.t, spec.nu);
    case GeneratorKind::cellular_channel: return cellular_channel(grid, spec.amplitude);
    case GeneratorKind::poiseuille_channel: return poiseuille_channel(grid, spec.shear_u, spec.amplitude);
    }
    fail(ErrorKind::internal, "unhandled generator kind");
}

PointVelocity analytic_velocity(const GeneratorSpec& spec, const Grid& grid) {
    if (grid.rank() != 2) return {};
    switch (spec.kind) {
    case GeneratorKind::taylor_green_steady:
    case GeneratorKind::taylor_green_viscous: {
        const double fu = spec.kind == GeneratorKind::taylor_green_viscous ? std::exp(-2.0 * spec.nu * spec.t) : 1.0;
        return [fu](const Vec& x) {
            return Vec{fu * std::sin(x[0]) * std::cos(x[1]), -fu * std::cos(x[0]) * std::sin(x[1]), 0.0};
        };
    }
    case GeneratorKind::cellular_channel: {
        const double A = spec.amplitude, a = 2.0 * kPi / grid.extent(0), b = kPi / grid.extent(1);
        return [A, a, b](const Vec& x) {
            return Vec{A * b * std::sin(a * x[0]) * std::cos(b * x[1]), -A * a * std::cos(a * x[0]) * std::sin(b * x[1]), 0.0};
        };
    }
    case GeneratorKind::poiseuille_channel: {
        const PoiseuilleParams c{grid.extent(0), grid.extent(1), spec.shear_u, spec.amplitude};
        return [c](const Vec& x) { return poiseuille_velocity(c, x); };
    }
    default: return {};
    }
}

} // namespace onsager
