/// @file calculus.cpp
/// @brief Derivative operators and quadrature.

#include "onsager/calculus.hpp"
#include "onsager/errors.hpp"
#include "onsager/fft.hpp"

#include <algorithm>
#include <cmath>

namespace onsager {

namespace {

double pairwise(const double* x, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise(x, half) + pairwise(x + half, n - half);
}

// Derivative of a run of m consecutive values with spacing h.
void run_derivative(const double* v, std::size_t m, double h, double* out) {
    if (m == 1) {
        out[0] = 0.0;
        return;
    }
    if (m == 2) {
        out[0] = out[1] = (v[1] - v[0]) / h;
        return;
    }
    const double inv2h = 0.5 / h;
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv2h;
    for (std::size_t i = 1; i + 1 < m; ++i) out[i] = (v[i + 1] - v[i - 1]) * inv2h;
    out[m - 1] = (3.0 * v[m - 1] - 4.0 * v[m - 2] + v[m - 3]) * inv2h;
}

// Applies fn(base, stride) to every grid line along axis.
template <class Fn>
void for_each_line(const Grid& g, int axis, Fn&& fn) {
    const std::size_t n = g.dim(axis);
    const std::size_t stride = g.stride(axis);
    for (std::size_t f = 0; f < g.size(); ++f) {
        if ((f / stride) % n != 0) continue;
        fn(f, stride);
    }
}

} // namespace

double pairwise_sum(std::span<const double> values) { return pairwise(values.data(), values.size()); }

ScalarField trapezoid_weights(const Grid& grid) {
    ScalarField w(grid.size(), grid.cell_volume());
    for (int a = 0; a < grid.rank(); ++a) {
        if (grid.periodic(a)) continue;
        const std::size_t n = grid.dim(a);
        for (std::size_t f = 0; f < grid.size(); ++f) {
            const std::size_t i = grid.unflat(f)[a];
            if (i == 0 || i + 1 == n) w[f] *= 0.5;
        }
    }
    return w;
}

double integrate(const Grid& grid, const ScalarField& f) {
    require(f.size() == grid.size(), "integrate: field size mismatch");
    const ScalarField w = trapezoid_weights(grid);
    ScalarField p(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) p[i] = w[i] * f[i];
    return pairwise_sum(p);
}

double integrate(const Grid& grid, const ScalarField& f, const Region& region) {
    require(f.size() == grid.size(), "integrate: field size mismatch");
    const ScalarField w = trapezoid_weights(grid);
    ScalarField p;
    p.reserve(region.size());
    for (std::size_t i : region.nodes()) p.push_back(w[i] * f[i]);
    return pairwise_sum(p);
}

ScalarField partial(const Grid& grid, const ScalarField& f, int axis) {
    require(f.size() == grid.size(), "partial: field size mismatch");
    require(axis >= 0 && axis < grid.rank(), "partial: bad axis");
    if (grid.periodic(axis)) return spectral_derivative(grid, f, axis);
    ScalarField out(f.size());
    const std::size_t n = grid.dim(axis);
    std::vector<double> v(n), d(n);
    for_each_line(grid, axis, [&](std::size_t base, std::size_t stride) {
        for (std::size_t i = 0; i < n; ++i) v[i] = f[base + i * stride];
        run_derivative(v.data(), n, grid.spacing(axis), d.data());
        for (std::size_t i = 0; i < n; ++i) out[base + i * stride] = d[i];
    });
    return out;
}

ScalarField partial(const Grid& grid, const ScalarField& f, int axis, const Region& valid) {
    require(f.size() == grid.size(), "partial: field size mismatch");
    require(valid.grid() == grid, "partial: region grid mismatch");
    if (valid.covers_grid()) return partial(grid, f, axis);

    const std::size_t n = grid.dim(axis);
    const double h = grid.spacing(axis);
    const bool periodic = grid.periodic(axis);
    ScalarField out(f.size(), 0.0);

    // Lines fully valid along a periodic axis are differentiated spectrally.
    std::vector<std::size_t> spectral_lines;
    std::vector<double> v, d;
    for_each_line(grid, axis, [&](std::size_t base, std::size_t stride) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) count += valid.contains(base + i * stride);
        if (count == 0) return;
        if (count == n && periodic) {
            spectral_lines.push_back(base);
            return;
        }
        // Start scanning just after an invalid node so wrapped runs stay whole.
        std::size_t start = 0;
        if (periodic) {
            for (std::size_t i = 0; i < n; ++i)
                if (!valid.contains(base + i * stride)) {
                    start = (i + 1) % n;
                    break;
                }
        }
        const std::size_t len = n;
        std::size_t k = 0;
        while (k < len) {
            const std::size_t i0 = periodic ? (start + k) % n : k;
            if (!valid.contains(base + i0 * stride)) {
                ++k;
                continue;
            }
            std::vector<std::size_t> idx;
            while (k < len) {
                const std::size_t i = periodic ? (start + k) % n : k;
                if (!valid.contains(base + i * stride)) break;
                idx.push_back(base + i * stride);
                ++k;
            }
            v.resize(idx.size());
            d.resize(idx.size());
            for (std::size_t j = 0; j < idx.size(); ++j) v[j] = f[idx[j]];
            run_derivative(v.data(), idx.size(), h, d.data());
            for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = d[j];
        }
    });

    if (!spectral_lines.empty()) {
        const ScalarField full = spectral_derivative(grid, f, axis);
        const std::size_t stride = grid.stride(axis);
        for (std::size_t base : spectral_lines)
            for (std::size_t i = 0; i < n; ++i) out[base + i * stride] = full[base + i * stride];
    }
    return out;
}

ScalarField divergence(const Snapshot& snap) {
    snap.validate();
    ScalarField div(snap.grid.size(), 0.0);
    for (int a = 0; a < snap.grid.rank(); ++a) {
        const ScalarField d = partial(snap.grid, snap.velocity[a], a);
        for (std::size_t i = 0; i < div.size(); ++i) div[i] += d[i];
    }
    return div;
}

ScalarField divergence(const Grid& grid, const VectorField& u, const Region& valid) {
    require(static_cast<int>(u.size()) == grid.rank(), "divergence: component count mismatch");
    ScalarField div(grid.size(), 0.0);
    for (int a = 0; a < grid.rank(); ++a) {
        const ScalarField d = partial(grid, u[a], a, valid);
        for (std::size_t i = 0; i < div.size(); ++i) div[i] += d[i];
    }
    return div;
}

ScalarField kinetic_density(const VectorField& u) {
    ScalarField e(u.empty() ? 0 : u[0].size(), 0.0);
    for (const auto& c : u)
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += 0.5 * c[i] * c[i];
    return e;
}

double energy(const Snapshot& snap) {
    snap.validate();
    return integrate(snap.grid, kinetic_density(snap.velocity));
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const ScalarField& f, const Region& region) {
    double m = 0.0;
    for (std::size_t i : region.nodes()) m = std::max(m, std::abs(f[i]));
    return m;
}

} // namespace onsager
