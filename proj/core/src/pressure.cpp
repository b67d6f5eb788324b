/// @file pressure.cpp
/// @brief Periodic and channel pressure Poisson solves, negative Sobolev norms.

#include "onsager/pressure.hpp"
#include "onsager/calculus.hpp"
#include "onsager/errors.hpp"
#include "onsager/holder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace onsager {

namespace {

// Wavenumber for a first derivative (Nyquist dropped) and for a same-axis second derivative.
double k_first(const Grid& g, int a, std::size_t m) {
    return is_nyquist(m, g.dim(a)) ? 0.0 : wavenumber(g, a, m);
}
double k_second(const Grid& g, int a, std::size_t m) {
    const double k = wavenumber(g, a, m);
    return k * k;
}

int wall_axis_of(const Grid& g) {
    for (int a = 0; a < g.rank(); ++a)
        if (!g.periodic(a)) return a;
    return -1;
}

// Forward transform along every periodic axis only.
ComplexField tangential_forward(const Grid& g, const ScalarField& f) {
    ComplexField c(f.begin(), f.end());
    for (int a = 0; a < g.rank(); ++a)
        if (g.periodic(a)) fft_axis(g, c, a, -1);
    return c;
}

ScalarField tangential_inverse(const Grid& g, ComplexField c) {
    double count = 1.0;
    for (int a = 0; a < g.rank(); ++a)
        if (g.periodic(a)) {
            fft_axis(g, c, a, +1);
            count *= static_cast<double>(g.dim(a));
        }
    ScalarField out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real() / count;
    return out;
}

std::vector<Complex> thomas(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper,
                            std::vector<Complex> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<Complex> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

void subtract_interior_mean(const Grid& g, int wall, ScalarField& p) {
    std::vector<double> vals;
    for (std::size_t f = 0; f < g.size(); ++f) {
        const std::size_t j = g.unflat(f)[wall];
        if (j == 0 || j + 1 == g.dim(wall)) continue;
        vals.push_back(p[f]);
    }
    const double mean = pairwise_sum(vals) / static_cast<double>(vals.size());
    for (double& v : p) v -= mean;
}

} // namespace

std::vector<Complex> solve_neumann_line(std::vector<Complex> rhs, double k2, double h, Complex g0, Complex g1,
                                        double* defect) {
    const std::size_t n = rhs.size();
    require(n >= 3, "neumann line: need at least 3 nodes");
    const double ih2 = 1.0 / (h * h);
    rhs[0] -= 2.0 * g0 / h;
    rhs[n - 1] += 2.0 * g1 / h;
    if (k2 > 0.0) {
        std::vector<double> lo(n, -ih2), di(n, 2.0 * ih2 + k2), up(n, -ih2);
        up[0] = -2.0 * ih2;
        lo[n - 1] = -2.0 * ih2;
        if (defect) *defect = 0.0;
        return thomas(lo, di, up, rhs);
    }
    // Zero mode: left null vector is the trapezoid weight (1/2, 1, ..., 1, 1/2).
    Complex wsum = 0.5 * (rhs[0] + rhs[n - 1]);
    {
        std::vector<double> re, im;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            re.push_back(rhs[j].real());
            im.push_back(rhs[j].imag());
        }
        wsum += Complex(pairwise_sum(re), pairwise_sum(im));
    }
    const Complex c = wsum / static_cast<double>(n - 1);
    if (defect) *defect = std::abs(c);
    for (auto& v : rhs) v -= c;
    // Pin p_0 = 0 and drop the first equation.
    const std::size_t m = n - 1;
    std::vector<double> lo(m, -ih2), di(m, 2.0 * ih2), up(m, -ih2);
    lo[m - 1] = -2.0 * ih2;
    std::vector<Complex> r(rhs.begin() + 1, rhs.end());
    const std::vector<Complex> x = thomas(lo, di, up, r);
    std::vector<Complex> p(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) p[j + 1] = x[j];
    Complex mean = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) mean += p[j];
    mean /= static_cast<double>(n - 2);
    for (auto& v : p) v -= mean;
    return p;
}

ScalarField pressure_source(const Grid& g, const VectorField& u) {
    const int n = g.rank();
    require(static_cast<int>(u.size()) == n, "pressure: component count must equal grid rank");
    ScalarField s(g.size(), 0.0);
    ScalarField prod(g.size());
    if (g.fully_periodic()) {
        ComplexField sh(g.size(), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = u[i][k] * u[j][k];
                const ComplexField ph = fft_forward(g, prod);
                const double mult = i == j ? 1.0 : 2.0;
                for (std::size_t f = 0; f < g.size(); ++f) {
                    const Index idx = g.unflat(f);
                    const double c = i == j ? k_second(g, i, idx[i]) : k_first(g, i, idx[i]) * k_first(g, j, idx[j]);
                    sh[f] -= mult * c * ph[f];
                }
            }
        return fft_inverse_real(g, sh);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = u[i][k] * u[j][k];
            const ScalarField d = partial(g, partial(g, prod, j), i);
            const double mult = i == j ? 1.0 : 2.0;
            for (std::size_t k = 0; k < s.size(); ++k) s[k] += mult * d[k];
        }
    return s;
}

PressureSolveReport solve_pressure_periodic(const Snapshot& snap) {
    snap.validate();
    const Grid& g = snap.grid;
    require(g.fully_periodic(), "solve_pressure_periodic: requires a fully periodic grid");
    const ScalarField s = pressure_source(g, snap.velocity);
    ComplexField sh = fft_forward(g, s);
    ComplexField ph(g.size(), 0.0), lap(g.size(), 0.0);
    for (std::size_t f = 1; f < g.size(); ++f) {
        const Index idx = g.unflat(f);
        double k2 = 0.0;
        for (int a = 0; a < g.rank(); ++a) k2 += k_second(g, a, idx[a]);
        ph[f] = sh[f] / k2;
        lap[f] = -k2 * ph[f];
    }
    PressureSolveReport r;
    r.pressure = fft_inverse_real(g, ph);
    const ScalarField lp = fft_inverse_real(g, lap);
    double res = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f) res = std::max(res, std::abs(-lp[f] - s[f]));
    r.residual = res;
    r.mean_zero = true;
    r.boundary_condition = "periodic";
    return r;
}

PressureSolveReport solve_pressure_channel(const Snapshot& snap, double impermeability_tol) {
    snap.validate();
    const Grid& g = snap.grid;
    require(g.wall_axis_count() == 1, "solve_pressure_channel: requires a channel grid");
    const int w = wall_axis_of(g);
    const std::size_t N = g.dim(w);
    const double h = g.spacing(w);
    const ScalarField& uw = snap.velocity[w];
    double scale = 1.0;
    for (const auto& c : snap.velocity) scale = std::max(scale, max_abs(c));
    for (std::size_t f = 0; f < g.size(); ++f) {
        const std::size_t j = g.unflat(f)[w];
        if ((j == 0 || j + 1 == N) && std::abs(uw[f]) > impermeability_tol * scale)
            fail(ErrorKind::hypothesis, "impermeability violated: |u.n| = " + std::to_string(std::abs(uw[f])) +
                                            " on a wall plane");
    }

    const ScalarField s = pressure_source(g, snap.velocity);
    // Neumann data: dp/dy = -(u . grad u)_y on both walls.
    ScalarField gy(g.size(), 0.0);
    for (int a = 0; a < g.rank(); ++a) {
        const ScalarField d = partial(g, uw, a);
        for (std::size_t f = 0; f < g.size(); ++f) gy[f] -= snap.velocity[a][f] * d[f];
    }
    const ComplexField sh = tangential_forward(g, s);
    const ComplexField gh = tangential_forward(g, gy);
    ComplexField ph(g.size(), 0.0);
    const std::size_t stride = g.stride(w);
    double defect = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f) {
        const Index idx = g.unflat(f);
        if (idx[w] != 0) continue;
        double k2 = 0.0;
        for (int a = 0; a < g.rank(); ++a)
            if (a != w) k2 += k_second(g, a, idx[a]);
        std::vector<Complex> rhs(N);
        for (std::size_t j = 0; j < N; ++j) rhs[j] = sh[f + j * stride];
        double d = 0.0;
        const auto p = solve_neumann_line(rhs, k2, h, gh[f], gh[f + (N - 1) * stride], &d);
        defect = std::max(defect, d);
        for (std::size_t j = 0; j < N; ++j) ph[f + j * stride] = p[j];
    }
    PressureSolveReport r;
    r.pressure = tangential_inverse(g, ph);
    subtract_interior_mean(g, w, r.pressure);
    r.compatibility_defect = defect;

    // Residual of the discrete operator on interior nodes.
    ComplexField lap(g.size(), 0.0);
    const ComplexField pt = tangential_forward(g, r.pressure);
    for (std::size_t f = 0; f < g.size(); ++f) {
        const Index idx = g.unflat(f);
        if (idx[w] == 0 || idx[w] + 1 == N) continue;
        double k2 = 0.0;
        for (int a = 0; a < g.rank(); ++a)
            if (a != w) k2 += k_second(g, a, idx[a]);
        lap[f] = (pt[f + stride] - 2.0 * pt[f] + pt[f - stride]) / (h * h) - k2 * pt[f];
    }
    const ScalarField lp = tangential_inverse(g, lap);
    double res = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f) {
        const std::size_t j = g.unflat(f)[w];
        if (j == 0 || j + 1 == N) continue;
        res = std::max(res, std::abs(-lp[f] - s[f]));
    }
    r.residual = res;
    r.mean_zero = true;
    r.boundary_condition = "neumann: dp/dn = -(u.grad u).n on walls";
    return r;
}

PressureSolveReport solve_pressure(const Snapshot& snap) {
    return snap.grid.fully_periodic() ? solve_pressure_periodic(snap) : solve_pressure_channel(snap);
}

SobolevNormEstimate negative_sobolev_norm(const Grid& g, const ScalarField& field, double beta,
                                          const Region& region, const ScalarField* cutoff) {
    require(beta >= 0.0, "negative_sobolev_norm: beta must be nonnegative");
    require(field.size() == g.size() && region.grid() == g, "negative_sobolev_norm: size mismatch");
    const int w = wall_axis_of(g);
    ScalarField f(g.size(), 0.0);
    for (std::size_t i : region.nodes()) f[i] = field[i] * (cutoff ? (*cutoff)[i] : 1.0);

    SobolevNormEstimate est;
    est.beta = beta;
    est.region = std::to_string(region.size()) + " nodes";
    est.convention = "sum_k (1+|k|^2)^(-beta) |f_hat(k)|^2, Parseval-normalized";

    Grid eg = g;
    ScalarField ext = f;
    double doubling = 1.0;
    if (w >= 0) {
        // Odd extension across the wall axis onto a periodic axis of length 2L.
        const std::size_t N = g.dim(w), M = 2 * (N - 1);
        std::array<std::size_t, kMaxRank> dims{};
        std::array<double, kMaxRank> sp{};
        std::array<AxisKind, kMaxRank> kinds{};
        for (int a = 0; a < g.rank(); ++a) {
            dims[a] = a == w ? M : g.dim(a);
            sp[a] = g.spacing(a);
            kinds[a] = AxisKind::periodic;
        }
        eg = Grid(std::span<const std::size_t>(dims.data(), g.rank()), std::span<const double>(sp.data(), g.rank()),
                  std::span<const AxisKind>(kinds.data(), g.rank()));
        ext.assign(eg.size(), 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Index idx = g.unflat(i);
            Index e = idx;
            ext[eg.flat(e)] = f[i];
            if (idx[w] > 0 && idx[w] + 1 < N) {
                e[w] = M - idx[w];
                ext[eg.flat(e)] = -f[i];
            }
        }
        doubling = 2.0;
    }
    const ComplexField fh = fft_forward(eg, ext);
    std::vector<double> terms(eg.size());
    for (std::size_t i = 0; i < eg.size(); ++i) {
        const Index idx = eg.unflat(i);
        double k2 = 0.0;
        for (int a = 0; a < eg.rank(); ++a) k2 += k_second(eg, a, idx[a]);
        terms[i] = std::pow(1.0 + k2, -beta) * std::norm(fh[i]);
    }
    const double sum = pairwise_sum(terms);
    est.value = std::sqrt(eg.cell_volume() / static_cast<double>(eg.size()) * sum / doubling);
    return est;
}

InteriorHolderReport interior_holder_check(const Snapshot& snap, const RegionChain& chain, double alpha,
                                           double beta, const Region* near, bool estimate_exponents) {
    snap.validate();
    if (!snap.has_pressure()) fail(ErrorKind::precondition, "interior_holder_check: snapshot has no pressure");
    require(alpha > 1.0 / 3.0 && alpha < 1.0, "interior_holder_check: alpha must lie in (1/3, 1)");
    const Grid& g = snap.grid;
    InteriorHolderReport r;
    r.beta = beta;
    const VectorField p{*snap.pressure};
    r.pressure_holder = holder_norm(g, p, alpha, chain.q2);
    const double uh = holder_norm(g, snap.velocity, alpha, chain.qtilde);
    r.velocity_holder_squared = uh * uh;
    Region layer;
    if (near) {
        layer = *near;
    } else {
        std::vector<std::uint8_t> mask(g.size(), 0);
        for (std::size_t f = 0; f < g.size(); ++f) mask[f] = chain.qtilde.contains(f) && !chain.q1.contains(f);
        layer = Region(g, std::move(mask));
    }
    r.pressure_negative_norm = layer.empty() ? 0.0 : negative_sobolev_norm(g, *snap.pressure, beta, layer).value;
    const double denom = r.velocity_holder_squared + r.pressure_negative_norm;
    if (r.pressure_holder == 0.0 && denom == 0.0) {
        r.degenerate = true;
        r.ratio = 0.0;
        r.note = "0/0 degenerate";
    } else {
        r.ratio = denom > 0.0 ? r.pressure_holder / denom : std::numeric_limits<double>::infinity();
        r.note = "ratio is diagnostic only; the estimate's constant is not quantified";
    }
    if (estimate_exponents) {
        r.pressure_exponent = estimate_holder_exponent(g, p, chain.q2).exponent;
        r.velocity_exponent = estimate_holder_exponent(g, snap.velocity, chain.qtilde).exponent;
    }
    return r;
}

} // namespace onsager
