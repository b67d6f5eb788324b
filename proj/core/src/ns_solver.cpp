/// @file ns_solver.cpp
/// @brief MAC-grid Navier-Stokes: skew-symmetric advection, relaxed RK2, CN diffusion.

#include "onsager/ns_solver.hpp"
#include "onsager/boundary_flux.hpp"
#include "onsager/calculus.hpp"
#include "onsager/errors.hpp"
#include "onsager/fft.hpp"
#include "onsager/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

namespace onsager {

namespace {

struct Mac {
    std::size_t nx = 0, ny = 0, nv = 0;  // cells in x, cells in y, v rows
    double hx = 0.0, hy = 0.0;
    bool channel = false;

    explicit Mac(const Grid& g) {
        require(g.rank() == 2, "ns_solver: only 2D grids are supported");
        require(g.periodic(0), "ns_solver: axis 0 must be periodic");
        channel = !g.periodic(1);
        nx = g.dim(0);
        hx = g.spacing(0);
        hy = g.spacing(1);
        if (channel) {
            require(g.dim(1) >= 9, "ns_solver: a channel needs at least 9 wall-axis nodes");
            ny = g.dim(1) - 1;
            nv = ny + 1;
        } else {
            ny = g.dim(1);
            nv = ny;
        }
    }

    std::size_t wx(long i) const {
        const long n = static_cast<long>(nx);
        return static_cast<std::size_t>(((i % n) + n) % n);
    }
    std::size_t wy(long j) const {
        const long n = static_cast<long>(ny);
        return static_cast<std::size_t>(((j % n) + n) % n);
    }
    std::size_t ui(std::size_t i, std::size_t j) const { return i * ny + j; }
    std::size_t vi(std::size_t i, std::size_t j) const { return i * nv + j; }

    /// u with periodic wrap in x and either wrap or the no-slip ghost in y.
    double ug(const std::vector<double>& u, long i, long j) const {
        const std::size_t ii = wx(i);
        if (!channel) return u[ui(ii, wy(j))];
        if (j < 0) return -u[ui(ii, 0)];
        if (j >= static_cast<long>(ny)) return -u[ui(ii, ny - 1)];
        return u[ui(ii, static_cast<std::size_t>(j))];
    }
    double vg(const std::vector<double>& v, long i, long j) const {
        const std::size_t ii = wx(i);
        if (!channel) return v[vi(ii, wy(j))];
        return v[vi(ii, static_cast<std::size_t>(j))];
    }
    /// v rows that carry unknowns.
    std::size_t v_begin() const { return channel ? 1 : 0; }
    std::size_t v_end() const { return channel ? ny : nv; }

    Grid shape(std::size_t rows) const {
        const std::array<std::size_t, 2> d{nx, rows};
        const std::array<double, 2> h{1.0, 1.0};
        const std::array<AxisKind, 2> k{AxisKind::periodic, AxisKind::periodic};
        return Grid(d, h, k);
    }
    double lambda_x(std::size_t m) const {
        const double s = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(nx));
        return -4.0 * s * s / (hx * hx);
    }
    double lambda_y(std::size_t m) const {
        const double s = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(ny));
        return -4.0 * s * s / (hy * hy);
    }
};

struct Faces {
    std::vector<double> u, v;
};

double dot(const Faces& a, const Faces& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.u.size(); ++k) s += a.u[k] * b.u[k];
    for (std::size_t k = 0; k < a.v.size(); ++k) s += a.v[k] * b.v[k];
    return s;
}

void axpy(Faces& y, double a, const Faces& x) {
    for (std::size_t k = 0; k < y.u.size(); ++k) y.u[k] += a * x.u[k];
    for (std::size_t k = 0; k < y.v.size(); ++k) y.v[k] += a * x.v[k];
}

// Tendency -(skew advection). Each direction pairs neighbours through one shared
// advecting velocity, so <w, advect(w)> = 0 for any w.
Faces advect(const Mac& m, const Faces& w) {
    Faces t{std::vector<double>(w.u.size(), 0.0), std::vector<double>(w.v.size(), 0.0)};
    const auto& u = w.u;
    const auto& v = w.v;
    for (std::size_t i = 0; i < m.nx; ++i) {
        const long I = static_cast<long>(i);
        for (std::size_t j = 0; j < m.ny; ++j) {
            const long J = static_cast<long>(j);
            const double uc = u[m.ui(i, j)];
            const double ue = m.ug(u, I + 1, J), uw = m.ug(u, I - 1, J);
            const double un = m.ug(u, I, J + 1), us = m.ug(u, I, J - 1);
            const double wxp = 0.5 * (uc + ue), wxm = 0.5 * (uw + uc);
            const double wyp = 0.5 * (m.vg(v, I - 1, J + 1) + m.vg(v, I, J + 1));
            const double wym = 0.5 * (m.vg(v, I - 1, J) + m.vg(v, I, J));
            t.u[m.ui(i, j)] = -((wxp * ue - wxm * uw) / (2.0 * m.hx) + (wyp * un - wym * us) / (2.0 * m.hy));
        }
        for (std::size_t j = m.v_begin(); j < m.v_end(); ++j) {
            const long J = static_cast<long>(j);
            const double vc = v[m.vi(i, j)];
            const double ve = m.vg(v, I + 1, J), vw = m.vg(v, I - 1, J);
            const double vn = m.vg(v, I, J + 1), vs = m.vg(v, I, J - 1);
            const double wxp = 0.5 * (m.ug(u, I + 1, J - 1) + m.ug(u, I + 1, J));
            const double wxm = 0.5 * (m.ug(u, I, J - 1) + m.ug(u, I, J));
            const double wyp = 0.5 * (vc + vn), wym = 0.5 * (vs + vc);
            t.v[m.vi(i, j)] = -((wxp * ve - wxm * vw) / (2.0 * m.hx) + (wyp * vn - wym * vs) / (2.0 * m.hy));
        }
    }
    return t;
}

std::vector<double> cell_divergence(const Mac& m, const Faces& w) {
    std::vector<double> d(m.nx * m.ny);
    for (std::size_t i = 0; i < m.nx; ++i)
        for (std::size_t j = 0; j < m.ny; ++j) {
            const double du = (w.u[m.ui(m.wx(static_cast<long>(i) + 1), j)] - w.u[m.ui(i, j)]) / m.hx;
            const std::size_t jn = m.channel ? j + 1 : m.wy(static_cast<long>(j) + 1);
            const double dv = (w.v[m.vi(i, jn)] - w.v[m.vi(i, j)]) / m.hy;
            d[i * m.ny + j] = du + dv;
        }
    return d;
}

// Thomas algorithm for a real tridiagonal matrix and complex right-hand side.
void thomas(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c,
            std::vector<Complex>& x) {
    const std::size_t n = x.size();
    std::vector<double> cp(n);
    double beta = b[0];
    cp[0] = c[0] / beta;
    x[0] /= beta;
    for (std::size_t k = 1; k < n; ++k) {
        beta = b[k] - a[k] * cp[k - 1];
        cp[k] = c[k] / beta;
        x[k] = (x[k] - a[k] * x[k - 1]) / beta;
    }
    for (std::size_t k = n - 1; k-- > 0;) x[k] -= cp[k] * x[k + 1];
}

// Solves the discrete Neumann Poisson problem D G phi = rhs on cells.
std::vector<double> poisson(const Mac& m, const std::vector<double>& rhs) {
    const Grid shape = m.shape(m.ny);
    ComplexField data(rhs.begin(), rhs.end());
    if (!m.channel) {
        data = fft_forward(shape, data);
        for (std::size_t i = 0; i < m.nx; ++i)
            for (std::size_t j = 0; j < m.ny; ++j) {
                const double lam = m.lambda_x(i) + m.lambda_y(j);
                data[i * m.ny + j] = lam == 0.0 ? Complex(0.0, 0.0) : data[i * m.ny + j] / lam;
            }
        return fft_inverse_real(shape, data);
    }
    fft_axis(shape, data, 0, -1);
    const double iy2 = 1.0 / (m.hy * m.hy);
    std::vector<Complex> line(m.ny);
    std::vector<double> a(m.ny, iy2), b(m.ny), c(m.ny, iy2);
    a[0] = 0.0;
    c[m.ny - 1] = 0.0;
    for (std::size_t i = 0; i < m.nx; ++i) {
        for (std::size_t j = 0; j < m.ny; ++j) line[j] = data[i * m.ny + j];
        const double lam = m.lambda_x(i);
        if (i == 0) {
            // Singular mode: pin phi_0 = 0 and march the first ny - 1 rows.
            std::vector<Complex> phi(m.ny);
            phi[0] = 0.0;
            phi[1] = line[0] / iy2;
            for (std::size_t j = 1; j + 1 < m.ny; ++j) phi[j + 1] = line[j] / iy2 + 2.0 * phi[j] - phi[j - 1];
            line = phi;
        } else {
            for (std::size_t j = 0; j < m.ny; ++j) b[j] = -2.0 * iy2 + lam;
            b[0] = b[m.ny - 1] = -iy2 + lam;
            thomas(a, b, c, line);
        }
        for (std::size_t j = 0; j < m.ny; ++j) data[i * m.ny + j] = line[j];
    }
    fft_axis(shape, data, 0, +1);
    std::vector<double> out(rhs.size());
    const double inv = 1.0 / static_cast<double>(m.nx);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = data[k].real() * inv;
    return out;
}

void project(const Mac& m, Faces& w) {
    const std::vector<double> phi = poisson(m, cell_divergence(m, w));
    auto P = [&](std::size_t i, std::size_t j) { return phi[i * m.ny + j]; };
    for (std::size_t i = 0; i < m.nx; ++i) {
        const std::size_t im = m.wx(static_cast<long>(i) - 1);
        for (std::size_t j = 0; j < m.ny; ++j) w.u[m.ui(i, j)] -= (P(i, j) - P(im, j)) / m.hx;
        for (std::size_t j = m.v_begin(); j < m.v_end(); ++j) {
            const std::size_t jm = m.channel ? j - 1 : m.wy(static_cast<long>(j) - 1);
            w.v[m.vi(i, j)] -= (P(i, j) - P(i, jm)) / m.hy;
        }
    }
}

Faces laplacian(const Mac& m, const Faces& w) {
    Faces L{std::vector<double>(w.u.size(), 0.0), std::vector<double>(w.v.size(), 0.0)};
    const double ix2 = 1.0 / (m.hx * m.hx), iy2 = 1.0 / (m.hy * m.hy);
    for (std::size_t i = 0; i < m.nx; ++i) {
        const long I = static_cast<long>(i);
        for (std::size_t j = 0; j < m.ny; ++j) {
            const long J = static_cast<long>(j);
            const double c = w.u[m.ui(i, j)];
            L.u[m.ui(i, j)] = (m.ug(w.u, I + 1, J) - 2.0 * c + m.ug(w.u, I - 1, J)) * ix2 +
                              (m.ug(w.u, I, J + 1) - 2.0 * c + m.ug(w.u, I, J - 1)) * iy2;
        }
        for (std::size_t j = m.v_begin(); j < m.v_end(); ++j) {
            const long J = static_cast<long>(j);
            const double c = w.v[m.vi(i, j)];
            L.v[m.vi(i, j)] = (m.vg(w.v, I + 1, J) - 2.0 * c + m.vg(w.v, I - 1, J)) * ix2 +
                              (m.vg(w.v, I, J + 1) - 2.0 * c + m.vg(w.v, I, J - 1)) * iy2;
        }
    }
    return L;
}

double dirichlet_form(const Mac& m, const Faces& w) {
    return -dot(w, laplacian(m, w)) * m.hx * m.hy;
}

// Solves (I - theta L) x = rhs for one face family.
std::vector<double> implicit_solve(const Mac& m, const std::vector<double>& rhs, bool is_u, double theta) {
    const std::size_t rows = is_u ? m.ny : m.nv;
    const Grid shape = m.shape(rows);
    ComplexField data(rhs.begin(), rhs.end());
    if (!m.channel) {
        data = fft_forward(shape, data);
        for (std::size_t i = 0; i < m.nx; ++i)
            for (std::size_t j = 0; j < rows; ++j) data[i * rows + j] /= 1.0 - theta * (m.lambda_x(i) + m.lambda_y(j));
        return fft_inverse_real(shape, data);
    }
    fft_axis(shape, data, 0, -1);
    const double iy2 = 1.0 / (m.hy * m.hy);
    // u: rows 0..ny-1 with the odd ghost; v: interior rows 1..ny-1, walls fixed at 0.
    const std::size_t lo = is_u ? 0 : 1, n = is_u ? m.ny : m.ny - 1;
    std::vector<double> a(n, -theta * iy2), b(n), c(n, -theta * iy2);
    a[0] = 0.0;
    c[n - 1] = 0.0;
    std::vector<Complex> line(n);
    for (std::size_t i = 0; i < m.nx; ++i) {
        const double lam = m.lambda_x(i);
        for (std::size_t k = 0; k < n; ++k) b[k] = 1.0 - theta * (lam - 2.0 * iy2);
        if (is_u) {
            b[0] = 1.0 - theta * (lam - 3.0 * iy2);
            b[n - 1] = b[0];
        }
        for (std::size_t k = 0; k < n; ++k) line[k] = data[i * rows + lo + k];
        thomas(a, b, c, line);
        for (std::size_t k = 0; k < n; ++k) data[i * rows + lo + k] = line[k];
        if (!is_u) data[i * rows] = data[i * rows + rows - 1] = 0.0;
    }
    fft_axis(shape, data, 0, +1);
    std::vector<double> out(rhs.size());
    const double inv = 1.0 / static_cast<double>(m.nx);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = data[k].real() * inv;
    return out;
}

// Crank-Nicolson substep of length 2 * theta / nu; returns the energy it removes
// exactly, nu * tau * ||grad w_mid||^2.
double diffuse(const Mac& m, Faces& w, double theta) {
    Faces rhs = w;
    axpy(rhs, theta, laplacian(m, w));
    Faces next{implicit_solve(m, rhs.u, true, theta), implicit_solve(m, rhs.v, false, theta)};
    Faces mid = w;
    axpy(mid, 1.0, next);
    for (double& x : mid.u) x *= 0.5;
    for (double& x : mid.v) x *= 0.5;
    w = std::move(next);
    return 2.0 * theta * dirichlet_form(m, mid);
}

Faces projected_tendency(const Mac& m, const Faces& w) {
    Faces k = advect(m, w);
    project(m, k);
    return k;
}

// Two-stage RK with a relaxation factor that restores the exact energy of the
// stage input (the advection operator is skew, so the exact flow conserves it).
void advect_step(const Mac& m, Faces& w, double dt) {
    const Faces k1 = projected_tendency(m, w);
    Faces mid = w;
    axpy(mid, dt, k1);
    const Faces k2 = projected_tendency(m, mid);
    Faces d = k1;
    axpy(d, 1.0, k2);
    for (double& x : d.u) x *= 0.5 * dt;
    for (double& x : d.v) x *= 0.5 * dt;
    const double ud = dot(w, d), dd = dot(d, d);
    double gamma = 1.0;
    if (dd > 0.0) {
        const double g = -2.0 * ud / dd;
        if (std::isfinite(g) && g > 0.0 && g < 2.0) gamma = g;
        else gamma = 2.0 * ud + dd <= 0.0 ? 1.0 : 0.0;
    }
    axpy(w, gamma, d);
}

Faces faces_of(const SolverState& s) { return Faces{s.u, s.v}; }

double max_face_speed(const Faces& w) {
    double m = 0.0;
    for (double x : w.u) m = std::max(m, std::abs(x));
    for (double x : w.v) m = std::max(m, std::abs(x));
    return m;
}

void check_limits(const Mac& m, const Faces& w, const SolverConfig& cfg, double dt) {
    require(cfg.cfl_limit > 0.0 && cfg.cfl_limit <= 0.5, "ns_solver: cfl_limit must lie in (0, 0.5]");
    require(cfg.nu >= 0.0, "ns_solver: viscosity must be nonnegative");
    const double h = std::min(m.hx, m.hy);
    const double umax = max_face_speed(w);
    if (umax * dt / h > cfg.cfl_limit) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "CFL violation: dt = %.6g exceeds the admissible advective dt = %.6g", dt,
                      cfg.cfl_limit * h / umax);
        fail(ErrorKind::precondition, buf);
    }
    if (cfg.nu * dt / (h * h) > 0.25) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "CFL violation: dt = %.6g exceeds the admissible diffusive dt = %.6g", dt,
                      0.25 * h * h / cfg.nu);
        fail(ErrorKind::precondition, buf);
    }
}

SolverState state_from_faces(const Grid& g, Faces w, double time) {
    SolverState s;
    s.grid = g;
    s.time = time;
    s.u = std::move(w.u);
    s.v = std::move(w.v);
    return s;
}

} // namespace

double DissipationSeries::max_leray_residual() const {
    double r = -std::numeric_limits<double>::infinity();
    for (double x : leray_residual) r = std::max(r, x);
    return r;
}

double mac_energy(const SolverState& state) {
    const Mac m(state.grid);
    const Faces w = faces_of(state);
    return 0.5 * dot(w, w) * m.hx * m.hy;
}

double mac_gradient_norm(const SolverState& state) {
    const Mac m(state.grid);
    return dirichlet_form(m, faces_of(state));
}

double mac_max_divergence(const SolverState& state) {
    const Mac m(state.grid);
    double d = 0.0;
    for (double x : cell_divergence(m, faces_of(state))) d = std::max(d, std::abs(x));
    return d;
}

void mac_project(SolverState& state) {
    const Mac m(state.grid);
    Faces w = faces_of(state);
    project(m, w);
    state.u = std::move(w.u);
    state.v = std::move(w.v);
}

double mac_l2_error(const SolverState& state, const PointVelocity& exact) {
    const Mac m(state.grid);
    double s = 0.0;
    for (std::size_t i = 0; i < m.nx; ++i) {
        for (std::size_t j = 0; j < m.ny; ++j) {
            const Vec x{static_cast<double>(i) * m.hx, (static_cast<double>(j) + 0.5) * m.hy, 0.0};
            const double e = state.u[m.ui(i, j)] - exact(x)[0];
            s += e * e;
        }
        for (std::size_t j = 0; j < m.nv; ++j) {
            const Vec x{(static_cast<double>(i) + 0.5) * m.hx, static_cast<double>(j) * m.hy, 0.0};
            const double e = state.v[m.vi(i, j)] - exact(x)[1];
            s += e * e;
        }
    }
    return std::sqrt(s * m.hx * m.hy);
}

SolverState initial_state(const SolverConfig& config) {
    const Grid& g = config.grid;
    const Mac m(g);
    Faces w{std::vector<double>(m.nx * m.ny, 0.0), std::vector<double>(m.nx * m.nv, 0.0)};
    Snapshot nodes;
    PointVelocity exact;
    if (config.initial_field) {
        nodes = *config.initial_field;
        nodes.validate();
        require(nodes.grid == g, "ns_solver: initial field grid differs from the solver grid");
    } else {
        nodes = generate(config.initial, g);
        exact = analytic_velocity(config.initial, g);
    }
    require(nodes.components() == 2, "ns_solver: initial field must have 2 components");
    if (m.channel) {
        double top = 0.0, wall = 0.0;
        for (std::size_t f = 0; f < g.size(); ++f) {
            const std::size_t j = g.unflat(f)[1];
            const double s = std::abs(nodes.velocity[0][f]) + std::abs(nodes.velocity[1][f]);
            top = std::max(top, s);
            if (j == 0 || j + 1 == g.dim(1)) wall = std::max(wall, s);
        }
        if (wall > 1e-12 * std::max(1.0, top))
            fail(ErrorKind::precondition, "ns_solver: channel runs require no-slip initial data (u = 0 on walls)");
    }
    for (std::size_t i = 0; i < m.nx; ++i) {
        for (std::size_t j = 0; j < m.ny; ++j) {
            if (exact) {
                w.u[m.ui(i, j)] = exact(Vec{static_cast<double>(i) * m.hx, (static_cast<double>(j) + 0.5) * m.hy, 0.0})[0];
            } else {
                const std::size_t jn = m.channel ? j + 1 : m.wy(static_cast<long>(j) + 1);
                w.u[m.ui(i, j)] = 0.5 * (nodes.velocity[0][g.flat({i, j, 0})] + nodes.velocity[0][g.flat({i, jn, 0})]);
            }
        }
        for (std::size_t j = m.v_begin(); j < m.v_end(); ++j) {
            if (exact) {
                w.v[m.vi(i, j)] = exact(Vec{(static_cast<double>(i) + 0.5) * m.hx, static_cast<double>(j) * m.hy, 0.0})[1];
            } else {
                const std::size_t ip = m.wx(static_cast<long>(i) + 1);
                w.v[m.vi(i, j)] = 0.5 * (nodes.velocity[1][g.flat({i, j, 0})] + nodes.velocity[1][g.flat({ip, j, 0})]);
            }
        }
    }
    project(m, w);
    return state_from_faces(g, std::move(w), nodes.time);
}

SolverState step(const SolverState& state, const SolverConfig& config, double dt) {
    const Mac m(state.grid);
    require(dt > 0.0, "ns_solver: dt must be positive");
    Faces w = faces_of(state);
    check_limits(m, w, config, dt);
    const double theta = 0.25 * config.nu * dt;
    double removed = 0.0;
    if (config.nu > 0.0) removed += diffuse(m, w, theta);
    advect_step(m, w, dt);
    if (config.nu > 0.0) removed += diffuse(m, w, theta);
    project(m, w);
    SolverState next = state_from_faces(state.grid, std::move(w), state.time + dt);
    next.steps = state.steps + 1;
    next.dissipated = state.dissipated + removed;
    return next;
}

Snapshot to_snapshot(const SolverState& state) {
    const Grid& g = state.grid;
    const Mac m(g);
    Snapshot s;
    s.grid = g;
    s.time = state.time;
    s.velocity.assign(2, ScalarField(g.size(), 0.0));
    for (std::size_t i = 0; i < g.dim(0); ++i) {
        const std::size_t im = m.wx(static_cast<long>(i) - 1);
        for (std::size_t j = 0; j < g.dim(1); ++j) {
            const std::size_t f = g.flat({i, j, 0});
            if (m.channel) {
                const bool wall = j == 0 || j + 1 == g.dim(1);
                s.velocity[0][f] = wall ? 0.0 : 0.5 * (state.u[m.ui(i, j - 1)] + state.u[m.ui(i, j)]);
            } else {
                s.velocity[0][f] = 0.5 * (state.u[m.ui(i, m.wy(static_cast<long>(j) - 1))] + state.u[m.ui(i, j)]);
            }
            s.velocity[1][f] = 0.5 * (state.v[m.vi(im, j)] + state.v[m.vi(i, j)]);
        }
    }
    s.tags.impermeable = m.channel;
    s.tags.metadata["generator"] = "ns_solver";
    return s;
}

RunResult run(const SolverConfig& config) {
    require(config.t_end > 0.0 && config.dt > 0.0, "ns_solver: t_end and dt must be positive");
    require(config.record_stride >= 1, "ns_solver: record_stride must be >= 1");
    const std::size_t nsteps = static_cast<std::size_t>(std::ceil(config.t_end / config.dt - 1e-9));
    const double dt = config.t_end / static_cast<double>(nsteps);
    RunResult r;
    SolverState s = initial_state(config);
    const double t0 = s.time;
    const double e0 = mac_energy(s);
    auto record = [&](const SolverState& st) {
        const double e = mac_energy(st);
        r.series.times.push_back(st.time);
        r.series.kinetic_energy.push_back(e);
        r.series.cumulative_dissipation.push_back(st.dissipated);
        r.series.leray_residual.push_back(e + st.dissipated - e0);
        r.series.gradient_norm.push_back(mac_gradient_norm(st));
        r.series.divergence.push_back(mac_max_divergence(st));
    };
    auto snapshot = [&](const SolverState& st) {
        Snapshot snap = to_snapshot(st);
        if (config.with_pressure) snap.pressure = solve_pressure(snap).pressure;
        r.trajectory.snapshots.push_back(std::move(snap));
    };
    record(s);
    snapshot(s);
    for (std::size_t n = 1; n <= nsteps; ++n) {
        s = step(s, config, dt);
        s.time = t0 + static_cast<double>(n) * dt;
        record(s);
        if (n % config.record_stride == 0) snapshot(s);
    }
    r.trajectory.dt = dt * static_cast<double>(config.record_stride);
    r.final_state = std::move(s);
    return r;
}

DissipationSweep dissipation_sweep(const SolverConfig& base, const std::vector<double>& nus, double t_star) {
    require(!nus.empty(), "dissipation_sweep: empty viscosity ladder");
    for (std::size_t k = 1; k < nus.size(); ++k)
        require(nus[k] < nus[k - 1], "dissipation_sweep: viscosities must be strictly decreasing");
    require(t_star > 0.0, "dissipation_sweep: t_star must be positive");
    const Mac m(base.grid);
    DissipationSweep sw;
    sw.t_star = t_star;
    for (double nu : nus) {
        require(nu > 0.0, "dissipation_sweep: viscosities must be positive");
        SolverConfig cfg = base;
        cfg.nu = nu;
        cfg.t_end = t_star;
        cfg.with_pressure = false;
        cfg.record_stride = std::numeric_limits<std::size_t>::max();
        const RunResult res = run(cfg);
        SweepEntry e;
        e.nu = nu;
        e.dissipation = res.series.cumulative_dissipation.back();
        e.layer_width = std::sqrt(nu * t_star);
        e.under_resolved = m.channel && e.layer_width < 4.0 * m.hy;
        e.max_leray_residual = res.series.max_leray_residual();
        e.series = res.series;
        sw.entries.push_back(e);
    }
    std::vector<double> d;
    for (const auto& e : sw.entries)
        if (!e.under_resolved) d.push_back(e.dissipation);
    if (d.empty()) fail(ErrorKind::precondition, "dissipation_sweep: empty admissible ladder (every entry under-resolved)");
    if (std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0; })) {
        sw.monotone = sw.halved = sw.positive = true;
        sw.verdict = "all zero";
        return sw;
    }
    if (d.size() < 2) {
        sw.verdict = "inconclusive (fewer than 2 resolved entries)";
        return sw;
    }
    sw.monotone = true;
    for (std::size_t k = 1; k < d.size(); ++k) sw.monotone = sw.monotone && d[k] < d[k - 1];
    sw.halved = d.back() <= 0.5 * d.front();
    sw.positive = sw.monotone && sw.halved;
    sw.verdict = sw.positive ? "dissipation decreasing with viscosity (no anomalous dissipation)"
                             : "dissipation not decreasing with viscosity";
    return sw;
}

ViscousFluxReport viscous_flux_criterion(const std::vector<ViscousRun>& runs, const std::vector<double>& etas) {
    require(runs.size() >= 2, "viscous_flux_criterion: need at least 2 viscosities");
    require(etas.size() >= 3, "viscous_flux_criterion: need at least 3 shells");
    const Grid& g = runs.front().trajectory.grid();
    for (const auto& r : runs)
        if (r.trajectory.grid() != g) fail(ErrorKind::precondition, "viscous_flux_criterion: geometry mismatch between runs");
    const Domain domain = Domain::from_grid(g);
    if (!domain.is_channel()) fail(ErrorKind::precondition, "viscous_flux_criterion: geometry mismatch (requires a channel)");

    std::vector<std::size_t> order(runs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return runs[a].nu > runs[b].nu; });

    ViscousFluxReport rep;
    rep.etas = etas;
    for (std::size_t k : order) {
        rep.nus.push_back(runs[k].nu);
        std::vector<double> row;
        for (double eta : etas) row.push_back(shell_flux(runs[k].trajectory, eta, domain));
        rep.flux.push_back(std::move(row));
    }
    const std::size_t n = rep.nus.size();
    for (std::size_t e = 0; e < etas.size(); ++e) {
        bool dec = true, inc = true;
        for (std::size_t k = 1; k < n; ++k) {
            dec = dec && rep.flux[k][e] < rep.flux[k - 1][e];
            inc = inc && rep.flux[k][e] > rep.flux[k - 1][e];
        }
        rep.nu_trend.push_back(dec ? "decreasing" : inc ? "increasing" : "mixed");
        const double n1 = rep.nus[n - 1], n2 = rep.nus[n - 2];
        const double f1 = rep.flux[n - 1][e], f2 = rep.flux[n - 2][e];
        rep.extrapolated.push_back(f1 - n1 * (f2 - f1) / (n2 - n1));
    }
    std::vector<double> mags;
    for (double x : rep.extrapolated) mags.push_back(std::abs(x));
    rep.eta_trend_ok = shell_trend_ok(mags);
    rep.positive = rep.eta_trend_ok;
    rep.verdict = rep.positive ? "boundary flux vanishes along the shell ladder"
                               : "hypotheses fail (shell flux)";
    return rep;
}

} // namespace onsager
