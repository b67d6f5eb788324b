/// @file boundary_flux.cpp
/// @brief Shell fluxes, global balance, verdict logic and modulus envelope.

#include "onsager/boundary_flux.hpp"
#include "onsager/calculus.hpp"
#include "onsager/commutator.hpp"
#include "onsager/errors.hpp"
#include "onsager/fit.hpp"
#include "onsager/holder.hpp"
#include "onsager/kernels.hpp"
#include "onsager/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace onsager {

namespace {

ScalarField normal_velocity(const Domain& domain, const Snapshot& s, const ScalarField& sign) {
    const int w = domain.wall_axis();
    ScalarField un(s.grid.size());
    for (std::size_t f = 0; f < un.size(); ++f) un[f] = sign[f] * s.velocity[w][f];
    return un;
}

ScalarField bernoulli(const Snapshot& s) {
    ScalarField b = kinetic_density(s.velocity);
    if (s.pressure)
        for (std::size_t f = 0; f < b.size(); ++f) b[f] += (*s.pressure)[f];
    return b;
}

std::size_t time_index(const Trajectory& tr, double t) {
    for (std::size_t k = 0; k < tr.size(); ++k)
        if (std::abs(tr.snapshots[k].time - t) <= 1e-9 * std::max(1.0, std::abs(t))) return k;
    fail(ErrorKind::precondition, "global_balance: time " + std::to_string(t) + " is not a snapshot time");
}

// Trapezoid in time over snapshot indices [i1, i2] with step `stride`.
double trapezoid_range(const std::vector<double>& v, std::size_t i1, std::size_t i2, double dt, std::size_t stride) {
    if (i2 <= i1) return 0.0;
    std::vector<double> terms;
    for (std::size_t k = i1; k <= i2; k += stride) {
        const double w = (k == i1 || k == i2) ? 0.5 : 1.0;
        terms.push_back(w * v[k]);
    }
    return dt * static_cast<double>(stride) * pairwise_sum(terms);
}

} // namespace

ShellSpec make_shell_spec(const Domain& domain, double eta, double eta0) {
    require(domain.is_channel(), "shell: no boundary on a fully periodic domain");
    require(eta > 0.0 && eta < eta0 && eta0 < domain.half_width(),
            "shell: need 0 < eta < eta0 < channel half width");
    ShellSpec s;
    s.eta = eta;
    s.eta0 = eta0;
    s.lower = 0.25 * eta;
    s.upper = 0.5 * eta;
    const Grid& g = domain.grid();
    const int w = domain.wall_axis();
    for (std::size_t j = 1; j + 1 < g.dim(w); ++j) {
        const double y = g.coord(w, j);
        if (y > s.lower && y < s.upper) ++s.planes;
    }
    if (s.planes < 3)
        fail(ErrorKind::precondition, "shell under-resolved: " + std::to_string(s.planes) +
                                          " planes in eta/4 < d < eta/2 for eta = " + std::to_string(eta));
    return s;
}

bool shell_trend_ok(const std::vector<double>& fluxes) {
    require(!fluxes.empty(), "shell_trend_ok: empty ladder");
    if (std::all_of(fluxes.begin(), fluxes.end(), [](double x) { return x == 0.0; })) return true;
    bool mono = true;
    for (std::size_t k = 1; k < fluxes.size(); ++k) mono = mono && fluxes[k] <= 1.1 * fluxes[k - 1];
    return mono && fluxes.back() <= 0.25 * fluxes.front();
}

BoundaryCutoff boundary_cutoff(const Domain& domain, double eta) {
    const Grid& g = domain.grid();
    BoundaryCutoff c;
    c.grad.assign(g.rank(), ScalarField(g.size(), 0.0));
    if (!domain.is_channel()) {
        c.psi.assign(g.size(), 1.0);
        return c;
    }
    require(eta > 0.0, "boundary_cutoff: eta must be positive");
    const ScalarField d = distance_field(domain);
    const ScalarField sign = normal_sign_field(domain);
    const int w = domain.wall_axis();
    c.psi.resize(g.size());
    for (std::size_t f = 0; f < g.size(); ++f) {
        c.psi[f] = smooth_step(d[f] / eta);
        c.grad[w][f] = -smooth_step_derivative(d[f] / eta) / eta * sign[f];
    }
    return c;
}

double shell_flux(const Trajectory& traj, double eta, const Domain& domain) {
    traj.validate();
    if (!traj.has_pressure()) fail(ErrorKind::precondition, "shell_flux: trajectory carries no pressure");
    const ShellSpec spec = make_shell_spec(domain, eta, std::nextafter(domain.half_width(), 0.0));
    const Grid& g = domain.grid();
    const ScalarField d = distance_field(domain);
    const ScalarField sign = normal_sign_field(domain);
    std::vector<std::size_t> shell;
    for (std::size_t f = 0; f < g.size(); ++f)
        if (d[f] > spec.lower && d[f] < spec.upper) shell.push_back(f);
    std::vector<double> per(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const Snapshot& s = traj.snapshots[k];
        const ScalarField b = bernoulli(s);
        const ScalarField un = normal_velocity(domain, s, sign);
        std::vector<double> terms;
        terms.reserve(shell.size());
        for (std::size_t f : shell) terms.push_back(std::abs(b[f] * un[f]) * g.cell_volume());
        per[k] = pairwise_sum(terms);
    }
    const double integral = traj.size() == 1 ? per[0] : trapezoid_range(per, 0, traj.size() - 1, traj.dt, 1);
    return integral / eta;
}

GlobalBalanceReport global_balance(const Trajectory& traj, double eta, double t1, double t2, const Domain& domain) {
    traj.validate();
    const std::size_t i1 = time_index(traj, t1), i2 = time_index(traj, t2);
    require(i1 <= i2, "global_balance: t1 must not exceed t2");
    if (domain.is_channel()) make_shell_spec(domain, eta, std::nextafter(domain.half_width(), 0.0));
    const Grid& g = domain.grid();
    const BoundaryCutoff cut = boundary_cutoff(domain, eta);
    GlobalBalanceReport r;
    auto weighted_energy = [&](const Snapshot& s) {
        ScalarField e = kinetic_density(s.velocity);
        for (std::size_t f = 0; f < e.size(); ++f) e[f] *= cut.psi[f];
        return integrate(g, e);
    };
    r.e1 = weighted_energy(traj.snapshots[i1]);
    r.e2 = weighted_energy(traj.snapshots[i2]);
    std::vector<double> per(traj.size(), 0.0);
    if (domain.is_channel()) {
        if (!traj.has_pressure()) fail(ErrorKind::precondition, "global_balance: trajectory carries no pressure");
        const ScalarField d = distance_field(domain);
        const ScalarField sign = normal_sign_field(domain);
        for (std::size_t k = i1; k <= i2; ++k) {
            const Snapshot& s = traj.snapshots[k];
            const ScalarField b = bernoulli(s);
            const ScalarField un = normal_velocity(domain, s, sign);
            ScalarField q(g.size());
            for (std::size_t f = 0; f < q.size(); ++f)
                q[f] = b[f] * un[f] * smooth_step_derivative(d[f] / eta) / eta;
            per[k] = integrate(g, q);
        }
    }
    r.boundary_term = trapezoid_range(per, i1, i2, traj.dt, 1);
    r.residual = (r.e2 - r.e1) + r.boundary_term;
    // Time-quadrature budget from a doubled step, plus round-off on the energies.
    double coarse = r.boundary_term;
    if ((i2 - i1) % 2 == 0 && i2 > i1) coarse = trapezoid_range(per, i1, i2, traj.dt, 2);
    r.budget = std::abs(coarse - r.boundary_term) / 3.0 +
               64.0 * std::numeric_limits<double>::epsilon() * (std::abs(r.e1) + std::abs(r.e2));
    return r;
}

ConservationVerdict conservation_verdict(const Trajectory& traj, const std::vector<double>& etas,
                                         const Domain& domain, const VerdictOptions& opts) {
    traj.validate();
    require(etas.size() >= 3, "conservation_verdict: need a ladder of at least 3 shells");
    for (std::size_t k = 1; k < etas.size(); ++k)
        require(etas[k] < etas[k - 1], "conservation_verdict: eta ladder must be decreasing");
    if (!traj.has_pressure()) fail(ErrorKind::precondition, "conservation_verdict: trajectory carries no pressure");
    const Grid& g = domain.grid();
    ConservationVerdict v;
    v.etas = etas;

    // (a) shell flux trend and (c) near-boundary pressure norms.
    if (domain.is_channel()) {
        const double eta0 = opts.eta0 > 0.0 ? opts.eta0 : 0.9 * domain.half_width();
        const ScalarField d = distance_field(domain);
        for (double eta : etas) {
            make_shell_spec(domain, eta, eta0);
            v.shell_fluxes.push_back(shell_flux(traj, eta, domain));
            std::vector<std::uint8_t> mask(g.size());
            for (std::size_t f = 0; f < g.size(); ++f) mask[f] = d[f] < eta ? 1 : 0;
            const Region layer(g, std::move(mask));
            double nrm = 0.0;
            for (const Snapshot& s : traj.snapshots) {
                // Gauge: the verdict must not see a constant shift of p.
                ScalarField p = *s.pressure;
                const double mean = integrate(g, p) / integrate(g, ScalarField(g.size(), 1.0));
                for (double& x : p) x -= mean;
                nrm = std::max(nrm, negative_sobolev_norm(g, p, opts.beta, layer).value);
            }
            v.pressure_norms.push_back(nrm);
        }
    } else {
        v.shell_fluxes.assign(etas.size(), 0.0);
        v.pressure_norms.assign(etas.size(), 0.0);
    }
    v.shell_trend_ok = shell_trend_ok(v.shell_fluxes);
    v.pressure_bounded = true;
    for (double x : v.pressure_norms)
        v.pressure_bounded = v.pressure_bounded && std::isfinite(x) && x <= 2.0 * v.pressure_norms.front() + 1e-300;

    // (b) interior regularity away from the largest shell.
    Region interior = domain.is_channel() ? Region::slab(g, domain.wall_axis(), 0.5 * etas.front()) : Region::all(g);
    double alpha = 1.0;
    bool assessable = true;
    try {
        for (const Snapshot* s : {&traj.snapshots.front(), &traj.snapshots.back()})
            alpha = std::min(alpha, estimate_holder_exponent(g, s->velocity, interior).exponent);
    } catch (const Error&) {
        assessable = false;
    }
    v.interior_exponent = alpha;
    v.interior_ok = assessable && alpha > 1.0 / 3.0;

    // (d) energy constancy between the first and last snapshots.
    const double E1 = energy(traj.snapshots.front()), E2 = energy(traj.snapshots.back());
    v.energy_drift = E1 > 0.0 ? std::abs(E2 - E1) / E1 : std::abs(E2 - E1);
    v.energy_conserved = v.energy_drift <= opts.energy_tolerance;

    if (!v.shell_trend_ok) v.failed.push_back("shell flux");
    if (!v.interior_ok) v.failed.push_back(assessable ? "interior regularity" : "interior regularity (not assessable)");
    if (!v.pressure_bounded) v.failed.push_back("boundary pressure");

    if (!v.failed.empty()) {
        std::string list;
        for (const auto& f : v.failed) list += (list.empty() ? "" : ", ") + f;
        v.verdict = "hypotheses fail (" + list + ")";
        v.exit_code = 3;
    } else if (v.energy_conserved) {
        v.verdict = "hypotheses consistent and energy conserved";
        v.exit_code = 0;
    } else {
        v.verdict = "hypotheses consistent and energy NOT conserved (flag: discretization or hypothesis failure)";
        v.exit_code = 2;
    }
    return v;
}

ModulusReport modulus_check(const Trajectory& traj, double gamma, const Domain& domain, double tolerance) {
    traj.validate();
    require(domain.is_channel(), "modulus_check: requires a channel");
    require(gamma > 0.0 && gamma < domain.half_width(), "modulus_check: gamma must lie in (0, half width)");
    const Grid& g = domain.grid();
    const int w = domain.wall_axis();
    const std::size_t N = g.dim(w);
    const ScalarField sign = normal_sign_field(domain);
    ModulusReport r;
    r.gamma = gamma;
    r.tolerance = tolerance;
    std::vector<double> env;
    for (std::size_t c = 0; c < N && g.coord(w, c) < gamma; ++c) {
        r.distances.push_back(g.coord(w, c));
        env.push_back(0.0);
    }
    for (const Snapshot& s : traj.snapshots) {
        for (std::size_t f = 0; f < g.size(); ++f) {
            const std::size_t j = g.unflat(f)[w];
            const std::size_t c = std::min(j, N - 1 - j);
            if (c >= env.size()) continue;
            const double un = sign[f] * s.velocity[w][f];
            env[c] = std::max(env[c], std::abs(un));
            double speed = 0.0;
            for (const auto& comp : s.velocity) speed += comp[f] * comp[f];
            r.bound_M = std::max(r.bound_M, std::sqrt(speed) + (s.pressure ? std::abs((*s.pressure)[f]) : 0.0));
        }
    }
    r.envelope = env;
    require(env.size() >= 3, "modulus_check: fewer than 3 distance classes below gamma");
    const std::vector<double> x(r.distances.begin(), r.distances.begin() + 3);
    const std::vector<double> y(env.begin(), env.begin() + 3);
    const LineFit f = fit_line(x, y);
    r.intercept = f.intercept;
    r.slope = f.slope;
    r.vanishes = std::abs(f.intercept) <= tolerance;
    return r;
}

} // namespace onsager
