/// @file commutator.cpp
/// @brief Commutator stress paths, flux contraction and slope probes.

#include "onsager/commutator.hpp"
#include "onsager/calculus.hpp"
#include "onsager/errors.hpp"

#include <algorithm>
#include <cmath>

namespace onsager {

namespace {

CommutatorStress empty_stress(int n, double eps, const Region& region, std::size_t size) {
    CommutatorStress R;
    R.n = n;
    R.epsilon = eps;
    R.region = region;
    R.tensor.assign(static_cast<std::size_t>(n * n), ScalarField(size, 0.0));
    return R;
}

void check_field(const Grid& g, const VectorField& u) {
    require(static_cast<int>(u.size()) == g.rank(), "commutator: component count must equal grid rank");
    for (const auto& c : u) require(c.size() == g.size(), "commutator: field size mismatch");
}

Region support_of(const Grid& g, const ScalarField& phi, const Region& region) {
    std::vector<std::uint8_t> mask(g.size(), 0);
    for (std::size_t f : region.nodes()) mask[f] = phi[f] != 0.0 ? 1 : 0;
    return Region(g, std::move(mask));
}

} // namespace

ScalarField CommutatorStress::frobenius() const {
    ScalarField out(tensor.empty() ? 0 : tensor[0].size(), 0.0);
    for (const auto& c : tensor)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i] * c[i];
    for (double& v : out) v = std::sqrt(v);
    return out;
}

CommutatorStress commutator_stress(const Grid& g, const VectorField& u, const Mollifier& m, const Region& region,
                                   MollifyPath path) {
    check_field(g, u);
    const int n = g.rank();
    CommutatorStress R = empty_stress(n, m.epsilon(), region, g.size());
    const VectorField ue = mollify_vector(u, m, region, path);
    ScalarField prod(g.size());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = u[i][k] * u[j][k];
            const ScalarField pe = mollify_field(prod, m, region, path);
            ScalarField& out = R.tensor[static_cast<std::size_t>(i * n + j)];
            for (std::size_t f : region.nodes()) out[f] = pe[f] - ue[i][f] * ue[j][f];
            R.tensor[static_cast<std::size_t>(j * n + i)] = out;
        }
    return R;
}

CommutatorStress commutator_via_increments(const Grid& g, const VectorField& u, const Mollifier& m,
                                           const Region& region) {
    check_field(g, u);
    const int n = g.rank();
    CommutatorStress R = empty_stress(n, m.epsilon(), region, g.size());
    const VectorField ue = mollify_vector(u, m, region, MollifyPath::direct);

    std::vector<const StencilEntry*> live;
    for (const auto& e : m.stencil())
        if (e.mass > 0.0) live.push_back(&e);
    double acc[kMaxRank][kMaxRank];
    for (std::size_t f : region.nodes()) {
        const Index idx = g.unflat(f);
        for (auto& row : acc)
            for (double& v : row) v = 0.0;
        for (const StencilEntry* e : live) {
            std::size_t nb = 0;
            for (int a = 0; a < n; ++a) {
                const long N = static_cast<long>(g.dim(a));
                long i = static_cast<long>(idx[a]) + e->offset[a];
                if (g.periodic(a)) i = ((i % N) + N) % N;
                nb += static_cast<std::size_t>(i) * g.stride(a);
            }
            double d[kMaxRank];
            for (int a = 0; a < n; ++a) d[a] = u[a][nb] - u[a][f];
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) acc[i][j] += e->mass * d[i] * d[j];
        }
        double r[kMaxRank];
        for (int a = 0; a < n; ++a) r[a] = u[a][f] - ue[a][f];
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double v = acc[i][j] - r[i] * r[j];
                R.tensor[static_cast<std::size_t>(i * n + j)][f] = v;
                R.tensor[static_cast<std::size_t>(j * n + i)][f] = v;
            }
    }
    return R;
}

ScalarField flux_density(const Grid& g, const CommutatorStress& R, const VectorField& u_eps, const ScalarField& phi,
                         const Region& region) {
    const int n = R.n;
    ScalarField out(g.size(), 0.0);
    ScalarField w(g.size());
    for (int j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = phi[k] * u_eps[j][k];
        for (int i = 0; i < n; ++i) {
            const ScalarField d = partial(g, w, i, region);
            const ScalarField& r = R.at(i, j);
            for (std::size_t f : region.nodes()) out[f] += r[f] * d[f];
        }
    }
    return out;
}

double spatial_flux(const Grid& g, const VectorField& u, const Mollifier& m, const ScalarField& phi,
                    const Region& region) {
    const CommutatorStress R = commutator_stress(g, u, m, region);
    const VectorField ue = mollify_vector(u, m, region);
    return integrate(g, flux_density(g, R, ue, phi, region), region);
}

double time_quadrature(const std::vector<double>& values, const std::vector<double>& chi, double dt) {
    require(values.size() == chi.size(), "time quadrature: size mismatch");
    std::vector<double> terms(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        double w = values.size() == 1 ? 1.0 : dt;
        if (values.size() > 1 && (k == 0 || k + 1 == values.size())) w *= 0.5;
        terms[k] = w * chi[k] * values[k];
    }
    return pairwise_sum(terms);
}

FluxTerms flux_terms(const Trajectory& traj, double epsilon, const std::vector<double>& chi, const ScalarField& phi,
                     const Region& region) {
    traj.validate();
    require(chi.size() == traj.size(), "flux_term: one chi weight per snapshot required");
    for (double c : chi) require(c >= 0.0, "flux_term: chi must be nonnegative");
    const Grid& g = traj.grid();
    const Mollifier m = make_mollifier(epsilon, g);
    std::vector<double> vals(traj.size(), 0.0), abs_vals(traj.size(), 0.0);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (chi[k] == 0.0) continue;
        const VectorField& u = traj.snapshots[k].velocity;
        const CommutatorStress R = commutator_stress(g, u, m, region);
        const VectorField ue = mollify_vector(u, m, region);
        ScalarField dens = flux_density(g, R, ue, phi, region);
        vals[k] = integrate(g, dens, region);
        for (double& d : dens) d = std::abs(d);
        abs_vals[k] = integrate(g, dens, region);
    }
    return {time_quadrature(vals, chi, traj.dt), time_quadrature(abs_vals, chi, traj.dt)};
}

double flux_term(const Trajectory& traj, double epsilon, const std::vector<double>& chi, const ScalarField& phi,
                 const Region& region) {
    return flux_terms(traj, epsilon, chi, phi, region).value;
}

ScalingProbe scaling_probe(const Trajectory& traj, double alpha, const std::vector<double>& epsilons,
                           const std::vector<double>& chi, const ScalarField& phi, const Region& region) {
    traj.validate();
    require(epsilons.size() >= 4, "scaling_probe: fewer than 4 admissible rungs");
    const Grid& g = traj.grid();
    const Region supp = support_of(g, phi, region);
    require(!supp.empty(), "scaling_probe: phi vanishes on the region");

    std::vector<double> flux, flux_abs, supR, supG;
    for (double eps : epsilons) {
        const Mollifier m = make_mollifier(eps, g);
        std::vector<double> f(traj.size(), 0.0), fa(traj.size(), 0.0);
        double sr = 0.0, sg = 0.0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            if (chi[k] == 0.0) continue;
            const VectorField& u = traj.snapshots[k].velocity;
            const CommutatorStress R = commutator_stress(g, u, m, region);
            const VectorField ue = mollify_vector(u, m, region);
            const ScalarField dens = flux_density(g, R, ue, phi, region);
            f[k] = integrate(g, dens, region);
            ScalarField ad(dens.size());
            for (std::size_t i = 0; i < ad.size(); ++i) ad[i] = std::abs(dens[i]);
            fa[k] = integrate(g, ad, region);
            sr = std::max(sr, max_abs(R.frobenius(), supp));
            // |grad(phi u^eps)| (Frobenius) on the support of phi.
            ScalarField gn(g.size(), 0.0);
            ScalarField w(g.size());
            for (int j = 0; j < g.rank(); ++j) {
                for (std::size_t i = 0; i < w.size(); ++i) w[i] = phi[i] * ue[j][i];
                for (int a = 0; a < g.rank(); ++a) {
                    const ScalarField d = partial(g, w, a, region);
                    for (std::size_t i = 0; i < gn.size(); ++i) gn[i] += d[i] * d[i];
                }
            }
            for (double& v : gn) v = std::sqrt(v);
            sg = std::max(sg, max_abs(gn, supp));
        }
        flux.push_back(time_quadrature(f, chi, traj.dt));
        flux_abs.push_back(time_quadrature(fa, chi, traj.dt));
        supR.push_back(sr);
        supG.push_back(sg);
    }
    ScalingProbe p;
    p.alpha = alpha;
    std::vector<double> floors(flux_abs.size());
    for (std::size_t k = 0; k < floors.size(); ++k) floors[k] = kCancellationFloor * flux_abs[k];
    p.flux = fit_slope("flux", epsilons, flux, floors, 3.0 * alpha - 1.0);
    p.flux_abs = fit_slope("flux_abs", epsilons, flux_abs, 3.0 * alpha - 1.0);
    p.sup_R = fit_slope("sup_R", epsilons, supR, 2.0 * alpha);
    p.sup_grad = fit_slope("sup_grad", epsilons, supG, alpha - 1.0);
    return p;
}

} // namespace onsager
