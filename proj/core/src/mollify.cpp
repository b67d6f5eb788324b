/// @file mollify.cpp
/// @brief Mollifier construction, direct and spectral convolution, time smoothing.

#include "onsager/mollify.hpp"
#include "onsager/calculus.hpp"
#include "onsager/errors.hpp"
#include "onsager/fft.hpp"
#include "onsager/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace onsager {

namespace {

// Neighbour of node idx at offset o; false if it leaves the grid across a wall.
bool neighbour(const Grid& g, const Index& idx, const std::array<int, kMaxRank>& o, std::size_t& out) {
    std::size_t f = 0;
    for (int a = 0; a < g.rank(); ++a) {
        const long n = static_cast<long>(g.dim(a));
        long i = static_cast<long>(idx[a]) + o[a];
        if (g.periodic(a)) {
            i %= n;
            if (i < 0) i += n;
        } else if (i < 0 || i >= n) {
            return false;
        }
        f += static_cast<std::size_t>(i) * g.stride(a);
    }
    out = f;
    return true;
}

std::string describe_nodes(const Grid& g, const std::vector<std::size_t>& nodes) {
    std::ostringstream os;
    const std::size_t shown = std::min<std::size_t>(nodes.size(), 8);
    for (std::size_t k = 0; k < shown; ++k) {
        const Index idx = g.unflat(nodes[k]);
        os << (k ? " " : "") << "(";
        for (int a = 0; a < g.rank(); ++a) os << (a ? "," : "") << idx[a];
        os << ")";
    }
    if (nodes.size() > shown) os << " ... (" << nodes.size() << " total)";
    return os.str();
}

} // namespace

std::size_t Mollifier::nonzero_count() const {
    return static_cast<std::size_t>(
        std::count_if(stencil_.begin(), stencil_.end(), [](const StencilEntry& e) { return e.mass > 0.0; }));
}

double Mollifier::mass_sum() const {
    std::vector<double> m;
    for (const auto& e : stencil_) m.push_back(e.mass);
    return pairwise_sum(m);
}

const ScalarField& Mollifier::spectrum() const {
    require(spectrum_ != nullptr, "mollifier spectrum requires a fully periodic grid");
    return *spectrum_;
}

Mollifier make_mollifier(double epsilon, const Grid& grid) {
    const double h = grid.max_spacing();
    if (!(epsilon >= 2.0 * h * (1.0 - 1e-12)))
        fail(ErrorKind::precondition, "under-resolved kernel: epsilon = " + std::to_string(epsilon) +
                                          " is below 2h = " + std::to_string(2.0 * h));
    Mollifier m;
    m.epsilon_ = epsilon;
    m.grid_ = grid;
    std::array<int, kMaxRank> reach{0, 0, 0};
    for (int a = 0; a < grid.rank(); ++a) {
        reach[a] = static_cast<int>(std::floor(epsilon / grid.spacing(a) * (1.0 + 1e-12)));
        // A periodic axis must hold the stencil without self-overlap.
        if (grid.periodic(a))
            require(2 * reach[a] + 1 <= static_cast<int>(grid.dim(a)),
                    "mollifier radius exceeds half the periodic extent");
    }
    m.reach_ = reach;

    const double tol = 1e-12 * epsilon;
    std::array<int, kMaxRank> o{0, 0, 0};
    const int r0 = reach[0], r1 = reach[1], r2 = grid.rank() > 2 ? reach[2] : 0;
    double raw_sum = 0.0;
    for (o[0] = -r0; o[0] <= r0; ++o[0])
        for (o[1] = -r1; o[1] <= r1; ++o[1])
            for (o[2] = -r2; o[2] <= r2; ++o[2]) {
                double r2sum = 0.0;
                for (int a = 0; a < grid.rank(); ++a) {
                    const double x = o[a] * grid.spacing(a);
                    r2sum += x * x;
                }
                const double r = std::sqrt(r2sum);
                if (r > epsilon + tol) continue;
                StencilEntry e;
                e.offset = o;
                e.radius = r;
                e.mass = r >= epsilon - tol ? 0.0 : bump(r / epsilon);
                raw_sum += e.mass;
                m.stencil_.push_back(e);
            }
    for (auto& e : m.stencil_) e.mass /= raw_sum;

    if (grid.fully_periodic()) {
        ScalarField k(grid.size(), 0.0);
        const Index origin{0, 0, 0};
        for (const auto& e : m.stencil_) {
            std::size_t f = 0;
            neighbour(grid, origin, e.offset, f);
            k[f] += e.mass;
        }
        const ComplexField kh = fft_forward(grid, k);
        auto spec = std::make_shared<ScalarField>(grid.size());
        for (std::size_t i = 0; i < kh.size(); ++i) (*spec)[i] = kh[i].real();
        m.spectrum_ = std::move(spec);
    }
    return m;
}

std::vector<std::size_t> margin_violations(const Mollifier& m, const Region& region, const Region& valid) {
    const Grid& g = m.grid();
    require(region.grid() == g && valid.grid() == g, "mollify: region grid mismatch");
    std::vector<std::size_t> bad;
    int wall = -1;
    for (int a = 0; a < g.rank(); ++a)
        if (!g.periodic(a)) wall = a;
    if (wall < 0 && valid.covers_grid()) return bad;
    const double tol = 1e-12 * m.epsilon();
    for (std::size_t f : region.nodes()) {
        const Index idx = g.unflat(f);
        bool ok = true;
        if (wall >= 0) {
            const double y = g.coord(wall, idx[wall]);
            ok = std::min(y, g.extent(wall) - y) >= m.epsilon() - tol;
        }
        for (std::size_t s = 0; ok && s < m.stencil().size(); ++s) {
            std::size_t nb = 0;
            ok = neighbour(g, idx, m.stencil()[s].offset, nb) && valid.contains(nb);
        }
        if (!ok) bad.push_back(f);
    }
    return bad;
}

ScalarField mollify_field(const ScalarField& field, const Mollifier& m, const Region& region, MollifyPath path) {
    return mollify_field(field, m, region, Region::all(m.grid()), path);
}

ScalarField mollify_field(const ScalarField& field, const Mollifier& m, const Region& region, const Region& valid,
                          MollifyPath path) {
    const Grid& g = m.grid();
    require(field.size() == g.size(), "mollify: field size mismatch");
    const auto bad = margin_violations(m, region, valid);
    if (!bad.empty())
        fail(ErrorKind::margin_violation,
             "margin violation: stencil of radius " + std::to_string(m.epsilon()) +
                 " leaves the valid data at nodes " + describe_nodes(g, bad));

    if (path == MollifyPath::automatic)
        path = g.fully_periodic() && region.size() * m.nonzero_count() > 4 * g.size() ? MollifyPath::spectral
                                                                                      : MollifyPath::direct;
    ScalarField out(g.size(), 0.0);
    if (path == MollifyPath::spectral) {
        require(g.fully_periodic(), "spectral mollification requires a fully periodic grid");
        ComplexField fh = fft_forward(g, field);
        const ScalarField& k = m.spectrum();
        for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= k[i];
        const ScalarField full = fft_inverse_real(g, fh);
        for (std::size_t f : region.nodes()) out[f] = full[f];
        return out;
    }

    std::vector<const StencilEntry*> live;
    for (const auto& e : m.stencil())
        if (e.mass > 0.0) live.push_back(&e);
    for (std::size_t f : region.nodes()) {
        const Index idx = g.unflat(f);
        double s = 0.0;
        for (const StencilEntry* e : live) {
            std::size_t nb = 0;
            neighbour(g, idx, e->offset, nb);
            s += e->mass * field[nb];
        }
        out[f] = s;
    }
    return out;
}

VectorField mollify_vector(const VectorField& field, const Mollifier& m, const Region& region, MollifyPath path) {
    VectorField out;
    out.reserve(field.size());
    for (const auto& c : field) out.push_back(mollify_field(c, m, region, path));
    return out;
}

TimeKernel make_time_kernel(double kappa, double dt) {
    require(dt > 0.0, "time kernel: dt must be positive");
    require(kappa > dt * (1.0 + 1e-12), "time kernel: kappa must exceed dt");
    TimeKernel k;
    k.kappa = kappa;
    k.dt = dt;
    k.half_width = static_cast<int>(std::floor(kappa / dt * (1.0 + 1e-12)));
    double sum = 0.0;
    for (int j = -k.half_width; j <= k.half_width; ++j) {
        const double v = bump(j * dt / kappa);
        k.masses.push_back(v);
        sum += v;
    }
    for (double& v : k.masses) v /= sum;
    return k;
}

namespace {

ScalarField time_smooth(const Trajectory& tr, const TimeKernel& k, std::size_t centre, bool pressure, int comp) {
    const std::size_t n = tr.snapshots.front().grid.size();
    ScalarField out(n, 0.0);
    for (int j = -k.half_width; j <= k.half_width; ++j) {
        const double w = k.masses[static_cast<std::size_t>(j + k.half_width)];
        if (w == 0.0) continue;
        const Snapshot& s = tr.snapshots[static_cast<std::size_t>(static_cast<long>(centre) + j)];
        const ScalarField& src = pressure ? *s.pressure : s.velocity[comp];
        for (std::size_t i = 0; i < n; ++i) out[i] += w * src[i];
    }
    return out;
}

} // namespace

Trajectory time_space_mollify(const Trajectory& traj, double epsilon, double kappa, const Region& region,
                              bool space_first) {
    traj.validate();
    const Grid& g = traj.grid();
    const Mollifier m = make_mollifier(epsilon, g);
    const TimeKernel k = make_time_kernel(kappa, traj.dt);
    const std::size_t H = static_cast<std::size_t>(k.half_width);
    require(traj.size() > 2 * H, "time_space_mollify: trajectory shorter than the time stencil");
    const bool with_p = traj.has_pressure();

    Trajectory src = traj;
    if (space_first) {
        for (auto& s : src.snapshots) {
            s.velocity = mollify_vector(s.velocity, m, region);
            if (with_p) s.pressure = mollify_field(*s.pressure, m, region);
        }
    }
    Trajectory out;
    out.dt = traj.dt;
    out.time_exponent_q = traj.time_exponent_q;
    for (std::size_t c = H; c + H < traj.size(); ++c) {
        Snapshot s;
        s.grid = g;
        s.time = traj.snapshots[c].time;
        s.tags = traj.snapshots[c].tags;
        for (int a = 0; a < g.rank(); ++a) s.velocity.push_back(time_smooth(src, k, c, false, a));
        if (with_p) s.pressure = time_smooth(src, k, c, true, 0);
        if (!space_first) {
            s.velocity = mollify_vector(s.velocity, m, region);
            if (with_p) s.pressure = mollify_field(*s.pressure, m, region);
        }
        out.snapshots.push_back(std::move(s));
    }
    return out;
}

} // namespace onsager
