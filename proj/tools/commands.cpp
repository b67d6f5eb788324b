/// @file commands.cpp
/// @brief gen, diagnose, boundary, sweep and report.

#include "commands.hpp"

#include "onsager/boundary_flux.hpp"
#include "onsager/commutator.hpp"
#include "onsager/energy_balance.hpp"
#include "onsager/errors.hpp"
#include "onsager/field_io.hpp"
#include "onsager/holder.hpp"
#include "onsager/kernels.hpp"
#include "onsager/ns_solver.hpp"
#include "onsager/pressure.hpp"
#include "onsager/report.hpp"
#include "onsager/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace onsager::cli {

namespace fs = std::filesystem;

namespace {

bool is_channel_kind(GeneratorKind k) {
    return k == GeneratorKind::cellular_channel || k == GeneratorKind::poiseuille_channel;
}

Grid build_grid(const std::string& dims_text, const std::string& extent_text, bool channel) {
    const std::vector<std::size_t> dims = parse_dims(dims_text);
    std::vector<AxisKind> kinds(dims.size(), AxisKind::periodic);
    if (channel) {
        require(dims.size() == 2, "channel generators are two-dimensional");
        kinds[1] = AxisKind::wall;
    }
    std::vector<double> ext;
    if (extent_text.empty()) {
        for (std::size_t a = 0; a < dims.size(); ++a)
            ext.push_back(kinds[a] == AxisKind::wall ? 1.0 : 2.0 * std::numbers::pi);
    } else {
        ext = parse_extent(extent_text);
        require(ext.size() == dims.size(), "--extent needs one length per grid axis");
    }
    return make_grid(dims, ext, kinds);
}

GeneratorSpec generator_spec(const GenConfig& g) {
    GeneratorSpec s;
    s.kind = generator_kind_from_string(g.kind);
    // Plain "taylor-green" with a viscosity means the decaying solution.
    if (s.kind == GeneratorKind::taylor_green_steady && g.kind == "taylor-green" && g.nu > 0.0)
        s.kind = GeneratorKind::taylor_green_viscous;
    s.alpha = g.alpha;
    s.cutoff = g.cutoff;
    s.seed = g.seed;
    s.nu = g.nu;
    s.t = g.t;
    s.amplitude = g.amplitude;
    s.shear_u = g.shear_u;
    s.shear_w = g.shear_w;
    return s;
}

// Attaches the re-solved pressure when the data carry none; returns whether it did.
bool ensure_pressure(Snapshot& s) {
    if (s.pressure) return false;
    s.pressure = solve_pressure(s).pressure;
    return true;
}

bool ensure_pressure(Trajectory& t) {
    bool solved = false;
    for (auto& s : t.snapshots) solved = ensure_pressure(s) || solved;
    return solved;
}

Json grid_json(const Grid& g) {
    Json j;
    Json dims = Json::array(), ext = Json::array(), kinds = Json::array();
    for (int a = 0; a < g.rank(); ++a) {
        dims.push_back(g.dim(a));
        ext.push_back(g.extent(a));
        kinds.push_back(g.periodic(a) ? "periodic" : "wall");
    }
    j["dims"] = dims;
    j["extent"] = ext;
    j["axes"] = kinds;
    return j;
}

Json fit_json(const SlopeFit& f) {
    Json j;
    j["quantity"] = f.quantity;
    j["slope"] = f.slope;
    j["predicted_slope"] = f.predicted_slope;
    j["tolerance"] = f.tolerance;
    j["r2"] = f.r2;
    j["degenerate"] = f.degenerate;
    j["passed"] = f.passed;
    j["verdict"] = f.verdict;
    return j;
}

void write_outputs(const fs::path& dir, const std::string& command, const RunConfig& cfg,
                   const std::vector<std::uint64_t>& seeds, const std::vector<std::string>& inputs) {
    fs::create_directories(dir);
    Json manifest = make_manifest(command, to_json(cfg, command), seeds);
    Json in = Json::array();
    for (const auto& s : inputs) in.push_back(s);
    manifest["inputs"] = in;
    write_json(dir / "manifest.json", manifest);
    write_json(dir / "config.json", to_json(cfg, command));
}

std::string input_name(const fs::path& p) {
    fs::path q = p;
    if (q.filename().empty()) q = q.parent_path();
    return q.filename().string();
}

int finish(const fs::path& dir, Json summary, const std::string& verdict, int code) {
    summary["verdict"] = verdict;
    summary["exit_code"] = code;
    write_json(dir / "summary.json", summary);
    std::printf("%s\n", verdict.c_str());
    return code;
}

} // namespace

fs::path resolve_output(const std::string& flag, const RunConfig& cfg, const std::string& fallback) {
    const fs::path p = flag.empty() ? fs::path(fallback) : fs::path(flag);
    if (p.is_absolute()) return p;
    if (const char* env = std::getenv("ONSAGER_OUT_DIR"); env && *env) return fs::path(env) / p;
    if (!cfg.output_dir.empty()) return fs::path(cfg.output_dir) / p;
    return p;
}

int cmd_gen(const RunConfig& cfg, const fs::path& out) {
    const GenConfig& gc = cfg.gen;
    const GeneratorSpec spec = generator_spec(gc);
    require(gc.frames >= 1, "--frames must be >= 1");
    require(gc.frames == 1 || gc.dt > 0.0, "--dt must be positive when --frames > 1");
    const Grid g = build_grid(gc.grid, gc.extent, is_channel_kind(spec.kind));

    Trajectory traj;
    traj.dt = gc.frames > 1 ? gc.dt : 1.0;
    for (int k = 0; k < gc.frames; ++k) {
        GeneratorSpec sk = spec;
        sk.t = gc.t + k * gc.dt;
        Snapshot s = generate(sk, g);
        s.time = sk.t;
        s.tags.metadata["generator"] = to_string(spec.kind);
        if (spec.kind == GeneratorKind::fractional) s.tags.metadata["seed"] = std::to_string(spec.seed);
        s.tags.metadata["pressure"] = ensure_pressure(s) ? "solved" : "analytic";
        traj.snapshots.push_back(std::move(s));
    }

    const std::vector<std::uint64_t> seeds{spec.seed};
    if (gc.frames == 1 && out.extension() == ".oflx") {
        if (out.has_parent_path()) fs::create_directories(out.parent_path());
        write_snapshot(out, traj.snapshots.front());
        Json manifest = make_manifest("gen", to_json(cfg, "gen"), seeds);
        manifest["outputs"] = Json::array({out.filename().string()});
        write_json(fs::path(out.string() + ".manifest.json"), manifest);
        std::printf("wrote %s\n", out.filename().string().c_str());
    } else {
        write_trajectory(out, traj);
        write_outputs(out, "gen", cfg, seeds, {});
        std::printf("wrote %zu snapshots to %s\n", traj.size(), out.filename().string().c_str());
    }
    return Exit::ok;
}

int cmd_diagnose(const RunConfig& cfg, const fs::path& input, const fs::path& out) {
    const DiagnoseConfig& dc = cfg.diagnose;
    Trajectory traj = read_trajectory_or_snapshot(input);
    const Grid& g = traj.grid();
    const Domain domain = Domain::from_grid(g);
    const double h = g.max_spacing();

    // Kernel ladder: explicit multiples of h, or halvings from the largest
    // radius the geometry admits down to 2h.
    std::size_t nmin = g.dim(0);
    for (int a = 1; a < g.rank(); ++a)
        if (g.periodic(a)) nmin = std::min(nmin, g.dim(a));
    double top = std::floor((static_cast<double>(nmin) - 1.0) / 2.0);
    if (domain.is_channel()) top = std::min(top, std::floor(0.25 * domain.half_width() / h));
    std::vector<double> eps_h = dc.eps_h;
    if (eps_h.empty()) {
        double e = 2.0;
        while (e * 2.0 <= std::min(top, 32.0)) e *= 2.0;
        for (; e >= 2.0; e /= 2.0) eps_h.push_back(e);
    }
    const std::string admissible = "admissible kernel radii: eps/h in [2, " + format_number(top) + "]";
    for (double e : eps_h)
        if (e < 2.0 || e > top) fail(ErrorKind::precondition, "kernel radius " + format_number(e) + "h rejected; " + admissible);
    if (eps_h.size() < 4) fail(ErrorKind::precondition, "need at least 4 kernel radii; " + admissible);
    std::vector<double> eps;
    for (double e : eps_h) eps.push_back(e * h);
    const double eps_max = *std::max_element(eps.begin(), eps.end());

    // Region and spatial cutoff phi: a bump centred in the domain.
    Region region = Region::all(g);
    double min_extent = g.extent(0);
    for (int a = 1; a < g.rank(); ++a) min_extent = std::min(min_extent, g.extent(a));
    double radius = dc.phi_radius > 0.0 ? dc.phi_radius : 0.25 * min_extent;
    if (domain.is_channel()) {
        region = Region::slab(g, domain.wall_axis(), eps_max);
        const double room = domain.half_width() - eps_max - 3.0 * h;
        if (dc.phi_radius <= 0.0) radius = std::min(radius, room);
        require(radius <= room, "phi radius " + format_number(radius) + " leaves no stencil room inside the channel (max " +
                                    format_number(room) + ")");
    }
    require(radius > 2.0 * h, "phi radius " + format_number(radius) + " is under-resolved (<= 2h)");
    ScalarField phi(g.size(), 0.0);
    for (std::size_t f = 0; f < g.size(); ++f) {
        const Index idx = g.unflat(f);
        double r2 = 0.0;
        for (int a = 0; a < g.rank(); ++a) {
            const double x = g.coord(a, idx[a]) - 0.5 * g.extent(a);
            r2 += x * x;
        }
        phi[f] = bump(std::sqrt(r2) / radius);
    }

    Json summary;
    summary["input"] = input_name(input);
    summary["grid"] = grid_json(g);
    summary["snapshots"] = traj.size();

    Json holder;
    double alpha = dc.alpha;
    try {
        const HolderEstimate est = estimate_holder_exponent(g, traj.snapshots.front().velocity, region);
        holder["exponent"] = est.exponent;
        holder["seminorm"] = est.seminorm;
        holder["r2"] = est.r2;
        holder["flag"] = est.flag;
        if (alpha < 0.0) alpha = est.exponent;
    } catch (const Error& e) {
        holder["error"] = e.what();
        if (alpha < 0.0) throw;
    }
    summary["holder_estimate"] = holder;
    summary["alpha"] = alpha;
    summary["alpha_source"] = dc.alpha < 0.0 ? "estimated" : "given";

    std::vector<double> chi(traj.size(), 1.0);
    if (traj.size() >= 3) chi = make_test_function(traj, phi).chi;
    const ScalingProbe probe = scaling_probe(traj, alpha, eps, chi, phi, region);

    CsvTable scaling{{"epsilon", "eps_over_h", "flux", "flux_abs", "sup_R", "sup_grad"}, {}};
    for (std::size_t k = 0; k < eps.size(); ++k)
        scaling.add_row({eps[k], eps_h[k], probe.flux.values[k], probe.flux_abs.values[k], probe.sup_R.values[k],
                         probe.sup_grad.values[k]});
    fs::create_directories(out);
    scaling.write(out / "scaling.csv");
    summary["fits"] = Json::array({fit_json(probe.flux), fit_json(probe.sup_R), fit_json(probe.sup_grad),
                                   fit_json(probe.flux_abs)});

    bool positive = probe.passed();
    std::string verdict = positive ? "scaling consistent with the Hoelder estimates" : "scaling NOT consistent with the Hoelder estimates";

    if (dc.identity) {
        Trajectory tw = traj;
        bool frozen = false;
        if (tw.size() < 3) {
            tw = frozen_trajectory(traj.snapshots.front(), 5, 1.0);
            frozen = true;
        }
        const bool solved = ensure_pressure(tw);
        const TestFunction test = make_test_function(tw, phi);
        CsvTable ident{{"epsilon", "lhs", "rhs", "flux", "residual"}, {}};
        for (double e : eps) {
            const EnergyBalanceReport r = weak_energy_identity(tw, test, e, dc.kappa, region);
            ident.add_row({e, r.lhs, r.rhs, r.flux, r.residual});
        }
        ident.write(out / "identity.csv");
        const ConvergenceSweep sw = dr_convergence_sweep(tw, eps, test, region, alpha);
        Json ij;
        ij["frozen_from_single_snapshot"] = frozen;
        ij["pressure"] = solved ? "solved" : "supplied";
        ij["kappa"] = dc.kappa;
        ij["fit"] = fit_json(sw.fit);
        ij["monotone"] = sw.monotone;
        ij["verdict"] = sw.verdict;
        summary["identity"] = ij;
        positive = positive && sw.positive;
        verdict += "; identity: " + sw.verdict;
    }

    write_outputs(out, "diagnose", cfg, {}, {input_name(input)});
    return finish(out, summary, verdict, positive ? Exit::ok : Exit::negative);
}

int cmd_boundary(const RunConfig& cfg, const fs::path& input, const fs::path& out) {
    const BoundaryConfig& bc = cfg.boundary;
    Trajectory traj = read_trajectory_or_snapshot(input);
    const bool solved = ensure_pressure(traj);
    const Grid& g = traj.grid();
    const Domain domain = Domain::from_grid(g);

    VerdictOptions opts;
    opts.eta0 = bc.eta0;
    opts.energy_tolerance = bc.energy_tolerance;
    opts.beta = bc.beta;
    const ConservationVerdict v = conservation_verdict(traj, bc.etas, domain, opts);

    fs::create_directories(out);
    CsvTable shells{{"eta", "shell_flux", "pressure_norm"}, {}};
    for (std::size_t k = 0; k < v.etas.size(); ++k) shells.add_row({v.etas[k], v.shell_fluxes[k], v.pressure_norms[k]});
    shells.write(out / "shells.csv");

    CsvTable balance{{"eta", "e1", "e2", "boundary_term", "residual", "budget"}, {}};
    for (double eta : bc.etas) {
        const GlobalBalanceReport b = global_balance(traj, eta, traj.t_begin(), traj.t_end(), domain);
        balance.add_row({eta, b.e1, b.e2, b.boundary_term, b.residual, b.budget});
    }
    balance.write(out / "balance.csv");

    Json summary;
    summary["input"] = input_name(input);
    summary["grid"] = grid_json(g);
    summary["snapshots"] = traj.size();
    summary["pressure"] = solved ? "solved" : "supplied";
    Json checks;
    checks["shell_flux_trend"] = v.shell_trend_ok;
    checks["interior_exponent"] = v.interior_exponent;
    checks["interior_regularity"] = v.interior_ok;
    checks["boundary_pressure_bounded"] = v.pressure_bounded;
    checks["energy_drift"] = v.energy_drift;
    checks["energy_conserved"] = v.energy_conserved;
    Json failed = Json::array();
    for (const auto& f : v.failed) failed.push_back(f);
    checks["failed"] = failed;
    summary["checks"] = checks;

    if (domain.is_channel()) {
        const double gamma = bc.gamma > 0.0 ? bc.gamma : bc.etas.front();
        const ModulusReport m = modulus_check(traj, gamma, domain);
        CsvTable mod{{"distance", "envelope"}, {}};
        for (std::size_t k = 0; k < m.distances.size(); ++k) mod.add_row({m.distances[k], m.envelope[k]});
        mod.write(out / "modulus.csv");
        Json mj;
        mj["gamma"] = m.gamma;
        mj["bound_M"] = m.bound_M;
        mj["intercept"] = m.intercept;
        mj["slope"] = m.slope;
        mj["tolerance"] = m.tolerance;
        mj["vanishes"] = m.vanishes;
        summary["modulus"] = mj;
    }

    write_outputs(out, "boundary", cfg, {}, {input_name(input)});
    return finish(out, summary, v.verdict, v.exit_code);
}

int cmd_sweep(const RunConfig& cfg, const fs::path& out) {
    const SweepConfig& sc = cfg.sweep;
    GeneratorSpec init;
    init.kind = generator_kind_from_string(sc.initial);
    init.amplitude = sc.amplitude;
    init.shear_u = sc.mean_speed;
    init.seed = cfg.seed;
    SolverConfig base;
    base.grid = build_grid(sc.grid, sc.extent, is_channel_kind(init.kind));
    base.dt = sc.dt;
    base.cfl_limit = sc.cfl_limit;
    base.initial = init;
    const DissipationSweep sw = dissipation_sweep(base, sc.nus, sc.t_star);

    fs::create_directories(out);
    CsvTable table{{"nu", "dissipation", "layer_width", "under_resolved", "max_leray_residual"}, {}};
    for (std::size_t k = 0; k < sw.entries.size(); ++k) {
        const SweepEntry& e = sw.entries[k];
        table.add_row({e.nu, e.dissipation, e.layer_width, e.under_resolved ? "yes" : "no", e.max_leray_residual});
        CsvTable series{{"t", "E", "cumulative_dissipation", "leray_residual"}, {}};
        for (std::size_t i = 0; i < e.series.times.size(); ++i)
            series.add_row({e.series.times[i], e.series.kinetic_energy[i], e.series.cumulative_dissipation[i],
                            e.series.leray_residual[i]});
        char name[32];
        std::snprintf(name, sizeof name, "series_%02zu.csv", k);
        series.write(out / name);
    }
    table.write(out / "sweep.csv");

    Json summary;
    summary["grid"] = grid_json(base.grid);
    summary["initial"] = to_string(init.kind);
    summary["t_star"] = sw.t_star;
    summary["monotone"] = sw.monotone;
    summary["halved"] = sw.halved;
    summary["sweep_verdict"] = sw.verdict;
    bool positive = sw.positive;
    std::string verdict = sw.verdict;

    if (!sc.etas.empty()) {
        require(Domain::from_grid(base.grid).is_channel(), "--eta (viscous shell flux) requires a channel initial state");
        require(sc.frames >= 2, "--frames must be >= 2 for the viscous shell flux");
        std::vector<ViscousRun> runs;
        for (double nu : sc.nus) {
            SolverConfig c = base;
            c.nu = nu;
            c.t_end = sc.t_star;
            const std::size_t steps = static_cast<std::size_t>(std::ceil(sc.t_star / sc.dt - 1e-12));
            c.record_stride = std::max<std::size_t>(1, steps / static_cast<std::size_t>(sc.frames - 1));
            c.with_pressure = true;
            runs.push_back({nu, run(c).trajectory});
        }
        const ViscousFluxReport vf = viscous_flux_criterion(runs, sc.etas);
        CsvTable ft{{"nu", "eta", "shell_flux"}, {}};
        for (std::size_t i = 0; i < vf.nus.size(); ++i)
            for (std::size_t j = 0; j < vf.etas.size(); ++j) ft.add_row({vf.nus[i], vf.etas[j], vf.flux[i][j]});
        ft.write(out / "viscous_flux.csv");
        CsvTable ex{{"eta", "extrapolated", "nu_trend"}, {}};
        for (std::size_t j = 0; j < vf.etas.size(); ++j) ex.add_row({vf.etas[j], vf.extrapolated[j], vf.nu_trend[j]});
        ex.write(out / "viscous_flux_extrapolated.csv");
        Json vj;
        vj["eta_trend_ok"] = vf.eta_trend_ok;
        vj["verdict"] = vf.verdict;
        summary["viscous_flux"] = vj;
        positive = positive && vf.positive;
        verdict += "; shell flux: " + vf.verdict;
    }

    write_outputs(out, "sweep", cfg, {cfg.seed}, {});
    return finish(out, summary, verdict, positive ? Exit::ok : Exit::negative);
}

int cmd_report(const RunConfig& cfg, const fs::path& input, const fs::path& out) {
    require(fs::is_directory(input), "report: " + input.string() + " is not a directory");
    std::vector<fs::path> found;
    for (const auto& e : fs::recursive_directory_iterator(input))
        if (e.is_regular_file() && e.path().filename() == "summary.json") found.push_back(e.path());
    std::sort(found.begin(), found.end());
    require(!found.empty(), "report: no summary.json under " + input.string());

    CsvTable table{{"source", "command", "verdict", "exit_code"}, {}};
    Json entries = Json::array();
    int worst = Exit::ok;
    for (const auto& p : found) {
        const fs::path dir = p.parent_path();
        const Json s = read_json(p);
        std::string command = "unknown";
        if (fs::exists(dir / "manifest.json")) command = read_json(dir / "manifest.json").value("command", command);
        const std::string rel = fs::relative(dir, input).generic_string();
        const std::string source = input_name(input) + (rel == "." ? "" : "/" + rel);
        const int code = s.value("exit_code", 1);
        const std::string verdict = s.value("verdict", std::string());
        table.add_row({source, command, verdict, static_cast<long long>(code)});
        Json e;
        e["source"] = source;
        e["command"] = command;
        e["summary"] = s;
        entries.push_back(e);
        std::printf("%s: %s\n", source.c_str(), verdict.c_str());
        worst = std::max(worst, code);
    }
    fs::create_directories(out);
    table.write(out / "verdicts.csv");
    Json rep;
    rep["entries"] = entries;
    write_json(out / "report.json", rep);
    write_outputs(out, "report", cfg, {}, {input_name(input)});
    return worst;
}

} // namespace onsager::cli
