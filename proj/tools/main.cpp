// onsager: generate fields, run the energy-conservation diagnostics, sweep the
// viscous solver, and collect verdicts.

#include "commands.hpp"

#include "onsager/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <deque>
#include <functional>
#include <string>
#include <vector>

namespace {

using onsager::RunConfig;
using Setter = std::function<void(RunConfig&, const std::string&)>;

double to_double(const std::string& flag, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used == v.size()) return x;
    } catch (const std::exception&) {
    }
    onsager::fail(onsager::ErrorKind::precondition, flag + ": expected a number, got '" + v + "'");
}

long long to_int(const std::string& flag, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used == v.size()) return x;
    } catch (const std::exception&) {
    }
    onsager::fail(onsager::ErrorKind::precondition, flag + ": expected an integer, got '" + v + "'");
}

// Flags are collected as text and applied on top of the config file, so a flag
// always wins over the file regardless of order on the command line.
class Overrides {
public:
    void add(CLI::App* app, const std::string& name, const std::string& help, Setter set) {
        values_.emplace_back();
        CLI::Option* o = app->add_option(name, values_.back(), help);
        entries_.push_back({o, &values_.back(), name, std::move(set)});
    }
    void flag(CLI::App* app, const std::string& name, const std::string& help, std::function<void(RunConfig&)> set) {
        CLI::Option* o = app->add_flag(name, help);
        entries_.push_back({o, nullptr, name, [set](RunConfig& c, const std::string&) { set(c); }});
    }
    void apply(RunConfig& c) const {
        for (const auto& e : entries_)
            if (e.opt->count() > 0) e.set(c, e.value ? *e.value : std::string());
    }

private:
    struct Entry {
        CLI::Option* opt;
        const std::string* value;
        std::string name;
        Setter set;
    };
    std::deque<std::string> values_;
    std::vector<Entry> entries_;
};

} // namespace

int main(int argc, char** argv) {
    using namespace onsager;
    namespace cli = onsager::cli;

    CLI::App app{"Energy-conservation diagnostics for incompressible flow fields"};
    app.require_subcommand(1);
    std::string config_path, out_flag, input;
    app.add_option("--config", config_path, "JSON run configuration");
    Overrides ov;

    auto* gen = app.add_subcommand("gen", "Generate a synthetic field or trajectory");
    ov.add(gen, "--kind", "fractional | taylor-green | taylor-green-viscous | shear | cellular-channel | poiseuille-channel",
           [](RunConfig& c, const std::string& v) { c.gen.kind = v; });
    ov.add(gen, "--grid", "Nodes per axis, e.g. 256x256", [](RunConfig& c, const std::string& v) { c.gen.grid = v; });
    ov.add(gen, "--extent", "Lengths per axis, e.g. 2x1", [](RunConfig& c, const std::string& v) { c.gen.extent = v; });
    ov.add(gen, "--alpha", "Target Hoelder exponent (fractional)",
           [](RunConfig& c, const std::string& v) { c.gen.alpha = to_double("--alpha", v); });
    ov.add(gen, "--cutoff", "Spectral cutoff (fractional)",
           [](RunConfig& c, const std::string& v) { c.gen.cutoff = static_cast<int>(to_int("--cutoff", v)); });
    ov.add(gen, "--seed", "Generator seed", [](RunConfig& c, const std::string& v) {
        const long long s = to_int("--seed", v);
        if (s < 0) fail(ErrorKind::precondition, "--seed must be non-negative");
        c.gen.seed = static_cast<std::uint64_t>(s);
    });
    ov.add(gen, "--nu", "Viscosity (viscous Taylor-Green)", [](RunConfig& c, const std::string& v) { c.gen.nu = to_double("--nu", v); });
    ov.add(gen, "--t", "Time of the first frame", [](RunConfig& c, const std::string& v) { c.gen.t = to_double("--t", v); });
    ov.add(gen, "--amplitude", "Amplitude (channel generators)",
           [](RunConfig& c, const std::string& v) { c.gen.amplitude = to_double("--amplitude", v); });
    ov.add(gen, "--shear-u", "Shear speed / Poiseuille centreline speed",
           [](RunConfig& c, const std::string& v) { c.gen.shear_u = to_double("--shear-u", v); });
    ov.add(gen, "--shear-w", "Secondary shear amplitude", [](RunConfig& c, const std::string& v) { c.gen.shear_w = to_double("--shear-w", v); });
    ov.add(gen, "--frames", "Number of snapshots",
           [](RunConfig& c, const std::string& v) { c.gen.frames = static_cast<int>(to_int("--frames", v)); });
    ov.add(gen, "--dt", "Time between snapshots", [](RunConfig& c, const std::string& v) { c.gen.dt = to_double("--dt", v); });
    gen->add_option("--out", out_flag, "Output .oflx file (one frame) or directory");

    auto* diag = app.add_subcommand("diagnose", "Scaling probes and the local weak energy identity");
    diag->add_option("input", input, "Snapshot file or trajectory directory")->required();
    ov.add(diag, "--alpha", "Hoelder exponent for the predicted slopes (default: estimated)",
           [](RunConfig& c, const std::string& v) { c.diagnose.alpha = to_double("--alpha", v); });
    ov.add(diag, "--eps", "Kernel radii in units of h, decreasing, e.g. 32,16,8,4",
           [](RunConfig& c, const std::string& v) { c.diagnose.eps_h = parse_list(v); });
    ov.add(diag, "--phi-radius", "Radius of the spatial test bump",
           [](RunConfig& c, const std::string& v) { c.diagnose.phi_radius = to_double("--phi-radius", v); });
    ov.add(diag, "--kappa", "Time mollification radius", [](RunConfig& c, const std::string& v) { c.diagnose.kappa = to_double("--kappa", v); });
    ov.flag(diag, "--identity", "Also evaluate the weak energy identity", [](RunConfig& c) { c.diagnose.identity = true; });
    diag->add_option("--out", out_flag, "Output directory");

    auto* bnd = app.add_subcommand("boundary", "Shell fluxes, global balance, conservation verdict, modulus check");
    bnd->add_option("input", input, "Snapshot file or trajectory directory")->required();
    ov.add(bnd, "--eta", "Decreasing shell ladder, e.g. 0.4,0.2,0.1", [](RunConfig& c, const std::string& v) { c.boundary.etas = parse_list(v); });
    ov.add(bnd, "--eta0", "Outer band (default 0.9 half width)", [](RunConfig& c, const std::string& v) { c.boundary.eta0 = to_double("--eta0", v); });
    ov.add(bnd, "--gamma", "Band of the modulus check (default: largest eta)",
           [](RunConfig& c, const std::string& v) { c.boundary.gamma = to_double("--gamma", v); });
    ov.add(bnd, "--energy-tol", "Relative energy drift counted as conservation",
           [](RunConfig& c, const std::string& v) { c.boundary.energy_tolerance = to_double("--energy-tol", v); });
    ov.add(bnd, "--beta", "Negative Sobolev exponent of the pressure check",
           [](RunConfig& c, const std::string& v) { c.boundary.beta = to_double("--beta", v); });
    bnd->add_option("--out", out_flag, "Output directory");

    auto* sweep = app.add_subcommand("sweep", "Vanishing-viscosity dissipation sweep");
    ov.add(sweep, "--grid", "Nodes per axis", [](RunConfig& c, const std::string& v) { c.sweep.grid = v; });
    ov.add(sweep, "--extent", "Lengths per axis", [](RunConfig& c, const std::string& v) { c.sweep.extent = v; });
    ov.add(sweep, "--initial", "Initial data kind", [](RunConfig& c, const std::string& v) { c.sweep.initial = v; });
    ov.add(sweep, "--amplitude", "Perturbation amplitude (channel)",
           [](RunConfig& c, const std::string& v) { c.sweep.amplitude = to_double("--amplitude", v); });
    ov.add(sweep, "--mean-speed", "Poiseuille centreline speed",
           [](RunConfig& c, const std::string& v) { c.sweep.mean_speed = to_double("--mean-speed", v); });
    ov.add(sweep, "--nu", "Decreasing viscosities, e.g. 1e-2,3e-3,1e-3", [](RunConfig& c, const std::string& v) { c.sweep.nus = parse_list(v); });
    ov.add(sweep, "--t-star", "Final time", [](RunConfig& c, const std::string& v) { c.sweep.t_star = to_double("--t-star", v); });
    ov.add(sweep, "--dt", "Time step bound", [](RunConfig& c, const std::string& v) { c.sweep.dt = to_double("--dt", v); });
    ov.add(sweep, "--cfl", "Advective CFL limit", [](RunConfig& c, const std::string& v) { c.sweep.cfl_limit = to_double("--cfl", v); });
    ov.add(sweep, "--eta", "Shells for the viscous flux matrix (channel)",
           [](RunConfig& c, const std::string& v) { c.sweep.etas = parse_list(v); });
    ov.add(sweep, "--frames", "Snapshots kept per run for the flux matrix",
           [](RunConfig& c, const std::string& v) { c.sweep.frames = static_cast<int>(to_int("--frames", v)); });
    ov.add(sweep, "--seed", "Seed recorded in the manifest", [](RunConfig& c, const std::string& v) {
        const long long s = to_int("--seed", v);
        if (s < 0) fail(ErrorKind::precondition, "--seed must be non-negative");
        c.seed = static_cast<std::uint64_t>(s);
    });
    sweep->add_option("--out", out_flag, "Output directory");

    auto* rep = app.add_subcommand("report", "Collect verdicts from output directories");
    rep->add_option("input", input, "Directory holding command outputs")->required();
    rep->add_option("--out", out_flag, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::Exit::rejected;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        ov.apply(cfg);
        if (gen->parsed()) {
            const std::string fallback = cfg.gen.kind + (cfg.gen.frames == 1 ? ".oflx" : "");
            return cli::cmd_gen(cfg, cli::resolve_output(out_flag, cfg, fallback));
        }
        if (diag->parsed()) return cli::cmd_diagnose(cfg, input, cli::resolve_output(out_flag, cfg, "diagnose"));
        if (bnd->parsed()) return cli::cmd_boundary(cfg, input, cli::resolve_output(out_flag, cfg, "boundary"));
        if (sweep->parsed()) return cli::cmd_sweep(cfg, cli::resolve_output(out_flag, cfg, "sweep"));
        if (rep->parsed()) return cli::cmd_report(cfg, input, cli::resolve_output(out_flag, cfg, "report"));
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.kind() == ErrorKind::internal ? cli::Exit::internal : cli::Exit::rejected;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return cli::Exit::internal;
    }
    return cli::Exit::internal;
}
