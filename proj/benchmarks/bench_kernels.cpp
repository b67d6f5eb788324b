// Timings for the hot loops: mollification, commutator stress, pressure solve,
// shell flux and one solver step.

#include "onsager/boundary_flux.hpp"
#include "onsager/commutator.hpp"
#include "onsager/mollify.hpp"
#include "onsager/ns_solver.hpp"
#include "onsager/pressure.hpp"
#include "onsager/synth.hpp"

#include <benchmark/benchmark.h>

#include <array>
#include <numbers>

using namespace onsager;

namespace {

Grid box(std::size_t n) {
    const std::array<std::size_t, 2> d{n, n};
    const std::array<double, 2> e{2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
    const std::array<AxisKind, 2> k{AxisKind::periodic, AxisKind::periodic};
    return make_grid(d, e, k);
}

Grid channel(std::size_t nx, std::size_t ny) {
    const std::array<std::size_t, 2> d{nx, ny};
    const std::array<double, 2> e{1.0, 1.0};
    const std::array<AxisKind, 2> k{AxisKind::periodic, AxisKind::wall};
    return make_grid(d, e, k);
}

void mollify(benchmark::State& st, MollifyPath path) {
    const Grid g = box(static_cast<std::size_t>(st.range(0)));
    const Snapshot s = fractional_field(0.4, default_cutoff(g), 1, g);
    const Mollifier m = make_mollifier(8.0 * g.spacing(0), g);
    const Region all = Region::all(g);
    for (auto _ : st) benchmark::DoNotOptimize(mollify_field(s.velocity[0], m, all, path));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(g.size()));
}

void BM_MollifyDirect(benchmark::State& st) { mollify(st, MollifyPath::direct); }
void BM_MollifySpectral(benchmark::State& st) { mollify(st, MollifyPath::spectral); }

void BM_CommutatorStress(benchmark::State& st) {
    const Grid g = box(static_cast<std::size_t>(st.range(0)));
    const Snapshot s = fractional_field(0.4, default_cutoff(g), 1, g);
    const Mollifier m = make_mollifier(4.0 * g.spacing(0), g);
    const Region all = Region::all(g);
    for (auto _ : st) benchmark::DoNotOptimize(commutator_stress(g, s.velocity, m, all));
}

void BM_PressurePeriodic(benchmark::State& st) {
    const Grid g = box(static_cast<std::size_t>(st.range(0)));
    const Snapshot s = fractional_field(0.6, default_cutoff(g), 2, g);
    for (auto _ : st) benchmark::DoNotOptimize(solve_pressure_periodic(s));
}

void BM_PressureChannel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const Snapshot s = cellular_channel(channel(n, n + 1), 1.0);
    for (auto _ : st) benchmark::DoNotOptimize(solve_pressure_channel(s));
}

void BM_ShellFlux(benchmark::State& st) {
    const Grid g = channel(128, 257);
    const Trajectory tr = frozen_trajectory(cellular_channel(g, 1.0), 5, 0.25);
    const Domain dom = Domain::channel(g);
    for (auto _ : st) benchmark::DoNotOptimize(shell_flux(tr, 0.1, dom));
}

void BM_SolverStep(benchmark::State& st) {
    SolverConfig c;
    c.grid = box(static_cast<std::size_t>(st.range(0)));
    c.nu = 1e-3;
    c.dt = 0.01;
    c.t_end = 1.0;
    c.initial.kind = GeneratorKind::taylor_green_steady;
    SolverState s = initial_state(c);
    for (auto _ : st) s = step(s, c, c.dt);
}

} // namespace

BENCHMARK(BM_MollifyDirect)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MollifySpectral)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorStress)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PressurePeriodic)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PressureChannel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShellFlux)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolverStep)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
