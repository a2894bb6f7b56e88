#include <cmath>

#include <benchmark/benchmark.h>

#include "vkg/analysis.hpp"
#include "vkg/field.hpp"
#include "vkg/kinetic.hpp"
#include "vkg/picard.hpp"
#include "vkg/specfun.hpp"

using namespace vkg;

namespace {

DensityParams reference_density()
{
    DensityParams p;
    p.amplitude = 40.0;
    p.space_radius = 0.5;
    p.momentum_width = 1.0;
    p.bump = Bump1D{Bump1D::Kind::Poly, 6};
    return p;
}

void BM_BesselRatio(benchmark::State& state)
{
    double xi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(j1_ratio_deriv(xi));
        xi = xi < 50.0 ? xi + 0.37 : 0.0;
    }
}
BENCHMARK(BM_BesselRatio);

void BM_HomogeneousField(benchmark::State& state)
{
    const KleinGordonSolver solver;
    FieldData d;
    d.u1 = make_radial_function(RadialProfile::sample(
        [](double r) { return r < 1.0 ? std::pow(1.0 - r * r, 4) : 0.0; }, 1.0, 1024));
    for (auto _ : state)
        benchmark::DoNotOptimize(solver.homogeneous(d, 0.4, {0.3, 0.1, 0.0}));
}
BENCHMARK(BM_HomogeneousField)->Unit(benchmark::kMicrosecond);

void BM_TraceCharacteristic(benchmark::State& state)
{
    const auto force = make_constant_force({0.2, -0.1, 0.05}, 1.0);
    const PhasePoint z{{0.1, 0.2, 0.0}, {0.4, 0.0, -0.3}};
    for (auto _ : state)
        benchmark::DoNotOptimize(trace_characteristic(force.get(), 0.5, z, 0.0));
}
BENCHMARK(BM_TraceCharacteristic)->Unit(benchmark::kMicrosecond);

void BM_VelocityMoments(benchmark::State& state)
{
    const auto f = std::make_shared<const InitialDensity>(reference_density());
    const KineticState s = KineticState::transported(f, make_constant_force({0.3, 0, 0}, 1.0), 0.25);
    const MomentQuadrature mq{static_cast<std::size_t>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(velocity_moments(s, {0.2, 0.1, 0.0}, mq));
}
BENCHMARK(BM_VelocityMoments)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_PicardCoarse(benchmark::State& state)
{
    InitialData d;
    d.density = std::make_shared<const InitialDensity>(reference_density());
    const Bump1D b;
    d.field.u1 = make_radial_function(RadialProfile::sample([=](double r) { return 0.1 * b.value(r); }, 1.0, 1024));
    const Mollifier m = make_mollifier(2);
    const WindowData w = make_initial_window(d, m);
    IterationConfig c;
    c.horizon = 0.25;
    c.momentum = MomentQuadrature{8};
    c.moment_spacing = 1.0 / 32;
    c.field_spacing = 1.0 / 64;
    c.gap_samples = 512;
    c.gap_momentum_nodes = 4;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_picard(w, c, m).report.iterations);
}
BENCHMARK(BM_PicardCoarse)->Unit(benchmark::kMillisecond)->Iterations(2);

} // namespace

BENCHMARK_MAIN();
