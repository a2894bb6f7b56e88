#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "vkg/error.hpp"
#include "vkg/picard.hpp"

using namespace vkg;

namespace {

InitialData bump_data(double amplitude)
{
    DensityParams p;
    p.amplitude = amplitude;
    p.space_radius = 0.5;
    p.momentum_width = 1.0;
    p.bump = Bump1D{Bump1D::Kind::Poly, 6};
    InitialData d;
    d.density = std::make_shared<const InitialDensity>(p);
    const Bump1D b;
    d.field.u1 = make_radial_function(RadialProfile::sample([=](double r) { return 0.1 * b.value(r); }, 1.0, 1024));
    return d;
}

IterationConfig coarse()
{
    IterationConfig c;
    c.horizon = 0.25;
    c.steps_per_unit = 16;
    c.momentum = MomentQuadrature{8};
    c.moment_spacing = 1.0 / 32;
    c.field_spacing = 1.0 / 64;
    c.gap_samples = 512;
    c.gap_momentum_nodes = 4;
    return c;
}

} // namespace

TEST(IterationConfig, NodesAndValidation)
{
    IterationConfig c;
    c.horizon = 0.5;
    c.steps_per_unit = 16;
    EXPECT_EQ(c.time_steps(), 8u);
    const auto t = c.time_nodes();
    ASSERT_EQ(t.size(), 9u);
    EXPECT_EQ(t.front(), 0.0);
    EXPECT_DOUBLE_EQ(t.back(), 0.5);
    EXPECT_DOUBLE_EQ(c.time_step(), 1.0 / 16);
    c.gap_tolerance = 0.0;
    EXPECT_THROW(c.validate(), DomainError);
    c = IterationConfig{};
    c.max_iterations = 0;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(Mollify, PreservesMassOfRadialData)
{
    const Mollifier m = make_mollifier(4);
    const auto g = make_radial_function(
        RadialProfile::sample([](double r) { return r < 1.0 ? std::pow(1.0 - r * r, 3) : 0.0; }, 1.0, 512));
    const auto s = mollify(*g, m.pair_kernel(), 1.0 / 512);
    auto mass = [](const SpatialFunction& f, double R) {
        double acc = 0.0;
        const int n = 4000;
        for (int i = 0; i < n; ++i) {
            const double r = (i + 0.5) * R / n;
            acc += r * r * f.value({r, 0, 0});
        }
        return 4.0 * M_PI * acc * R / n;
    };
    ASSERT_TRUE(s->support_radius().has_value());
    EXPECT_NEAR(*s->support_radius(), 1.5, 1e-2);
    EXPECT_NEAR(mass(*s, 1.6), mass(*g, 1.0), 1e-4);
    EXPECT_TRUE(mollify(*make_zero_function(), m.pair_kernel(), 0.01)->is_zero());
}

TEST(Source, RadialSourceCarriesMinusTheMass)
{
    const auto d = bump_data(40.0);
    const IterationConfig c = coarse();
    const auto table = tabulate_radial_moments([&](double) { return KineticState::initial(d.density); },
                                               {0.0, 0.25}, c.moment_spacing, 24, c.momentum);
    const Mollifier m = make_mollifier(2);
    const auto src = build_radial_source(table, m.pair_kernel(), c.field_spacing, 112);
    const RadialProfile& p = src->profile(0);
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
        const double r = p.node(j) + 0.5 * p.spacing();
        acc += r * r * p.value(r);
    }
    EXPECT_NEAR(4.0 * M_PI * acc * p.spacing(), -table.mass(0), 1e-3 * table.mass(0));
    EXPECT_THROW(build_radial_source(table, m.pair_kernel(), c.field_spacing, 20), DomainError);
}

TEST(Source, BoxLatticeMustCoverTheSupport)
{
    const Mollifier m = make_mollifier(2);
    const BoxLattice small = BoxLattice::centered_cube(0.5, 0.125);
    const std::vector<std::vector<double>> rho(2, std::vector<double>(small.size(), 1.0));
    try {
        build_source({0.0, 0.1}, rho, m, small, 1.5);
        FAIL() << "expected a domain error";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("1.5"), std::string::npos);
    }
}

TEST(Source, BoxAssemblyAgreesWithRadialConvolution)
{
    const Mollifier m = make_mollifier(2);
    const BoxLattice lat = BoxLattice::centered_cube(1.75, 0.125);
    auto rho_fn = [](double r) { return r < 0.5 ? std::pow(1.0 - 4.0 * r * r, 4) : 0.0; };
    std::vector<double> slice(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i)
        slice[i] = rho_fn(norm(lat.node(i)));
    const SourceHistory box = build_source({0.0, 0.1}, {slice, slice}, m, lat, 0.5);
    std::vector<std::vector<double>> rows(2, std::vector<double>(33));
    for (std::size_t j = 0; j <= 32; ++j)
        rows[0][j] = rows[1][j] = rho_fn(j / 64.0);
    const RadialMomentTable table({0.0, 0.1}, 1.0 / 64, rows, rows, rows);
    const auto radial = build_radial_source(table, m.pair_kernel(), 1.0 / 64, 112);
    for (double r : {0.0, 0.25, 0.5, 1.0})
        EXPECT_NEAR(box.value(0.05, {r, 0, 0}), radial->value(0.05, {r, 0, 0}), 2e-2) << "r = " << r;
}

TEST(Picard, VacuumConvergesInOneIteration)
{
    InitialData d;
    d.density = std::make_shared<const InitialDensity>(DensityParams{});
    const Mollifier m = make_mollifier(2);
    const auto sol = run_picard(make_initial_window(d, m), coarse(), m);
    EXPECT_TRUE(sol.report.converged);
    EXPECT_EQ(sol.report.iterations, 1u);
    EXPECT_EQ(sol.report.gaps, std::vector<double>{0.0});
    for (std::size_t k = 0; k < sol.times.size(); ++k)
        EXPECT_EQ(sol.moments->mass(k), 0.0);
}

TEST(Picard, BumpRunContractsAndIsDeterministic)
{
    const Mollifier m = make_mollifier(2);
    const WindowData w = make_initial_window(bump_data(40.0), m);
    const IterationConfig c = coarse();
    const auto a = run_picard(w, c, m);
    ASSERT_TRUE(a.report.converged);
    ASSERT_GE(a.report.gaps.size(), 2u);
    for (std::size_t i = 1; i < a.report.gaps.size(); ++i)
        EXPECT_LT(a.report.gaps[i], a.report.gaps[i - 1]);
    EXPECT_LT(a.report.gaps.back(), c.gap_tolerance);
    const auto b = run_picard(w, c, m);
    EXPECT_EQ(a.report.gaps, b.report.gaps);
    EXPECT_EQ(a.moments->max_abs_difference(*b.moments), 0.0);
    // mass is carried by the transport; the 8-node momentum rule limits the accuracy
    EXPECT_NEAR(a.moments->mass(a.times.size() - 1), a.moments->mass(0), 5e-3 * a.moments->mass(0));
    // support transport: nothing beyond R0 + t
    const double t = a.times.back();
    EXPECT_EQ(density_rho(a.state(t), {0.5 + t + 1e-9, 0, 0}), 0.0);
}

TEST(Picard, BoxGeometryIsRejectedForTheCoupledRun)
{
    const Mollifier m = make_mollifier(2);
    IterationConfig c = coarse();
    c.geometry = Geometry::Box;
    EXPECT_THROW(run_picard(make_initial_window(bump_data(1.0), m), c, m), DomainError);
}

TEST(Picard, CheckpointsAreWritten)
{
    const Mollifier m = make_mollifier(2);
    IterationConfig c = coarse();
    c.checkpoint_dir = (std::filesystem::temp_directory_path() / "vkg_ckpt").string();
    std::filesystem::remove_all(c.checkpoint_dir);
    const auto sol = run_picard(make_initial_window(bump_data(10.0), m), c, m);
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(c.checkpoint_dir) / "source_iter_1.csv"));
    const auto back = RadialSourceHistory::read_csv(
        (std::filesystem::path(c.checkpoint_dir) / ("source_iter_" + std::to_string(sol.report.iterations) + ".csv"))
            .string());
    EXPECT_EQ(back.time_nodes(), sol.times);
    std::filesystem::remove_all(c.checkpoint_dir);
}

TEST(Windows, ChainedForceAndRestart)
{
    const Mollifier m = make_mollifier(2);
    const IterationConfig c = coarse();
    const auto first = run_picard(make_initial_window(bump_data(20.0), m), c, m);
    const auto companion = solve_companion(first, m);
    const WindowData next = next_window(first, *companion);
    EXPECT_DOUBLE_EQ(next.t0, c.horizon);
    ASSERT_TRUE(next.history);
    const Vec3 x{0.3, 0.1, 0.0};
    const Vec3 g0 = next.history->grad_u(0.1, x), g1 = first.kinetic_force->grad_u(0.1, x);
    EXPECT_EQ(g0, g1);
    // the restarted field data reproduce u(T)
    const double uT = first.field->value(c.horizon, x);
    EXPECT_NEAR(next.field.u1->value(x), uT, 1e-4 * std::max(1.0, std::abs(uT)));
    const auto second = run_picard(next, c, m);
    EXPECT_TRUE(second.report.converged);
    EXPECT_NEAR(second.moments->mass(0), first.moments->mass(first.times.size() - 1), 1e-3 * first.moments->mass(0));
}
