#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "vkg/analysis.hpp"
#include "vkg/error.hpp"

using namespace vkg;

namespace {

DensityParams poly6(double amplitude)
{
    DensityParams p;
    p.amplitude = amplitude;
    p.space_radius = 0.5;
    p.momentum_width = 1.0;
    p.bump = Bump1D{Bump1D::Kind::Poly, 6};
    return p;
}

} // namespace

TEST(Constants, MatchExtendedPrecision)
{
    EXPECT_DOUBLE_EQ(conjugate_exponent(INFINITY), 1.0);
    EXPECT_DOUBLE_EQ(conjugate_exponent(2.0), 2.0);
    EXPECT_DOUBLE_EQ(conjugate_exponent(3.0), 1.5);
    EXPECT_NEAR(constant_Cq(1.0), oracle::kCq_1, 1e-14);
    EXPECT_NEAR(constant_Cq(1.5), oracle::kCq_1_5, 1e-14);
    EXPECT_NEAR(constant_Cq(2.0), oracle::kCq_2, 1e-14);
    EXPECT_NEAR(constant_Cq(3.0), oracle::kCq_3, 1e-14);
    EXPECT_THROW(constant_Cq(0.5), DomainError);
    EXPECT_THROW(constant_Cq(3.5), DomainError);
    EXPECT_NEAR(threshold_rhs(1.0), oracle::kRhs_1, 1e-14);
    EXPECT_NEAR(threshold_rhs(1.5), oracle::kRhs_1_5, 1e-14);
    EXPECT_NEAR(threshold_rhs(2.0), oracle::kRhs_2, 1e-14);
    EXPECT_NEAR(sobolev_S3(), oracle::kSobolevS3, 1e-14);
    EXPECT_NEAR(constant_C_of_f(0.3, 7.0, 1.0), oracle::kCofF_n1_0_3_ninf_7_q1, 1e-14);
    EXPECT_NEAR(constant_C_of_f(2.0, 0.5, 1.5), oracle::kCofF_n1_2_np_0_5_q1_5, 1e-14);
}

TEST(Threshold, SatisfiedIffCSquaredBelowTwo)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logn(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double n1 = std::pow(10.0, logn(rng)), np = std::pow(10.0, logn(rng));
        const double p = i % 3 == 0 ? INFINITY : 2.0 + (i % 7);
        const ThresholdReport r = threshold_check(n1, np, p);
        EXPECT_EQ(r.satisfied, r.C * r.C < 2.0);
        EXPECT_NEAR(r.lhs / r.rhs, r.C * r.C / 2.0, 1e-12 * std::max(1.0, r.C * r.C));
        if (r.satisfied) {
            EXPECT_GT(r.epsilon, r.C * r.C / 2.0);
            EXPECT_LT(r.epsilon, 1.0);
        }
    }
    EXPECT_THROW(threshold_check(1.0, 1.0, 1.5), DomainError);
}

TEST(Threshold, ScalingLaw)
{
    const InitialDensity f(poly6(40.0));
    for (double lambda : {0.25, 2.0, 3.7}) {
        const InitialDensity g(poly6(40.0 * lambda));
        for (double p : {2.0, 4.0, static_cast<double>(INFINITY)})
            EXPECT_NEAR(constant_C_of_f(g, p), std::sqrt(lambda) * constant_C_of_f(f, p),
                        1e-12 * constant_C_of_f(g, p));
    }
    EXPECT_TRUE(threshold_check(f, INFINITY).satisfied);
    EXPECT_FALSE(threshold_check(InitialDensity(poly6(80.0)), INFINITY).satisfied);
}

TEST(Inequalities, ReportsAndDomains)
{
    EnergyBreakdown e;
    e.E_K = 1.0;
    e.E_C = 0.1;
    e.grad_norm2 = 0.04;
    e.rho65 = 0.5;
    const InequalityReport ie = interaction_estimate_check(e, 1.0);
    EXPECT_TRUE(ie.holds);
    EXPECT_NEAR(ie.rhs, 0.2, 1e-15);
    EXPECT_FALSE(interaction_estimate_check(e, 0.1).holds);
    EXPECT_NEAR(rho65_bound(1.0, 1.0, INFINITY, 4.0), std::pow(constant_Cq(1.0), 2.0 / 3.0) * 2.0, 1e-14);
    EXPECT_THROW(apriori_bound_check(e, 1.0, 0.5), DomainError);
    EXPECT_THROW(apriori_bound_check(e, 0.5, 1.0), DomainError);
    e.total = 2.0;
    e.ut_norm2 = 0.1;
    e.u_norm2 = 0.1;
    const AprioriReport ap = apriori_bound_check(e, 0.8, 1.0);
    EXPECT_TRUE(ap.holds);
    EXPECT_NEAR(ap.coefficient, 0.5 - 1.0 / 3.2, 1e-15);
}

TEST(TestFunctions, DerivativesAgreeWithDifferences)
{
    const auto suite = default_test_suite(0.5, 1.0, 0.5);
    ASSERT_EQ(suite.size(), 12u);
    const double h = 1e-5;
    for (const TestFunction& phi : suite) {
        EXPECT_GT(phi.t_center - phi.t_width, 0.0);
        EXPECT_LT(phi.t_center + phi.t_width, 0.5);
        const double t = phi.t_center + 0.3 * phi.t_width;
        EXPECT_NEAR(phi.time_d1(t), (phi.time(t + h) - phi.time(t - h)) / (2 * h), 1e-6);
        EXPECT_NEAR(phi.time_d2(t), (phi.time(t + h) - 2 * phi.time(t) + phi.time(t - h)) / (h * h), 1e-2);
        const Vec3 x = phi.x_center + Vec3{0.3 * phi.x_width.x, -0.2 * phi.x_width.y, 0.1 * phi.x_width.z};
        const Vec3 g = phi.space_grad(x);
        EXPECT_NEAR(g.x, (phi.space(x + Vec3{h, 0, 0}) - phi.space(x - Vec3{h, 0, 0})) / (2 * h), 1e-5);
        double lap = 0.0;
        for (const Vec3& e : {Vec3{h, 0, 0}, Vec3{0, h, 0}, Vec3{0, 0, h}})
            lap += (phi.space(x + e) - 2 * phi.space(x) + phi.space(x - e)) / (h * h);
        EXPECT_NEAR(phi.space_laplacian(x), lap, 1e-3 * std::max(1.0, std::abs(lap)));
        const Vec3 v = phi.v_center + Vec3{0.1, 0.0, -0.1} * phi.v_width.x;
        EXPECT_NEAR(phi.momentum_grad(v).z,
                    (phi.momentum(v + Vec3{0, 0, h}) - phi.momentum(v - Vec3{0, 0, h})) / (2 * h), 1e-5);
    }
}

TEST(WeakResiduals, ExactSolutionsAreSmall)
{
    const auto f = std::make_shared<const InitialDensity>(poly6(40.0));
    const double T = 0.5;
    const auto suite = default_test_suite(0.5, 1.0, T);
    const MomentQuadrature mq{16};

    // vacuum
    const auto zero = std::make_shared<const InitialDensity>(DensityParams{});
    ScalarAt zs = [](double, const Vec3&) { return 0.0; };
    GradAt zg = [](double, const Vec3&) { return Vec3{}; };
    const Residual rv = weak_vlasov_residual([&](double t) { return KineticState::initial(zero, t); }, zg, suite[0], T);
    EXPECT_EQ(rv.value, 0.0);
    EXPECT_EQ(weak_kg_residual(zs, zs, suite[0], T).value, 0.0);

    // free streaming and the uniform field u = g . x, which solves the KG equation with source -g . x
    const Vec3 g{0.3, -0.1, 0.2};
    const auto force = make_constant_force(g, T);
    for (int stream = 0; stream < 2; ++stream) {
        const ForcePtr fp = stream ? nullptr : force;
        StateAt state = [&](double t) { return KineticState::transported(f, fp, t, CharacteristicSpec{1.0 / 64}); };
        GradAt grad = [&](double, const Vec3&) { return stream ? Vec3{} : g; };
        ScalarAt rho = [&](double t, const Vec3& x) { return density_rho(state(t), x, mq); };
        GradAt j = [&](double t, const Vec3& x) { return current_j(state(t), x, mq); };
        for (std::size_t i : {0u, 5u, 11u}) {
            EXPECT_LT(weak_vlasov_residual(state, grad, suite[i], T).relative(), 1e-3) << i;
            EXPECT_LT(continuity_residual(rho, j, suite[i], T, ResidualQuadrature{6, 6, 8}).relative(), 1e-3) << i;
        }
    }
    ScalarAt u = [&](double, const Vec3& x) { return dot(g, x); };
    ScalarAt s = [&](double, const Vec3& x) { return -dot(g, x); };
    for (const TestFunction& phi : suite)
        EXPECT_LT(weak_kg_residual(u, s, phi, T).relative(), 1e-10);

    TestFunction late = suite[0];
    late.t_center = 0.45;
    EXPECT_THROW(weak_kg_residual(u, s, late, T), DomainError);
}
