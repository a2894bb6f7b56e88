#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "vkg/error.hpp"
#include "vkg/kinetic.hpp"

using namespace vkg;

namespace {

DensityParams poly6(double amplitude = 40.0)
{
    DensityParams p;
    p.amplitude = amplitude;
    p.space_radius = 0.5;
    p.momentum_width = 1.0;
    p.bump = Bump1D{Bump1D::Kind::Poly, 6};
    return p;
}

// int_0^1 s^2 (1 - s^2)^k ds
double shell(double k)
{
    return 0.5 * std::beta(1.5, k + 1.0);
}

} // namespace

TEST(Characteristics, RelativisticSpeedBelowOne)
{
    for (const Vec3& v : {Vec3{0, 0, 0}, Vec3{1, 2, 3}, Vec3{1e3, 0, 0}}) {
        const Vec3 vh = relativistic_velocity(v);
        EXPECT_LT(norm(vh), 1.0);
        EXPECT_NEAR(norm(vh), norm(v) / std::sqrt(1.0 + norm2(v)), 1e-15);
    }
}

TEST(Characteristics, FreeStreamingIsExact)
{
    const PhasePoint z{{0.1, 0.2, 0.3}, {1.0, -0.5, 0.25}};
    const PhasePoint back = trace_characteristic(nullptr, 0.5, z, 0.0);
    const Vec3 vh = relativistic_velocity(z.v);
    EXPECT_EQ(back.v, z.v);
    EXPECT_NEAR(back.x.x, z.x.x - 0.5 * vh.x, 1e-15);
    EXPECT_NEAR(back.x.y, z.x.y - 0.5 * vh.y, 1e-15);
    EXPECT_NEAR(back.x.z, z.x.z - 0.5 * vh.z, 1e-15);
}

TEST(Characteristics, ConstantForceMomentumAndReversibility)
{
    const auto force = make_constant_force({0.2, 0.0, -0.1}, 1.0);
    const PhasePoint z{{0.1, 0.0, 0.0}, {0.5, 0.5, 0.0}};
    const PhasePoint back = trace_characteristic(force.get(), 0.8, z, 0.0);
    // v' = -grad u, so going back by 0.8 adds 0.8 * grad u
    EXPECT_NEAR(back.v.x, 0.5 + 0.16, 1e-14);
    EXPECT_NEAR(back.v.y, 0.5, 1e-14);
    EXPECT_NEAR(back.v.z, -0.08, 1e-14);
    const PhasePoint fwd = trace_characteristic(force.get(), 0.0, back, 0.8);
    EXPECT_NEAR(norm(fwd.x - z.x), 0.0, 1e-10);
    EXPECT_NEAR(norm(fwd.v - z.v), 0.0, 1e-13);
}

TEST(InitialDensity, NormsMatchClosedForms)
{
    const InitialDensity f(poly6());
    const double scale = 40.0 * 0.125;
    EXPECT_NEAR(f.norm_l1().value, scale * oracle::kPolyL1_k6, 1e-13);
    EXPECT_LT(f.norm_l1().error, 1e-12);
    EXPECT_NEAR(f.norm_kin().value, scale * oracle::kPolyKinetic_k6, 1e-12);
    EXPECT_DOUBLE_EQ(f.sup(), 40.0);
    EXPECT_DOUBLE_EQ(f.norm_p(INFINITY).value, 40.0);
    const double l2 = 40.0 * std::sqrt(0.125) * 4.0 * M_PI * shell(12.0);
    EXPECT_NEAR(f.norm_p(2.0).value, l2, 1e-10 * l2);
    EXPECT_TRUE(f.is_radial());
    EXPECT_DOUBLE_EQ(f.momentum_radius(), 1.0);
    EXPECT_NEAR(f.initial_rho({0.1, 0, 0}), 40.0 * std::pow(1.0 - 0.04, 6) * 4.0 * M_PI * shell(6.0), 1e-12);
}

TEST(InitialDensity, RejectsInvalidParameters)
{
    DensityParams p = poly6();
    p.amplitude = -1.0;
    EXPECT_THROW(InitialDensity{p}, DomainError);
    p = poly6();
    p.space_radius = 0.0;
    EXPECT_THROW(InitialDensity{p}, DomainError);
}

TEST(KineticState, SupportIsShortCircuited)
{
    const auto f = std::make_shared<const InitialDensity>(poly6());
    const auto force = make_constant_force({0.5, 0, 0}, 1.0);
    const KineticState s = KineticState::transported(f, force, 0.5, CharacteristicSpec{1.0 / 32});
    EXPECT_DOUBLE_EQ(s.spatial_bound(), 1.0);
    EXPECT_DOUBLE_EQ(s.momentum_bound(), 1.25);
    for (double r : {1.0 + 1e-12, 1.3, 4.0})
        for (const Vec3& dir : {Vec3{1, 0, 0}, Vec3{0, -1, 0}, Vec3{0.6, 0.0, 0.8}}) {
            EXPECT_EQ(density_rho(s, r * dir), 0.0);
            EXPECT_EQ(s.eval_f(r * dir, {0.1, 0, 0}), 0.0);
        }
    EXPECT_EQ(s.eval_f({0, 0, 0}, {1.3, 0, 0}), 0.0);
}

TEST(KineticState, CurrentIsBoundedByDensity)
{
    const auto f = std::make_shared<const InitialDensity>(poly6());
    const KineticState s = KineticState::transported(f, make_constant_force({0.5, 0, 0.2}, 1.0), 0.3);
    for (const Vec3& x : {Vec3{0, 0, 0}, Vec3{0.2, 0.1, 0}, Vec3{-0.4, 0, 0.3}, Vec3{0.7, 0, 0}}) {
        const Moments m = velocity_moments(s, x);
        EXPECT_LE(norm(m.j), m.rho);
        EXPECT_GE(m.energy, m.rho);
    }
}

TEST(KineticState, MomentsOfTheStaticState)
{
    const auto f = std::make_shared<const InitialDensity>(poly6());
    const KineticState s = KineticState::initial(f);
    for (const Vec3& x : {Vec3{0, 0, 0}, Vec3{0.3, 0, 0}}) {
        const Moments m = velocity_moments(s, x, MomentQuadrature{16});
        EXPECT_NEAR(m.rho, f->initial_rho(x), 1e-4 * f->initial_rho({}));
        EXPECT_NEAR(norm(m.j), 0.0, 1e-12);
    }
}

TEST(KineticState, FreeStreamingConservesMass)
{
    const auto f = std::make_shared<const InitialDensity>(poly6(1.0));
    const PhaseQuadrature pq{16, MomentQuadrature{12}};
    const double m0 = mass(KineticState::initial(f), pq);
    const double m1 = mass(KineticState::transported(f, nullptr, 0.5), pq);
    EXPECT_NEAR(m0, f->norm_l1().value, 2e-3 * m0);
    EXPECT_NEAR(m1, m0, 2e-3 * m0);
    EXPECT_NEAR(kinetic_energy(KineticState::initial(f), pq), f->norm_kin().value, 2e-3 * m0);
}

TEST(KineticState, FrozenStateRepeatsTheFreezeTime)
{
    const auto f = std::make_shared<const InitialDensity>(poly6());
    const auto force = make_constant_force({0.3, 0, 0}, 1.0);
    const KineticState a = KineticState::transported(f, force, 0.4);
    const KineticState b = KineticState::frozen(f, force, 0.4, 0.7);
    const PhasePoint z{{0.2, 0.1, 0}, {0.1, 0, 0.2}};
    EXPECT_EQ(a.eval_f(z), b.eval_f(z));
    EXPECT_DOUBLE_EQ(b.time(), 0.7);
    EXPECT_DOUBLE_EQ(b.trace_time(), 0.4);
}

TEST(RadialMomentTable, MassAndIo)
{
    const auto f = std::make_shared<const InitialDensity>(poly6());
    const auto table = tabulate_radial_moments([&](double) { return KineticState::initial(f); }, {0.0, 0.25}, 1.0 / 64,
                                               40, MomentQuadrature{16});
    EXPECT_NEAR(table.mass(0), f->norm_l1().value, 2e-4 * f->norm_l1().value);
    EXPECT_NEAR(table.kinetic_energy(1), f->norm_kin().value, 2e-4 * f->norm_kin().value);
    EXPECT_EQ(table.max_abs_difference(table), 0.0);
    EXPECT_EQ(table.rho_at(0, 40), 0.0);
    const auto path = std::filesystem::temp_directory_path() / "vkg_moments.csv";
    table.write_csv(0, path.string());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "r,rho,j_r,energy_density");
    std::filesystem::remove(path);
}
