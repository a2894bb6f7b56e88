#include "vkg/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vkg/error.hpp"
#include "vkg/parallel.hpp"

namespace vkg {

Vec3 relativistic_velocity(const Vec3& v) { return (1.0 / std::sqrt(1.0 + norm2(v))) * v; }

namespace {

struct Derivative {
    Vec3 dx, dv;
};

inline Derivative rhs(const ForceField* force, double s, const Vec3& x, const Vec3& v)
{
    return {relativistic_velocity(v), force ? -force->grad_u(s, x) : Vec3{}};
}

inline void rk4_step(const ForceField* force, double s, double h, Vec3& x, Vec3& v)
{
    const Derivative k1 = rhs(force, s, x, v);
    const Derivative k2 = rhs(force, s + 0.5 * h, x + (0.5 * h) * k1.dx, v + (0.5 * h) * k1.dv);
    const Derivative k3 = rhs(force, s + 0.5 * h, x + (0.5 * h) * k2.dx, v + (0.5 * h) * k2.dv);
    const Derivative k4 = rhs(force, s + h, x + h * k3.dx, v + h * k3.dv);
    x += (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    v += (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
}

std::size_t step_count(double span, double step)
{
    if (!(step > 0.0))
        throw DomainError("characteristic step must be positive");
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / step - 1e-9)));
}

// 4 pi int_0^1 s^2 b(s)^p ds on composite Gauss-Legendre panels
double radial_power_integral(const Bump1D& b, double p, std::size_t panels)
{
    const auto rule = composite_gauss_legendre(panels, 16, 0.0, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double s = rule.nodes[i];
        acc += rule.weights[i] * s * s * std::pow(b.value(s), p);
    }
    return 4.0 * std::numbers::pi * acc;
}

// int sqrt(1 + |v|^2) b(|v - c| / w) dv in spherical coordinates about c
double kinetic_weight_integral(const Bump1D& b, double w, double c, std::size_t panels)
{
    const auto rule = composite_gauss_legendre(panels, 16, 0.0, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double s = w * rule.nodes[i];
        const double base = 1.0 + s * s + c * c;
        const double lin = 2.0 * s * c;
        double angular;
        if (lin < 1e-8 * base)
            angular = 2.0 * std::sqrt(base);
        else
            angular = (2.0 / (3.0 * lin)) * (std::pow(base + lin, 1.5) - std::pow(base - lin, 1.5));
        acc += rule.weights[i] * s * s * b.value(rule.nodes[i]) * angular;
    }
    return 2.0 * std::numbers::pi * w * acc;
}

Estimate refine_pair(double coarse, double fine) { return {fine, std::abs(fine - coarse)}; }

} // namespace

PhasePoint trace_characteristic(const ForceField* force, double t, const PhasePoint& z, double s,
                                const CharacteristicSpec& spec)
{
    if (s == t)
        return z;
    if (force && (std::max(s, t) > force->horizon() * (1.0 + 1e-12) || std::min(s, t) < 0.0))
        throw DomainError("trace_characteristic: times outside the force horizon");
    const std::size_t n = step_count(std::abs(t - s), spec.step);
    const double h = (s - t) / static_cast<double>(n);
    Vec3 x = z.x, v = z.v;
    for (std::size_t i = 0; i < n; ++i)
        rk4_step(force, t + h * static_cast<double>(i), h, x, v);
    return {x, v};
}

// ---------------------------------------------------------------------------

InitialDensity::InitialDensity(DensityParams params) : params_{params}
{
    if (!(params_.amplitude >= 0.0) || !std::isfinite(params_.amplitude))
        throw DomainError("InitialDensity: amplitude must be finite and nonnegative");
    if (!(params_.space_radius > 0.0) || !(params_.momentum_width > 0.0))
        throw DomainError("InitialDensity: radii must be positive");
    const double a = params_.amplitude;
    const double r3 = std::pow(params_.space_radius, 3), w3 = std::pow(params_.momentum_width, 3);
    const Estimate space = refine_pair(radial_power_integral(params_.bump, 1.0, 8), radial_power_integral(params_.bump, 1.0, 16));
    const double c = norm(params_.momentum_center);
    const Estimate kin = refine_pair(kinetic_weight_integral(params_.bump, params_.momentum_width, c, 8),
                                     kinetic_weight_integral(params_.bump, params_.momentum_width, c, 16));
    l1_ = {a * r3 * w3 * space.value * space.value, a * r3 * w3 * 2.0 * space.value * space.error};
    kin_ = {a * r3 * space.value * kin.value, a * r3 * (space.error * kin.value + space.value * kin.error)};

    // sup over a radial node set, then golden-section refinement around the best node
    const Bump1D& b = params_.bump;
    double best_s = 0.0, best = b.value(0.0);
    for (int i = 1; i <= 256; ++i) {
        const double s = i / 256.0;
        if (b.value(s) > best) {
            best = b.value(s);
            best_s = s;
        }
    }
    double lo = std::max(0.0, best_s - 1.0 / 256.0), hi = std::min(1.0, best_s + 1.0 / 256.0);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 60; ++it) {
        const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
        if (b.value(m1) >= b.value(m2))
            hi = m2;
        else
            lo = m1;
    }
    best = std::max(best, b.value(0.5 * (lo + hi)));
    sup_ = a * best * best;
}

double InitialDensity::value(const PhasePoint& z) const
{
    if (params_.amplitude == 0.0)
        return 0.0;
    const double sx = norm(z.x) / params_.space_radius;
    if (sx >= 1.0)
        return 0.0;
    const double sv = norm(z.v - params_.momentum_center) / params_.momentum_width;
    if (sv >= 1.0)
        return 0.0;
    return params_.amplitude * params_.bump.value(sx) * params_.bump.value(sv);
}

Estimate InitialDensity::norm_p(double p) const
{
    if (std::isinf(p))
        return {sup_, 0.0};
    if (!(p >= 1.0))
        throw DomainError("norm_p: p must be >= 1");
    if (p == 1.0)
        return l1_;
    const double a = params_.amplitude;
    if (a == 0.0)
        return {0.0, 0.0};
    const Estimate m = refine_pair(radial_power_integral(params_.bump, p, 8), radial_power_integral(params_.bump, p, 16));
    const double scale = std::pow(params_.space_radius * params_.momentum_width, 3);
    const double integral = scale * m.value * m.value;
    const double value = a * std::pow(integral, 1.0 / p);
    const double rel = 2.0 * m.error / std::max(m.value, std::numeric_limits<double>::min()) / p;
    return {value, value * rel};
}

double InitialDensity::initial_rho(const Vec3& x) const
{
    const double sx = norm(x) / params_.space_radius;
    if (sx >= 1.0 || params_.amplitude == 0.0)
        return 0.0;
    const double m = std::pow(params_.momentum_width, 3) * radial_power_integral(params_.bump, 1.0, 16);
    return params_.amplitude * params_.bump.value(sx) * m;
}

// ---------------------------------------------------------------------------

KineticState::KineticState(DensityPtr density, ForcePtr force, double t, double trace, CharacteristicSpec spec,
                           Mode mode)
    : density_{std::move(density)}, force_{std::move(force)}, t_{t}, trace_{trace}, spec_{spec}, mode_{mode}
{
    if (!density_)
        throw DomainError("KineticState: density required");
    if (t_ < 0.0 || trace_ < 0.0)
        throw DomainError("KineticState: negative time");
    if (force_ && trace_ > force_->horizon() * (1.0 + 1e-12))
        throw DomainError("KineticState: time beyond the force horizon");
}

KineticState KineticState::initial(DensityPtr density, double t)
{
    return KineticState(std::move(density), nullptr, t, 0.0, {}, Mode::Static);
}

KineticState KineticState::transported(DensityPtr density, ForcePtr force, double t, CharacteristicSpec spec)
{
    return KineticState(std::move(density), std::move(force), t, t, spec, Mode::Transported);
}

KineticState KineticState::frozen(DensityPtr density, ForcePtr force, double t_freeze, double t, CharacteristicSpec spec)
{
    if (t_freeze > t)
        throw DomainError("KineticState: freeze time after the state time");
    return KineticState(std::move(density), std::move(force), t, t_freeze, spec, Mode::Static);
}

double KineticState::spatial_bound() const { return density_->space_radius() + trace_; }

double KineticState::momentum_bound() const
{
    const double p0 = density_->momentum_radius();
    if (!force_)
        return p0;
    return p0 + trace_ * force_->sup_bound();
}

double KineticState::eval_f(const PhasePoint& z) const
{
    const InitialDensity& f0 = *density_;
    if (f0.is_zero())
        return 0.0;
    const double top = trace_;
    if (top == 0.0)
        return f0.value(z);
    const double r0 = f0.space_radius(), p0 = f0.momentum_radius();
    const double fsup = force_ ? force_->sup_bound() : 0.0;
    if (norm(z.x) > r0 + top || norm(z.v) > p0 + top * fsup)
        return 0.0;
    const std::size_t n = step_count(top, spec_.step);
    const double h = -top / static_cast<double>(n);
    Vec3 x = z.x, v = z.v;
    const ForceField* force = force_.get();
    for (std::size_t i = 0; i < n; ++i) {
        const double s = top + h * static_cast<double>(i);
        rk4_step(force, s, h, x, v);
        // particles are slower than light and the force is bounded, so a
        // trajectory outside these balls at time tau started outside the support
        const double tau = std::max(0.0, s + h);
        if (norm2(x) > (r0 + tau) * (r0 + tau) || norm(v) > p0 + tau * fsup)
            return 0.0;
    }
    return f0.value(PhasePoint{x, v});
}

// ---------------------------------------------------------------------------

namespace {

QuadratureRule unit_rule(std::size_t n) { return gauss_legendre(n, -1.0, 1.0); }

} // namespace

Moments velocity_moments(const KineticState& state, const Vec3& x, const MomentQuadrature& mq)
{
    Moments m;
    if (state.density().is_zero() || norm(x) > state.spatial_bound())
        return m;
    const double p = state.momentum_bound();
    thread_local std::size_t cached_n = 0;
    thread_local QuadratureRule rule;
    if (cached_n != mq.nodes) {
        rule = unit_rule(mq.nodes);
        cached_n = mq.nodes;
    }
    const double p2 = p * p, w3 = p * p * p;
    for (std::size_t a = 0; a < rule.size(); ++a)
        for (std::size_t b = 0; b < rule.size(); ++b)
            for (std::size_t c = 0; c < rule.size(); ++c) {
                const Vec3 v(p * rule.nodes[a], p * rule.nodes[b], p * rule.nodes[c]);
                const double vv = norm2(v);
                if (vv > p2)
                    continue;
                const double f = state.eval_f(x, v);
                if (f == 0.0)
                    continue;
                const double w = w3 * rule.weights[a] * rule.weights[b] * rule.weights[c] * f;
                const double gamma = std::sqrt(1.0 + vv);
                m.rho += w;
                m.j += (w / gamma) * v;
                m.energy += w * gamma;
            }
    return m;
}

double density_rho(const KineticState& state, const Vec3& x, const MomentQuadrature& mq)
{
    return velocity_moments(state, x, mq).rho;
}

Vec3 current_j(const KineticState& state, const Vec3& x, const MomentQuadrature& mq)
{
    return velocity_moments(state, x, mq).j;
}

namespace {

template <class Weight>
double phase_integral(const KineticState& state, const PhaseQuadrature& pq, Weight pick)
{
    if (state.density().is_zero())
        return 0.0;
    const double r = state.spatial_bound();
    const auto rule = unit_rule(pq.space_nodes);
    const std::size_t n = rule.size();
    std::vector<double> slot(n * n * n, 0.0);
    parallel_for(slot.size(), [&](std::size_t idx) {
        const std::size_t a = idx % n, b = (idx / n) % n, c = idx / (n * n);
        const Vec3 x(r * rule.nodes[a], r * rule.nodes[b], r * rule.nodes[c]);
        slot[idx] = rule.weights[a] * rule.weights[b] * rule.weights[c] * pick(velocity_moments(state, x, pq.momentum));
    });
    double acc = 0.0;
    for (double s : slot)
        acc += s;
    return r * r * r * acc;
}

} // namespace

double mass(const KineticState& state, const PhaseQuadrature& pq)
{
    return phase_integral(state, pq, [](const Moments& m) { return m.rho; });
}

double kinetic_energy(const KineticState& state, const PhaseQuadrature& pq)
{
    return phase_integral(state, pq, [](const Moments& m) { return m.energy; });
}

// ---------------------------------------------------------------------------

RadialMomentTable::RadialMomentTable(std::vector<double> times, double spacing, std::vector<std::vector<double>> rho,
                                     std::vector<std::vector<double>> j_r, std::vector<std::vector<double>> energy)
    : times_{std::move(times)}, spacing_{spacing}, rho_{std::move(rho)}, jr_{std::move(j_r)}, energy_{std::move(energy)}
{
    if (times_.empty() || rho_.size() != times_.size() || jr_.size() != times_.size() || energy_.size() != times_.size())
        throw DomainError("RadialMomentTable: one row per time node required");
    for (std::size_t k = 0; k < times_.size(); ++k) {
        rho_prof_.emplace_back(spacing_, rho_[k], RadialProfile::Interp::Cubic, RadialProfile::Parity::Even);
        jr_prof_.emplace_back(spacing_, jr_[k], RadialProfile::Interp::Cubic, RadialProfile::Parity::Odd);
    }
}

double RadialMomentTable::rho(double t, double r) const
{
    if (times_.size() == 1)
        return rho_prof_[0].value(r);
    const auto [k, th] = locate_time(times_, t);
    return (1.0 - th) * rho_prof_[k].value(r) + th * rho_prof_[k + 1].value(r);
}

double RadialMomentTable::j_r(double t, double r) const
{
    if (times_.size() == 1)
        return jr_prof_[0].value(r);
    const auto [k, th] = locate_time(times_, t);
    return (1.0 - th) * jr_prof_[k].value(r) + th * jr_prof_[k + 1].value(r);
}

double RadialMomentTable::integrate_row(const std::vector<double>& row) const
{
    const auto w = simpson_weights(row.size(), 0.0, spacing_ * static_cast<double>(row.size() - 1));
    double acc = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
        const double r = radius(j);
        acc += w[j] * r * r * row[j];
    }
    return 4.0 * std::numbers::pi * acc;
}

void RadialMomentTable::write_csv(std::size_t k, const std::string& path) const
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    os << "r,rho,j_r,energy_density\n";
    char buf[128];
    for (std::size_t j = 0; j < rho_[k].size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", radius(j), rho_[k][j], jr_[k][j], energy_[k][j]);
        os << buf;
    }
}

double RadialMomentTable::max_abs_difference(const RadialMomentTable& other) const
{
    double d = 0.0;
    for (std::size_t k = 0; k < times_.size(); ++k)
        for (std::size_t j = 0; j < rho_[k].size(); ++j)
            d = std::max(d, std::abs(rho_[k][j] - other.rho(times_[k], radius(j))));
    return d;
}

RadialMomentTable tabulate_radial_moments(const std::function<KineticState(double)>& state_at,
                                          const std::vector<double>& times, double spacing, std::size_t cells,
                                          const MomentQuadrature& mq)
{
    const std::size_t nt = times.size(), nr = cells + 1;
    std::vector<std::vector<double>> rho(nt, std::vector<double>(nr)), jr = rho, en = rho;
    std::vector<KineticState> states;
    states.reserve(nt);
    for (double t : times) {
        states.push_back(state_at(t));
        if (!states.back().density().is_radial())
            throw DomainError("radial moments need a momentum bump centred at v = 0");
    }
    parallel_for(nt * nr, [&](std::size_t idx) {
        const std::size_t k = idx / nr, j = idx % nr;
        const Moments m = velocity_moments(states[k], Vec3(spacing * static_cast<double>(j), 0, 0), mq);
        rho[k][j] = m.rho;
        jr[k][j] = j == 0 ? 0.0 : m.j.x;
        en[k][j] = m.energy;
    });
    return RadialMomentTable(times, spacing, std::move(rho), std::move(jr), std::move(en));
}

void write_moment_snapshot(const KineticState& state, const BoxLattice& lattice, const MomentQuadrature& mq,
                           const std::string& path)
{
    std::vector<Moments> m(lattice.size());
    parallel_for(m.size(), [&](std::size_t i) { m[i] = velocity_moments(state, lattice.node(i), mq); });
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    os << "x,y,z,rho,jx,jy,jz\n";
    char buf[256];
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 x = lattice.node(i);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", x.x, x.y, x.z, m[i].rho, m[i].j.x,
                      m[i].j.y, m[i].j.z);
        os << buf;
    }
}

void write_f_slice(const KineticState& state, const Vec3& v, double half_width, std::size_t n, const std::string& path)
{
    if (n < 2)
        throw DomainError("write_f_slice: need n >= 2");
    std::vector<double> f(n * n);
    const double h = 2.0 * half_width / static_cast<double>(n - 1);
    parallel_for(f.size(), [&](std::size_t i) {
        const Vec3 x(-half_width + h * static_cast<double>(i % n), -half_width + h * static_cast<double>(i / n), 0.0);
        f[i] = state.eval_f(x, v);
    });
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    os << "x,y,f\n";
    char buf[128];
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", -half_width + h * static_cast<double>(i % n),
                      -half_width + h * static_cast<double>(i / n), f[i]);
        os << buf;
    }
}

} // namespace vkg
