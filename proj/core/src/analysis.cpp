#include "vkg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vkg/error.hpp"
#include "vkg/parallel.hpp"

namespace vkg {

using std::numbers::pi;

double conjugate_exponent(double p)
{
    if (std::isinf(p))
        return 1.0;
    if (!(p > 1.0))
        throw DomainError("conjugate exponent needs p > 1");
    return p / (p - 1.0);
}

double constant_Cq(double q)
{
    if (!(q >= 1.0 && q <= 3.0))
        throw DomainError("constant_Cq: q must lie in [1, 3]");
    return std::pow(4.0 * pi / 3.0, 1.0 / (q + 3.0)) * (q + 3.0) / 3.0 * std::pow(3.0 / q, q / (q + 3.0));
}

double sobolev_S3() { return 3.0 * std::pow(pi / 2.0, 4.0 / 3.0); }

double constant_C_of_f(double norm1, double normp, double q)
{
    if (norm1 < 0.0 || normp < 0.0)
        throw DomainError("constant_C_of_f: norms must be nonnegative");
    if (!(q >= 1.0 && q <= 3.0))
        throw DomainError("constant_C_of_f: q must lie in [1, 3]");
    return std::sqrt(4.0 * q / pi) * std::pow(3.0, -7.0 / 6.0) * std::pow((q + 3.0) / q, (q + 3.0) / 6.0)
        * std::pow(norm1, (3.0 - q) / 6.0) * std::pow(normp, q / 6.0);
}

double constant_C_of_f(const InitialDensity& f, double p)
{
    return constant_C_of_f(f.norm_l1().value, f.norm_p(p).value, conjugate_exponent(p));
}

double threshold_rhs(double q)
{
    return pi / (2.0 * q) * std::pow(3.0, 7.0 / 3.0) * std::pow(q / (q + 3.0), (q + 3.0) / 3.0);
}

ThresholdReport threshold_check(double norm1, double normp, double p)
{
    if (!(p >= 2.0))
        throw DomainError("threshold_check: p must lie in [2, infinity]");
    ThresholdReport r;
    r.p = p;
    r.q = conjugate_exponent(p);
    r.norm1 = norm1;
    r.normp = normp;
    r.C = constant_C_of_f(norm1, normp, r.q);
    r.lhs = std::pow(norm1, (3.0 - r.q) / 3.0) * std::pow(normp, r.q / 3.0);
    r.rhs = threshold_rhs(r.q);
    r.satisfied = r.lhs < r.rhs;
    if (r.satisfied) {
        const double half = 0.5 * r.C * r.C;
        r.epsilon = std::min(1.0 - 1e-6, 0.5 * (half + 1.0));
    }
    return r;
}

ThresholdReport threshold_check(const InitialDensity& f, double p)
{
    return threshold_check(f.norm_l1().value, f.norm_p(p).value, p);
}

double rho65_bound(double norm1, double normp, double p, double kinetic_energy)
{
    if (kinetic_energy < 0.0)
        throw DomainError("rho65_bound: kinetic energy must be nonnegative");
    const double q = conjugate_exponent(p);
    return std::pow(constant_Cq(q), (q + 3.0) / 6.0) * std::pow(norm1, (3.0 - q) / 6.0) * std::pow(normp, q / 6.0)
        * std::sqrt(kinetic_energy);
}

// ---------------------------------------------------------------------------

namespace {

// 4 pi int r^2 w dr for samples on r_j = j h
double ball_integral(const std::vector<double>& w, double h)
{
    const auto sw = simpson_weights(w.size(), 0.0, h * static_cast<double>(w.size() - 1));
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double r = h * static_cast<double>(j);
        acc += sw[j] * r * r * w[j];
    }
    return 4.0 * pi * acc;
}

struct CompanionSamples {
    std::vector<double> u, ut, ur;
};

CompanionSamples sample_companion(const FieldSolution& c, double t, double h, std::size_t cells)
{
    CompanionSamples s;
    s.u.resize(cells + 1);
    s.ut.resize(cells + 1);
    s.ur.resize(cells + 1);
    const double hx = c.solver().spec().fd_step * c.solver().spec().scale;
    parallel_for(cells + 1, [&](std::size_t j) {
        const double r = h * static_cast<double>(j);
        s.u[j] = c.value(t, Vec3(r, 0, 0));
        s.ut[j] = c.time_derivative(t, Vec3(r, 0, 0));
        s.ur[j] = j == 0 ? 0.0 : (c.value(t, Vec3(r + hx, 0, 0)) - c.value(t, Vec3(r - hx, 0, 0))) / (2.0 * hx);
    });
    return s;
}

} // namespace

EnergyBreakdown energy_breakdown(const RegularizedSolution& sol, const FieldSolution& companion, std::size_t k)
{
    const double t = sol.times.at(k);
    EnergyBreakdown e;
    e.t = sol.window.t0 + t;
    const RadialMomentTable& m = *sol.moments;
    e.E_K = m.kinetic_energy(k);
    e.mass = m.mass(k);

    // field terms over the field-table ball, which contains supp u~(t)
    const double h = sol.field_table->spacing();
    const std::size_t cells = sol.field_table->cells();
    const CompanionSamples s = sample_companion(companion, t, h, cells);
    std::vector<double> ut2(cells + 1), ur2(cells + 1), u2(cells + 1);
    for (std::size_t j = 0; j <= cells; ++j) {
        ut2[j] = s.ut[j] * s.ut[j];
        ur2[j] = s.ur[j] * s.ur[j];
        u2[j] = s.u[j] * s.u[j];
    }
    e.ut_norm2 = ball_integral(ut2, h);
    e.grad_norm2 = ball_integral(ur2, h);
    e.u_norm2 = ball_integral(u2, h);
    e.E_F_tilde = 0.5 * (e.ut_norm2 + e.grad_norm2 + e.u_norm2);

    std::vector<double> ru(m.cells() + 1), r65(m.cells() + 1);
    for (std::size_t j = 0; j <= m.cells(); ++j) {
        const double rho = m.rho_at(k, j);
        ru[j] = rho * sol.field_table->value(t, m.radius(j));
        r65[j] = std::pow(std::max(rho, 0.0), 1.2);
    }
    e.E_C = ball_integral(ru, m.spacing());
    e.rho65 = std::pow(ball_integral(r65, m.spacing()), 5.0 / 6.0);
    e.total = e.E_K + e.E_F_tilde + e.E_C;
    return e;
}

std::vector<EnergyBreakdown> energy_series(const RegularizedSolution& sol, const FieldSolution& companion,
                                           const std::vector<std::size_t>& nodes)
{
    std::vector<EnergyBreakdown> out;
    for (std::size_t k : nodes)
        out.push_back(energy_breakdown(sol, companion, k));
    if (!out.empty()) {
        const double e0 = out.front().total;
        for (auto& e : out)
            e.drift = e0 != 0.0 ? (e.total - e0) / std::abs(e0) : e.total;
    }
    return out;
}

double companion_identity_error(const RegularizedSolution& sol, const FieldSolution& companion,
                                const Mollifier& mollifier, std::size_t k)
{
    const double t = sol.times.at(k);
    const double h = sol.field_table->spacing();
    const std::size_t cells = sol.field_table->cells();
    std::vector<double> u(cells + 1);
    parallel_for(cells + 1, [&](std::size_t j) { u[j] = companion.value(t, Vec3(h * static_cast<double>(j), 0, 0)); });
    const RadialProfile prof(h, u, RadialProfile::Interp::Cubic);
    const double ext = h * static_cast<double>(cells);
    const auto rule = composite_gauss_legendre(cells, 4, 0.0, ext);
    std::vector<double> vals(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        vals[i] = prof.value(rule.nodes[i]);
    const std::size_t stride = 4;
    const double reach = ext - mollifier.seed_radius();
    double err = 0.0;
    for (std::size_t j = 0; j <= cells; j += stride) {
        const double r = h * static_cast<double>(j);
        if (r > reach)
            break;
        const double conv = radial_convolve_at(mollifier.seed_kernel(), rule.nodes, rule.weights, vals, r);
        err = std::max(err, std::abs(conv - sol.field_table->u_at(k, j)));
    }
    return err;
}

InequalityReport interaction_estimate_check(const EnergyBreakdown& e, double C_of_f)
{
    InequalityReport r;
    r.t = e.t;
    r.lhs = std::abs(e.E_C);
    r.rhs = C_of_f * std::sqrt(e.grad_norm2) * std::sqrt(std::max(e.E_K, 0.0));
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-2);
    return r;
}

InequalityReport rho65_check(const EnergyBreakdown& e, double norm1, double normp, double p)
{
    InequalityReport r;
    r.t = e.t;
    r.lhs = e.rho65;
    r.rhs = rho65_bound(norm1, normp, p, std::max(e.E_K, 0.0));
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-2);
    return r;
}

AprioriReport apriori_bound_check(const EnergyBreakdown& e, double epsilon, double supC2, double tolerance)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("apriori_bound_check: epsilon must lie in (0, 1)");
    if (!(supC2 < 2.0 * epsilon))
        throw DomainError("apriori_bound_check: need sup C^2 < 2 epsilon");
    AprioriReport r;
    r.t = e.t;
    r.energy = e.total;
    r.coefficient = 0.5 - supC2 / (4.0 * epsilon);
    r.rhs = (1.0 - epsilon) * e.E_K + 0.5 * e.ut_norm2 + 0.5 * e.u_norm2 + r.coefficient * e.grad_norm2;
    r.holds = r.coefficient > 0.0 && r.energy >= r.rhs - tolerance;
    return r;
}

// ---------------------------------------------------------------------------

namespace {

const Bump1D kTestBump{Bump1D::Kind::Poly};

double tp(const Vec3& c, const Vec3& w, const Vec3& x)
{
    return kTestBump.value((x.x - c.x) / w.x) * kTestBump.value((x.y - c.y) / w.y) * kTestBump.value((x.z - c.z) / w.z);
}

Vec3 tp_grad(const Vec3& c, const Vec3& w, const Vec3& x)
{
    double b[3], d[3];
    for (int i = 0; i < 3; ++i) {
        const double s = (x[i] - c[i]) / w[i];
        b[i] = kTestBump.value(s);
        d[i] = kTestBump.derivative(s) / w[i];
    }
    return {d[0] * b[1] * b[2], b[0] * d[1] * b[2], b[0] * b[1] * d[2]};
}

} // namespace

double TestFunction::time(double t) const { return kTestBump.value((t - t_center) / t_width); }
double TestFunction::time_d1(double t) const { return kTestBump.derivative((t - t_center) / t_width) / t_width; }
double TestFunction::time_d2(double t) const
{
    return kTestBump.second_derivative((t - t_center) / t_width) / (t_width * t_width);
}
double TestFunction::space(const Vec3& x) const { return tp(x_center, x_width, x); }
Vec3 TestFunction::space_grad(const Vec3& x) const { return tp_grad(x_center, x_width, x); }
double TestFunction::space_laplacian(const Vec3& x) const
{
    double b[3], dd[3];
    for (int i = 0; i < 3; ++i) {
        const double s = (x[i] - x_center[i]) / x_width[i];
        b[i] = kTestBump.value(s);
        dd[i] = kTestBump.second_derivative(s) / (x_width[i] * x_width[i]);
    }
    return dd[0] * b[1] * b[2] + b[0] * dd[1] * b[2] + b[0] * b[1] * dd[2];
}
double TestFunction::momentum(const Vec3& v) const { return tp(v_center, v_width, v); }
Vec3 TestFunction::momentum_grad(const Vec3& v) const { return tp_grad(v_center, v_width, v); }

std::vector<TestFunction> default_test_suite(double R, double P, double T)
{
    struct Row {
        double tc, tw;
        Vec3 xc;
        double xw;
        Vec3 vc;
        double vw;
    };
    const Row rows[12] = {
        {0.50, 0.40, {0.00, 0.00, 0.00}, 0.30, {0.00, 0.00, 0.00}, 0.40},
        {0.50, 0.40, {0.20, 0.00, 0.00}, 0.25, {0.00, 0.00, 0.00}, 0.35},
        {0.40, 0.30, {0.00, 0.20, 0.10}, 0.25, {0.15, 0.00, 0.00}, 0.35},
        {0.60, 0.30, {-0.15, 0.10, 0.00}, 0.25, {0.00, -0.15, 0.10}, 0.35},
        {0.50, 0.30, {0.00, 0.00, 0.25}, 0.20, {0.00, 0.00, 0.20}, 0.30},
        {0.45, 0.35, {0.10, 0.10, 0.10}, 0.20, {0.10, 0.10, 0.00}, 0.30},
        {0.55, 0.35, {-0.20, -0.10, 0.05}, 0.20, {-0.20, 0.00, 0.00}, 0.30},
        {0.50, 0.25, {0.00, -0.25, 0.00}, 0.20, {0.00, -0.20, 0.00}, 0.30},
        {0.35, 0.25, {0.05, 0.00, -0.20}, 0.25, {0.00, 0.10, -0.15}, 0.35},
        {0.65, 0.25, {0.15, -0.15, 0.00}, 0.20, {0.20, -0.10, 0.00}, 0.30},
        {0.50, 0.45, {0.00, 0.10, -0.10}, 0.35, {0.00, 0.00, 0.10}, 0.45},
        {0.50, 0.20, {-0.05, 0.05, 0.20}, 0.15, {0.05, 0.05, 0.05}, 0.25},
    };
    std::vector<TestFunction> out;
    for (const Row& r : rows) {
        TestFunction f;
        f.t_center = r.tc * T;
        f.t_width = r.tw * T;
        f.x_center = R * r.xc;
        f.x_width = Vec3(r.xw * R, r.xw * R, r.xw * R);
        f.v_center = P * r.vc;
        f.v_width = Vec3(r.vw * P, r.vw * P, r.vw * P);
        out.push_back(f);
    }
    return out;
}

namespace {

void check_support(const TestFunction& phi, double horizon)
{
    if (!(phi.t_width > 0.0) || phi.t_center - phi.t_width < 0.0 || phi.t_center + phi.t_width > horizon * (1.0 + 1e-12))
        throw DomainError("test function: time support must lie inside (0, T)");
    for (int i = 0; i < 3; ++i)
        if (!(phi.x_width[i] > 0.0) || !(phi.v_width[i] > 0.0))
            throw DomainError("test function: widths must be positive");
}

struct Box3 {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
};

Box3 box_rule(const Vec3& c, const Vec3& w, std::size_t n)
{
    Box3 b;
    QuadratureRule r[3] = {gauss_legendre(n, c.x - w.x, c.x + w.x), gauss_legendre(n, c.y - w.y, c.y + w.y),
                           gauss_legendre(n, c.z - w.z, c.z + w.z)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                b.nodes.emplace_back(r[0].nodes[i], r[1].nodes[j], r[2].nodes[k]);
                b.weights.push_back(r[0].weights[i] * r[1].weights[j] * r[2].weights[k]);
            }
    return b;
}

struct Sums {
    double value = 0.0;
    double scale = 0.0;
};

Residual reduce(const std::vector<Sums>& s)
{
    Residual r;
    for (const auto& x : s) {
        r.value += x.value;
        r.scale += x.scale;
    }
    return r;
}

} // namespace

Residual weak_vlasov_residual(const StateAt& state, const GradAt& grad_u, const TestFunction& phi, double horizon,
                              const ResidualQuadrature& rq)
{
    check_support(phi, horizon);
    const auto tr = gauss_legendre(rq.time_nodes, phi.t_center - phi.t_width, phi.t_center + phi.t_width);
    const Box3 xb = box_rule(phi.x_center, phi.x_width, rq.space_nodes);
    const Box3 vb = box_rule(phi.v_center, phi.v_width, rq.momentum_nodes);
    const std::size_t nx = xb.nodes.size();
    std::vector<Sums> slot(tr.size() * nx);
    std::vector<KineticState> states;
    for (double t : tr.nodes)
        states.push_back(state(t));
    parallel_for(slot.size(), [&](std::size_t idx) {
        const std::size_t a = idx / nx, i = idx % nx;
        const double t = tr.nodes[a];
        const Vec3& x = xb.nodes[i];
        const double p1 = phi.time(t), dp1 = phi.time_d1(t);
        const double p2 = phi.space(x);
        const Vec3 g2 = phi.space_grad(x);
        const Vec3 gu = grad_u(t, x);
        Sums s;
        for (std::size_t b = 0; b < vb.nodes.size(); ++b) {
            const Vec3& v = vb.nodes[b];
            const double f = states[a].eval_f(x, v);
            if (f == 0.0)
                continue;
            const double p3 = phi.momentum(v);
            const double t1 = dp1 * p2 * p3;
            const double t2 = p1 * p3 * dot(relativistic_velocity(v), g2);
            const double t3 = -p1 * p2 * dot(gu, phi.momentum_grad(v));
            const double w = vb.weights[b] * f;
            s.value += w * (t1 + t2 + t3);
            s.scale += w * (std::abs(t1) + std::abs(t2) + std::abs(t3));
        }
        const double w = tr.weights[a] * xb.weights[i];
        s.value *= w;
        s.scale *= w;
        slot[idx] = s;
    });
    return reduce(slot);
}

Residual weak_kg_residual(const ScalarAt& u, const ScalarAt& density, const TestFunction& phi, double horizon,
                          const ResidualQuadrature& rq)
{
    check_support(phi, horizon);
    const auto tr = gauss_legendre(rq.time_nodes, phi.t_center - phi.t_width, phi.t_center + phi.t_width);
    const Box3 xb = box_rule(phi.x_center, phi.x_width, rq.space_nodes);
    const std::size_t nx = xb.nodes.size();
    std::vector<Sums> slot(tr.size() * nx);
    parallel_for(slot.size(), [&](std::size_t idx) {
        const std::size_t a = idx / nx, i = idx % nx;
        const double t = tr.nodes[a];
        const Vec3& x = xb.nodes[i];
        const double p1 = phi.time(t), p2 = phi.space(x);
        const double uu = u(t, x), rho = density(t, x);
        const double a1 = uu * phi.time_d2(t) * p2, a2 = -uu * p1 * phi.space_laplacian(x), a3 = uu * p1 * p2,
                     a4 = rho * p1 * p2;
        const double w = tr.weights[a] * xb.weights[i];
        slot[idx] = {w * (a1 + a2 + a3 + a4), w * (std::abs(a1) + std::abs(a2) + std::abs(a3) + std::abs(a4))};
    });
    return reduce(slot);
}

Residual continuity_residual(const ScalarAt& rho, const GradAt& j, const TestFunction& phi, double horizon,
                             const ResidualQuadrature& rq)
{
    check_support(phi, horizon);
    const auto tr = gauss_legendre(rq.time_nodes, phi.t_center - phi.t_width, phi.t_center + phi.t_width);
    const Box3 xb = box_rule(phi.x_center, phi.x_width, rq.space_nodes);
    const std::size_t nx = xb.nodes.size();
    std::vector<Sums> slot(tr.size() * nx);
    parallel_for(slot.size(), [&](std::size_t idx) {
        const std::size_t a = idx / nx, i = idx % nx;
        const double t = tr.nodes[a];
        const Vec3& x = xb.nodes[i];
        const double a1 = rho(t, x) * phi.time_d1(t) * phi.space(x);
        const double a2 = phi.time(t) * dot(j(t, x), phi.space_grad(x));
        const double w = tr.weights[a] * xb.weights[i];
        slot[idx] = {w * (a1 + a2), w * (std::abs(a1) + std::abs(a2))};
    });
    return reduce(slot);
}

std::vector<ResidualRow> solution_residuals(const RegularizedSolution& sol, const std::vector<TestFunction>& suite,
                                            const ResidualQuadrature& rq, bool limit_form)
{
    const double T = sol.horizon();
    const auto& m = *sol.moments;
    const auto& field = *sol.field;
    const auto& source = *sol.source;
    StateAt state = [&](double t) { return sol.state(t); };
    GradAt grad = [&](double t, const Vec3& x) { return field.gradient(t, x); };
    ScalarAt u = [&](double t, const Vec3& x) { return field.value(t, x); };
    ScalarAt dens;
    if (limit_form)
        dens = [&](double t, const Vec3& x) { return m.rho(t, norm(x)); };
    else
        dens = [&](double t, const Vec3& x) { return -source.value(t, x); };
    ScalarAt rho = [&](double t, const Vec3& x) { return m.rho(t, norm(x)); };
    GradAt j = [&](double t, const Vec3& x) {
        const double r = norm(x);
        return r > 0.0 ? (m.j_r(t, r) / r) * x : Vec3{};
    };
    std::vector<ResidualRow> rows;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        ResidualRow row;
        row.test = i;
        row.vlasov = weak_vlasov_residual(state, grad, suite[i], T, rq);
        row.kg = weak_kg_residual(u, dens, suite[i], T, rq);
        row.continuity = continuity_residual(rho, j, suite[i], T, rq);
        rows.push_back(row);
    }
    return rows;
}

} // namespace vkg
