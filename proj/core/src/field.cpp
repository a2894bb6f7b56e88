#include "vkg/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vkg/error.hpp"
#include "vkg/parallel.hpp"

namespace vkg {

// ---------------------------------------------------------------------------
// Spatial functions

double SpatialFunction::sphere_mean(const Vec3& x, double a, const SphereRule& rule) const
{
    return rule.mean([this](const Vec3& y) { return value(y); }, x, a);
}

double SpatialFunction::sphere_mean_deriv(const Vec3& x, double a, const SphereRule& rule) const
{
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Vec3& w = rule.directions()[i];
        acc += rule.weights()[i] * dot(gradient(x + a * w), w);
    }
    return acc;
}

namespace {

class ZeroFunction final : public SpatialFunction {
public:
    double value(const Vec3&) const override { return 0.0; }
    Vec3 gradient(const Vec3&) const override { return {}; }
    std::optional<double> support_radius() const override { return 0.0; }
    bool is_zero() const override { return true; }
    double sphere_mean(const Vec3&, double, const SphereRule&) const override { return 0.0; }
    double sphere_mean_deriv(const Vec3&, double, const SphereRule&) const override { return 0.0; }
};

class ConstantFunction final : public SpatialFunction {
public:
    explicit ConstantFunction(double c) : c_{c} {}
    double value(const Vec3&) const override { return c_; }
    Vec3 gradient(const Vec3&) const override { return {}; }
    bool is_zero() const override { return c_ == 0.0; }
    double sphere_mean(const Vec3&, double, const SphereRule&) const override { return c_; }
    double sphere_mean_deriv(const Vec3&, double, const SphereRule&) const override { return 0.0; }

private:
    double c_;
};

class LambdaFunction final : public SpatialFunction {
public:
    LambdaFunction(std::function<double(const Vec3&)> v, std::function<Vec3(const Vec3&)> g, std::optional<double> r)
        : value_{std::move(v)}, grad_{std::move(g)}, support_{r}
    {
    }
    double value(const Vec3& x) const override { return value_(x); }
    Vec3 gradient(const Vec3& x) const override { return grad_(x); }
    std::optional<double> support_radius() const override { return support_; }

private:
    std::function<double(const Vec3&)> value_;
    std::function<Vec3(const Vec3&)> grad_;
    std::optional<double> support_;
};

class RadialFunction final : public SpatialFunction {
public:
    explicit RadialFunction(RadialProfile p) : profile_{std::move(p)}
    {
        zero_ = std::all_of(profile_.values().begin(), profile_.values().end(), [](double v) { return v == 0.0; });
    }
    double value(const Vec3& x) const override { return profile_.value(norm(x)); }
    Vec3 gradient(const Vec3& x) const override
    {
        const double r = norm(x);
        if (r < 1e-300)
            return {};
        return (profile_.derivative(r) / r) * x;
    }
    std::optional<double> support_radius() const override { return profile_.extent(); }
    bool is_zero() const override { return zero_; }
    const RadialProfile* radial_profile() const override { return &profile_; }
    double sphere_mean(const Vec3& x, double a, const SphereRule&) const override
    {
        return profile_.sphere_mean(norm(x), a);
    }
    double sphere_mean_deriv(const Vec3& x, double a, const SphereRule&) const override
    {
        return profile_.sphere_mean_deriv(norm(x), a);
    }

private:
    RadialProfile profile_;
    bool zero_ = false;
};

} // namespace

SpatialFunctionPtr make_zero_function() { return std::make_shared<ZeroFunction>(); }
SpatialFunctionPtr make_constant_function(double c) { return std::make_shared<ConstantFunction>(c); }
SpatialFunctionPtr make_function(std::function<double(const Vec3&)> value, std::function<Vec3(const Vec3&)> gradient,
                                 std::optional<double> support_radius)
{
    return std::make_shared<LambdaFunction>(std::move(value), std::move(gradient), support_radius);
}
SpatialFunctionPtr make_radial_function(RadialProfile profile)
{
    return std::make_shared<RadialFunction>(std::move(profile));
}

std::optional<double> FieldData::support_radius() const
{
    double r = 0.0;
    for (const auto* f : {u1.get(), u2.get()}) {
        if (f->is_zero())
            continue;
        const auto s = f->support_radius();
        if (!s)
            return std::nullopt;
        r = std::max(r, *s);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Sources

double SpaceTimeSource::sphere_mean(double s, const Vec3& x, double a, const SphereRule& rule) const
{
    return rule.mean([this, s](const Vec3& y) { return value(s, y); }, x, a);
}

double SpaceTimeSource::sphere_mean_deriv(double s, const Vec3& x, double a, const SphereRule& rule) const
{
    const double h = 1e-4 * (1.0 + a);
    if (a > h)
        return (sphere_mean(s, x, a + h, rule) - sphere_mean(s, x, a - h, rule)) / (2.0 * h);
    return (sphere_mean(s, x, a + h, rule) - sphere_mean(s, x, a, rule)) / h;
}

const std::vector<double>& SpaceTimeSource::time_nodes() const
{
    static const std::vector<double> none;
    return none;
}

namespace {

class ZeroSource final : public SpaceTimeSource {
public:
    explicit ZeroSource(double horizon) : horizon_{horizon} {}
    double horizon() const override { return horizon_; }
    double value(double, const Vec3&) const override { return 0.0; }
    double sphere_mean(double, const Vec3&, double, const SphereRule&) const override { return 0.0; }
    bool is_zero() const override { return true; }
    std::optional<double> support_radius() const override { return 0.0; }

private:
    double horizon_;
};

class AnalyticSource final : public SpaceTimeSource {
public:
    AnalyticSource(std::function<double(double, const Vec3&)> g, double horizon, std::optional<double> r)
        : g_{std::move(g)}, horizon_{horizon}, support_{r}
    {
    }
    double horizon() const override { return horizon_; }
    double value(double s, const Vec3& y) const override { return g_(s, y); }
    std::optional<double> support_radius() const override { return support_; }

private:
    std::function<double(double, const Vec3&)> g_;
    double horizon_;
    std::optional<double> support_;
};

void validate_time_nodes(const std::vector<double>& t)
{
    if (t.size() < 2)
        throw DomainError("source history: need at least two time nodes");
    if (t.front() != 0.0)
        throw DomainError("source history: first time node must be 0");
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1]))
            throw DomainError("source history: time nodes must be strictly increasing");
}

double max_gap(const std::vector<double>& t)
{
    double gap = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k)
        gap = std::max(gap, t[k] - t[k - 1]);
    return gap;
}

} // namespace

SourcePtr make_zero_source(double horizon) { return std::make_shared<ZeroSource>(horizon); }
SourcePtr make_analytic_source(std::function<double(double, const Vec3&)> g, double horizon,
                               std::optional<double> support_radius)
{
    return std::make_shared<AnalyticSource>(std::move(g), horizon, support_radius);
}

std::pair<std::size_t, double> locate_time(const std::vector<double>& nodes, double s)
{
    if (s <= nodes.front())
        return {0, 0.0};
    if (s >= nodes.back())
        return {nodes.size() - 2, 1.0};
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), s);
    const auto k = static_cast<std::size_t>(it - nodes.begin()) - 1;
    return {k, (s - nodes[k]) / (nodes[k + 1] - nodes[k])};
}

Vec3 BoxLattice::node(std::size_t flat_index) const
{
    const std::size_t i = flat_index % extents[0];
    const std::size_t j = (flat_index / extents[0]) % extents[1];
    const std::size_t k = flat_index / (extents[0] * extents[1]);
    return node(i, j, k);
}

bool BoxLattice::covers_ball(double radius) const
{
    const Vec3 hi = upper();
    for (int d = 0; d < 3; ++d)
        if (origin[d] > -radius || hi[d] < radius)
            return false;
    return true;
}

BoxLattice BoxLattice::centered_cube(double half_width, double spacing)
{
    const auto cells = static_cast<std::size_t>(std::ceil(2.0 * half_width / spacing - 1e-9));
    BoxLattice lat;
    lat.spacing = spacing;
    const double w = 0.5 * spacing * static_cast<double>(cells);
    lat.origin = Vec3(-w, -w, -w);
    lat.extents = {cells + 1, cells + 1, cells + 1};
    return lat;
}

double BoxLattice::interpolate(const std::vector<double>& values, const Vec3& x) const
{
    std::array<std::size_t, 3> base{};
    std::array<double, 3> frac{};
    for (int d = 0; d < 3; ++d) {
        const double u = (x[d] - origin[d]) / spacing;
        const double top = static_cast<double>(extents[d] - 1);
        if (u < 0.0 || u > top)
            return 0.0;
        auto b = static_cast<std::size_t>(u);
        if (b >= extents[d] - 1)
            b = extents[d] >= 2 ? extents[d] - 2 : 0;
        base[d] = b;
        frac[d] = u - static_cast<double>(b);
    }
    double acc = 0.0;
    for (int c = 0; c < 8; ++c) {
        const std::size_t di = c & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
        const double w = (di ? frac[0] : 1 - frac[0]) * (dj ? frac[1] : 1 - frac[1]) * (dk ? frac[2] : 1 - frac[2]);
        if (w != 0.0)
            acc += w * values[flat(base[0] + di, base[1] + dj, base[2] + dk)];
    }
    return acc;
}

SourceHistory::SourceHistory(std::vector<double> time_nodes, BoxLattice lattice, std::vector<std::vector<double>> values)
    : times_{std::move(time_nodes)}, lattice_{lattice}, values_{std::move(values)}
{
    validate_time_nodes(times_);
    if (values_.size() != times_.size())
        throw DomainError("SourceHistory: one slice per time node required");
    all_zero_ = true;
    for (const auto& slice : values_) {
        if (slice.size() != lattice_.size())
            throw DomainError("SourceHistory: slice size does not match lattice");
        for (double v : slice) {
            if (!std::isfinite(v))
                throw DomainError("SourceHistory: non-finite value");
            if (v != 0.0)
                all_zero_ = false;
        }
    }
}

double SourceHistory::time_step() const { return max_gap(times_); }

double SourceHistory::value(double s, const Vec3& y) const
{
    const auto [k, th] = locate_time(times_, s);
    double v = 0.0;
    if (th < 1.0)
        v += (1.0 - th) * lattice_.interpolate(values_[k], y);
    if (th > 0.0)
        v += th * lattice_.interpolate(values_[k + 1], y);
    return v;
}

double SourceHistory::sphere_mean(double s, const Vec3& x, double a, const SphereRule& rule) const
{
    if (all_zero_)
        return 0.0;
    const auto [k, th] = locate_time(times_, s);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Vec3 y = x + a * rule.directions()[i];
        if (th < 1.0)
            lo += rule.weights()[i] * lattice_.interpolate(values_[k], y);
        if (th > 0.0)
            hi += rule.weights()[i] * lattice_.interpolate(values_[k + 1], y);
    }
    return (1.0 - th) * lo + th * hi;
}

RadialSourceHistory::RadialSourceHistory(std::vector<double> time_nodes, std::vector<RadialProfile> profiles)
    : times_{std::move(time_nodes)}, profiles_{std::move(profiles)}
{
    validate_time_nodes(times_);
    if (profiles_.size() != times_.size())
        throw DomainError("RadialSourceHistory: one profile per time node required");
    all_zero_ = true;
    for (const auto& p : profiles_) {
        if (p.size() != profiles_.front().size() || p.spacing() != profiles_.front().spacing())
            throw DomainError("RadialSourceHistory: profiles must share one radial grid");
        for (double v : p.values()) {
            if (!std::isfinite(v))
                throw DomainError("RadialSourceHistory: non-finite value");
            if (v != 0.0)
                all_zero_ = false;
        }
    }
}

double RadialSourceHistory::time_step() const { return max_gap(times_); }

std::optional<double> RadialSourceHistory::support_radius() const { return profiles_.front().extent(); }

double RadialSourceHistory::value_at_radius(double s, double r) const
{
    const auto [k, th] = locate_time(times_, s);
    double v = 0.0;
    if (th < 1.0)
        v += (1.0 - th) * profiles_[k].value(r);
    if (th > 0.0)
        v += th * profiles_[k + 1].value(r);
    return v;
}

double RadialSourceHistory::value(double s, const Vec3& y) const { return value_at_radius(s, norm(y)); }

double RadialSourceHistory::sphere_mean(double s, const Vec3& x, double a, const SphereRule&) const
{
    if (all_zero_)
        return 0.0;
    const double r = norm(x);
    const auto [k, th] = locate_time(times_, s);
    double v = 0.0;
    if (th < 1.0)
        v += (1.0 - th) * profiles_[k].sphere_mean(r, a);
    if (th > 0.0)
        v += th * profiles_[k + 1].sphere_mean(r, a);
    return v;
}

double RadialSourceHistory::sphere_mean_deriv(double s, const Vec3& x, double a, const SphereRule&) const
{
    if (all_zero_)
        return 0.0;
    const double r = norm(x);
    const auto [k, th] = locate_time(times_, s);
    double v = 0.0;
    if (th < 1.0)
        v += (1.0 - th) * profiles_[k].sphere_mean_deriv(r, a);
    if (th > 0.0)
        v += th * profiles_[k + 1].sphere_mean_deriv(r, a);
    return v;
}

// ---------------------------------------------------------------------------
// Solver

KleinGordonSolver::KleinGordonSolver(SolverSpec spec, double max_time)
    : spec_{spec},
      max_time_{max_time},
      sphere_{spec.quadrature.sphere_theta, spec.quadrature.sphere_phi},
      radial_unit_{gauss_legendre(spec.quadrature.radial_nodes, 0.0, 1.0)},
      panel_unit_{gauss_legendre(spec.quadrature.time_per_panel, 0.0, 1.0)},
      analytic_unit_{gauss_legendre(spec.analytic_time_nodes, 0.0, 1.0)},
      kernels_{std::make_shared<KernelTable>(max_time + 0.01, spec.kernel_spacing)}
{
    if (!(max_time > 0.0))
        throw DomainError("KleinGordonSolver: max_time must be positive");
}

std::array<double, 6> KleinGordonSolver::homogeneous_terms(const FieldData& data, double t, const Vec3& x) const
{
    if (!(t > 0.0))
        throw DomainError("homogeneous solution: t must be positive");
    if (t > max_time_)
        throw DomainError("homogeneous solution: t exceeds solver max_time");
    std::array<double, 6> terms{};
    const KernelTable& kt = *kernels_;
    if (!data.u1->is_zero()) {
        const double m = data.u1->sphere_mean(x, t, sphere_);
        terms[0] = m;
        terms[1] = t * data.u1->sphere_mean_deriv(x, t, sphere_);
        terms[2] = -0.5 * t * t * m;
        double ball = 0.0;
        for (std::size_t i = 0; i < radial_unit_.size(); ++i) {
            const double z = radial_unit_.nodes[i];
            const double rho = t * z;
            const double xi = t * std::sqrt(std::max(0.0, 1.0 - z * z));
            ball += radial_unit_.weights[i] * rho * rho * data.u1->sphere_mean(x, rho, sphere_) * kt.ratio_deriv_over_xi(xi);
        }
        terms[3] = -t * t * ball;
    }
    if (!data.u2->is_zero()) {
        terms[4] = t * data.u2->sphere_mean(x, t, sphere_);
        double ball = 0.0;
        for (std::size_t i = 0; i < radial_unit_.size(); ++i) {
            const double z = radial_unit_.nodes[i];
            const double rho = t * z;
            const double xi = t * std::sqrt(std::max(0.0, 1.0 - z * z));
            ball += radial_unit_.weights[i] * rho * rho * data.u2->sphere_mean(x, rho, sphere_) * kt.ratio(xi);
        }
        terms[5] = -t * ball;
    }
    return terms;
}

double KleinGordonSolver::homogeneous(const FieldData& data, double t, const Vec3& x) const
{
    const auto terms = homogeneous_terms(data, t, x);
    double u = 0.0;
    for (double v : terms)
        u += v;
    return u;
}

template <class Inner>
double KleinGordonSolver::time_integral(const SpaceTimeSource& source, double t, Inner&& inner) const
{
    double acc = 0.0;
    const auto& nodes = source.time_nodes();
    if (nodes.empty()) {
        for (std::size_t q = 0; q < analytic_unit_.size(); ++q)
            acc += t * analytic_unit_.weights[q] * inner(t * analytic_unit_.nodes[q]);
        return acc;
    }
    // panels between the interpolation breakpoints, so each panel sees a
    // source that is linear in s
    double lo = 0.0;
    for (std::size_t k = 1; k <= nodes.size() && lo < t; ++k) {
        const double hi = (k < nodes.size()) ? std::min(nodes[k], t) : t;
        const double h = hi - lo;
        if (h > 0.0)
            for (std::size_t q = 0; q < panel_unit_.size(); ++q)
                acc += h * panel_unit_.weights[q] * inner(lo + h * panel_unit_.nodes[q]);
        lo = hi;
    }
    return acc;
}

namespace {
void check_retarded_time(const SpaceTimeSource& source, double t, double max_time)
{
    if (!(t > 0.0) || t > source.horizon() * (1.0 + 1e-12))
        throw DomainError("inhomogeneous solution: t outside the covered source history");
    if (t > max_time)
        throw DomainError("inhomogeneous solution: t exceeds solver max_time");
}
} // namespace

double KleinGordonSolver::inhomogeneous(const SpaceTimeSource& source, double t, const Vec3& x) const
{
    check_retarded_time(source, t, max_time_);
    if (source.is_zero())
        return 0.0;
    const KernelTable& kt = *kernels_;
    return time_integral(source, t, [&](double s) {
        const double a = t - s;
        double ball = 0.0;
        for (std::size_t i = 0; i < radial_unit_.size(); ++i) {
            const double z = radial_unit_.nodes[i];
            const double rho = a * z;
            const double xi = a * std::sqrt(std::max(0.0, 1.0 - z * z));
            ball += radial_unit_.weights[i] * rho * rho * source.sphere_mean(s, x, rho, sphere_) * kt.ratio(xi);
        }
        return a * source.sphere_mean(s, x, a, sphere_) - a * ball;
    });
}

double KleinGordonSolver::inhomogeneous_time_derivative(const SpaceTimeSource& source, double t, const Vec3& x) const
{
    check_retarded_time(source, t, max_time_);
    if (source.is_zero())
        return 0.0;
    const KernelTable& kt = *kernels_;
    return time_integral(source, t, [&](double s) {
        const double a = t - s;
        const double m = source.sphere_mean(s, x, a, sphere_);
        double ball = 0.0;
        for (std::size_t i = 0; i < radial_unit_.size(); ++i) {
            const double z = radial_unit_.nodes[i];
            const double rho = a * z;
            const double xi = a * std::sqrt(std::max(0.0, 1.0 - z * z));
            ball += radial_unit_.weights[i] * rho * rho * source.sphere_mean(s, x, rho, sphere_)
                * kt.ratio_deriv_over_xi(xi);
        }
        return m + a * source.sphere_mean_deriv(s, x, a, sphere_) - 0.5 * a * a * m - a * a * ball;
    });
}

FieldSolution::FieldSolution(std::shared_ptr<const KleinGordonSolver> solver, FieldData data, SourcePtr source)
    : solver_{std::move(solver)}, data_{std::move(data)}, source_{std::move(source)}
{
    if (!solver_)
        throw DomainError("FieldSolution: solver required");
}

double FieldSolution::value(double t, const Vec3& x) const
{
    if (t < 0.0)
        throw DomainError("FieldSolution: negative time");
    if (t == 0.0)
        return data_.u1->value(x);
    double u = data_.is_zero() ? 0.0 : solver_->homogeneous(data_, t, x);
    if (source_ && !source_->is_zero())
        u += solver_->inhomogeneous(*source_, t, x);
    return u;
}

double FieldSolution::time_derivative(double t, const Vec3& x) const
{
    if (t < 0.0)
        throw DomainError("FieldSolution: negative time");
    if (t == 0.0)
        return data_.u2->value(x);
    double du = 0.0;
    if (!data_.is_zero()) {
        // the homogeneous part is defined up to the solver's max_time
        const double h = solver_->spec().fd_step * solver_->spec().scale;
        const double hh = std::min(h, t);
        const double top = solver_->max_time();
        auto hom = [&](double s) { return s == 0.0 ? data_.u1->value(x) : solver_->homogeneous(data_, s, x); };
        if (t + hh <= top)
            du = (hom(t + hh) - hom(t - hh)) / (2.0 * hh);
        else {
            const double hb = std::min(h, 0.5 * t);
            du = (3.0 * hom(t) - 4.0 * hom(t - hb) + hom(t - 2.0 * hb)) / (2.0 * hb);
        }
    }
    if (source_ && !source_->is_zero())
        du += solver_->inhomogeneous_time_derivative(*source_, t, x);
    return du;
}

Vec3 FieldSolution::gradient(double t, const Vec3& x) const
{
    const double h = solver_->spec().fd_step * solver_->spec().scale;
    Vec3 g;
    for (int d = 0; d < 3; ++d) {
        Vec3 xp = x, xm = x;
        xp[d] += h;
        xm[d] -= h;
        g[d] = (value(t, xp) - value(t, xm)) / (2.0 * h);
    }
    return g;
}

double eval_homogeneous(const KleinGordonSolver& solver, const FieldData& data, double t, const Vec3& x)
{
    return solver.homogeneous(data, t, x);
}

double eval_inhomogeneous(const KleinGordonSolver& solver, const SpaceTimeSource& source, double t, const Vec3& x)
{
    return solver.inhomogeneous(source, t, x);
}

FieldSample eval_field(const FieldSolution& sol, double t, const Vec3& x)
{
    FieldSample s;
    s.u = sol.value(t, x);
    s.du_dt = sol.time_derivative(t, x);
    s.grad_u = sol.gradient(t, x);
    return s;
}

SupNormReport supnorm_monitor(const FieldSolution& sol, double t, const std::vector<Vec3>& samples)
{
    SupNormReport rep;
    rep.t = t;
    double s_u1 = 0.0, s_grad = 0.0, s_u2 = 0.0, s_g = 0.0;
    const bool with_source = sol.source() && !sol.source()->is_zero() && t <= sol.source()->horizon();
    for (const Vec3& x : samples) {
        rep.max_abs_u = std::max(rep.max_abs_u, std::abs(sol.value(t, x)));
        s_u1 = std::max(s_u1, std::abs(sol.data().u1->value(x)));
        s_grad = std::max(s_grad, norm(sol.data().u1->gradient(x)));
        s_u2 = std::max(s_u2, std::abs(sol.data().u2->value(x)));
        if (with_source)
            s_g = std::max(s_g, std::abs(sol.source()->value(t, x)));
    }
    rep.data_norms = s_u1 + s_grad + s_u2 + s_g;
    rep.bound_factor = std::pow(1.0 + t, 4) * rep.data_norms;
    rep.ratio = rep.bound_factor > 0.0 ? rep.max_abs_u / rep.bound_factor : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Forces

namespace {

class ZeroForce final : public ForceField {
public:
    explicit ZeroForce(double h) : h_{h} {}
    double horizon() const override { return h_; }
    Vec3 grad_u(double, const Vec3&) const override { return {}; }
    double sup_bound() const override { return 0.0; }

private:
    double h_;
};

class ConstantForce final : public ForceField {
public:
    ConstantForce(const Vec3& g, double h) : g_{g}, h_{h} {}
    double horizon() const override { return h_; }
    Vec3 grad_u(double, const Vec3&) const override { return g_; }
    double sup_bound() const override { return norm(g_); }

private:
    Vec3 g_;
    double h_;
};

class FunctionForce final : public ForceField {
public:
    FunctionForce(std::function<Vec3(double, const Vec3&)> g, double h, double sup) : g_{std::move(g)}, h_{h}, sup_{sup} {}
    double horizon() const override { return h_; }
    Vec3 grad_u(double s, const Vec3& x) const override { return g_(s, x); }
    double sup_bound() const override { return sup_; }

private:
    std::function<Vec3(double, const Vec3&)> g_;
    double h_, sup_;
};

} // namespace

ForcePtr make_zero_force(double horizon) { return std::make_shared<ZeroForce>(horizon); }
ForcePtr make_constant_force(const Vec3& grad, double horizon) { return std::make_shared<ConstantForce>(grad, horizon); }
ForcePtr make_function_force(std::function<Vec3(double, const Vec3&)> grad, double horizon, double sup_bound)
{
    return std::make_shared<FunctionForce>(std::move(grad), horizon, sup_bound);
}

RadialFieldTable::RadialFieldTable(std::vector<double> time_nodes, double spacing, std::vector<std::vector<double>> u,
                                   std::vector<std::vector<double>> u_r)
    : times_{std::move(time_nodes)}, spacing_{spacing}, u_{std::move(u)}, ur_{std::move(u_r)}
{
    if (times_.size() < 2 || u_.size() != times_.size() || ur_.size() != times_.size())
        throw DomainError("RadialFieldTable: one row per time node required");
    for (std::size_t k = 0; k < times_.size(); ++k) {
        u_profiles_.emplace_back(spacing_, u_[k], RadialProfile::Interp::Cubic, RadialProfile::Parity::Even);
        ur_profiles_.emplace_back(spacing_, ur_[k], RadialProfile::Interp::Cubic, RadialProfile::Parity::Odd);
        for (double v : ur_[k])
            sup_ = std::max(sup_, std::abs(v));
    }
    // four-point interpolation can overshoot node values by at most 25%
    sup_ *= 1.25;
}

RadialFieldTable RadialFieldTable::fill(const FieldSolution& sol, const std::vector<double>& time_nodes, double spacing,
                                        std::size_t cells)
{
    const std::size_t nt = time_nodes.size(), nr = cells + 1;
    std::vector<std::vector<double>> u(nt, std::vector<double>(nr)), ur(nt, std::vector<double>(nr));
    const double h = std::min(sol.solver().spec().fd_step * sol.solver().spec().scale, 0.5 * spacing);
    parallel_for(nt * nr, [&](std::size_t idx) {
        const std::size_t k = idx / nr, j = idx % nr;
        const double t = time_nodes[k];
        const double r = spacing * static_cast<double>(j);
        u[k][j] = sol.value(t, Vec3(r, 0, 0));
        ur[k][j] = (j == 0) ? 0.0 : (sol.value(t, Vec3(r + h, 0, 0)) - sol.value(t, Vec3(r - h, 0, 0))) / (2.0 * h);
    });
    return RadialFieldTable(time_nodes, spacing, std::move(u), std::move(ur));
}

double RadialFieldTable::value(double s, double r) const
{
    const auto [k, th] = locate_time(times_, s);
    return (1.0 - th) * u_profiles_[k].value(r) + th * u_profiles_[k + 1].value(r);
}

double RadialFieldTable::radial_derivative(double s, double r) const
{
    const auto [k, th] = locate_time(times_, s);
    return (1.0 - th) * ur_profiles_[k].value(r) + th * ur_profiles_[k + 1].value(r);
}

Vec3 RadialFieldTable::grad_u(double s, const Vec3& x) const
{
    const double r = norm(x);
    if (r < 1e-300)
        return {};
    return (radial_derivative(s, r) / r) * x;
}

BoxFieldTable BoxFieldTable::fill(const FieldSolution& sol, const std::vector<double>& time_nodes, const BoxLattice& lattice)
{
    BoxFieldTable tab;
    tab.times_ = time_nodes;
    tab.lattice_ = lattice;
    const std::size_t nt = time_nodes.size(), nx = lattice.size();
    tab.u_.assign(nt, std::vector<double>(nx));
    for (auto& g : tab.grad_)
        g.assign(nt, std::vector<double>(nx));
    parallel_for(nt * nx, [&](std::size_t idx) {
        const std::size_t k = idx / nx, i = idx % nx;
        const Vec3 x = lattice.node(i);
        tab.u_[k][i] = sol.value(time_nodes[k], x);
        const Vec3 g = sol.gradient(time_nodes[k], x);
        for (int d = 0; d < 3; ++d)
            tab.grad_[static_cast<std::size_t>(d)][k][i] = g[d];
    });
    for (std::size_t k = 0; k < nt; ++k)
        for (std::size_t i = 0; i < nx; ++i)
            tab.sup_ = std::max(tab.sup_, norm(Vec3(tab.grad_[0][k][i], tab.grad_[1][k][i], tab.grad_[2][k][i])));
    return tab;
}

Vec3 BoxFieldTable::grad_u(double s, const Vec3& x) const
{
    const auto [k, th] = locate_time(times_, s);
    Vec3 g;
    for (int d = 0; d < 3; ++d) {
        const auto& comp = grad_[static_cast<std::size_t>(d)];
        g[d] = (1.0 - th) * lattice_.interpolate(comp[k], x) + th * lattice_.interpolate(comp[k + 1], x);
    }
    return g;
}

double BoxFieldTable::value(double s, const Vec3& x) const
{
    const auto [k, th] = locate_time(times_, s);
    return (1.0 - th) * lattice_.interpolate(u_[k], x) + th * lattice_.interpolate(u_[k + 1], x);
}

} // namespace vkg
