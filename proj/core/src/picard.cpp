#include "vkg/picard.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "vkg/error.hpp"
#include "vkg/parallel.hpp"

namespace vkg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t cells_for(double extent, double spacing)
{
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(extent / spacing - 1e-9)));
}

class ChainedForce final : public ForceField {
public:
    ChainedForce(ForcePtr early, ForcePtr late, double t0) : early_{std::move(early)}, late_{std::move(late)}, t0_{t0} {}
    double horizon() const override { return t0_ + late_->horizon(); }
    Vec3 grad_u(double s, const Vec3& x) const override
    {
        if (s <= t0_)
            return early_->grad_u(s, x);
        return late_->grad_u(s - t0_, x);
    }
    double sup_bound() const override { return std::max(early_->sup_bound(), late_->sup_bound()); }

private:
    ForcePtr early_, late_;
    double t0_;
};

// Non-radial data: the convolution is evaluated on the fly by ball quadrature.
class BallConvolution final : public SpatialFunction {
public:
    BallConvolution(SpatialFunctionPtr g, const RadialKernel& k) : g_{std::move(g)}, k_{k}, sphere_{8, 16}
    {
        const auto radial = gauss_legendre(12, 0.0, k_.support());
        for (std::size_t i = 0; i < radial.size(); ++i) {
            const double r = radial.nodes[i];
            for (std::size_t j = 0; j < sphere_.size(); ++j) {
                offsets_.push_back(r * sphere_.directions()[j]);
                weights_.push_back(4.0 * std::numbers::pi * r * r * radial.weights[i] * sphere_.weights()[j] * k_.value(r));
            }
        }
    }
    double value(const Vec3& x) const override
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < offsets_.size(); ++i)
            acc += weights_[i] * g_->value(x - offsets_[i]);
        return acc;
    }
    Vec3 gradient(const Vec3& x) const override
    {
        Vec3 acc;
        for (std::size_t i = 0; i < offsets_.size(); ++i)
            acc += weights_[i] * g_->gradient(x - offsets_[i]);
        return acc;
    }
    std::optional<double> support_radius() const override
    {
        const auto s = g_->support_radius();
        if (!s)
            return std::nullopt;
        return *s + k_.support();
    }

private:
    SpatialFunctionPtr g_;
    RadialKernel k_;
    SphereRule sphere_;
    std::vector<Vec3> offsets_;
    std::vector<double> weights_;
};

KineticState state_for(const WindowData& w, const ForcePtr& force, double t_local, const CharacteristicSpec& spec)
{
    if (!force) {
        if (!w.history || w.t0 == 0.0)
            return KineticState::initial(w.density, w.t0 + t_local);
        return KineticState::frozen(w.density, w.history, w.t0, w.t0 + t_local, spec);
    }
    return KineticState::transported(w.density, force, w.t0 + t_local, spec);
}

std::shared_ptr<const RadialMomentTable> moments_for(const WindowData& w, const ForcePtr& force,
                                                      const IterationConfig& cfg)
{
    const CharacteristicSpec spec{cfg.time_step()};
    const double extent = w.density->space_radius() + w.t0 + cfg.horizon;
    return std::make_shared<RadialMomentTable>(tabulate_radial_moments(
        [&](double t) { return state_for(w, force, t, spec); }, cfg.time_nodes(), cfg.moment_spacing,
        cells_for(extent, cfg.moment_spacing), cfg.momentum));
}

double source_extent(const WindowData& w, const IterationConfig& cfg, int n)
{
    return w.density->space_radius() + w.t0 + cfg.horizon + 2.0 / static_cast<double>(n);
}

} // namespace

std::size_t IterationConfig::time_steps() const
{
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(horizon * static_cast<double>(steps_per_unit))));
}

std::vector<double> IterationConfig::time_nodes() const
{
    const std::size_t n = time_steps();
    std::vector<double> t(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        t[k] = horizon * static_cast<double>(k) / static_cast<double>(n);
    return t;
}

void IterationConfig::validate() const
{
    if (!(horizon > 0.0))
        throw DomainError("iteration: horizon must be positive");
    if (steps_per_unit == 0)
        throw DomainError("iteration: steps_per_unit must be positive");
    if (!(gap_tolerance > 0.0))
        throw DomainError("iteration: gap tolerance must be positive");
    if (!(moment_spacing > 0.0) || !(field_spacing > 0.0) || !(data_spacing > 0.0) || !(box_spacing > 0.0))
        throw DomainError("iteration: grid spacings must be positive");
    if (max_iterations == 0)
        throw DomainError("iteration: max_iterations must be positive");
    if (momentum.nodes < 1 || gap_momentum_nodes < 1)
        throw DomainError("iteration: quadrature node counts must be positive");
}

ForcePtr make_chained_force(ForcePtr early, ForcePtr late, double t0)
{
    if (!late)
        return early;
    if (!early || t0 == 0.0)
        return late;
    return std::make_shared<ChainedForce>(std::move(early), std::move(late), t0);
}

KineticState RegularizedSolution::state(double t_local) const
{
    return state_for(window, kinetic_force, t_local, CharacteristicSpec{config.time_step()});
}

SpatialFunctionPtr mollify(const SpatialFunction& g, const RadialKernel& kernel, double spacing)
{
    if (g.is_zero())
        return make_zero_function();
    const RadialProfile* prof = g.radial_profile();
    if (!prof)
        throw DomainError("mollify: radial data required (use mollify_box for general data)");
    const double rg = prof->extent();
    const auto rule = composite_gauss_legendre(cells_for(rg, spacing), 4, 0.0, rg);
    std::vector<double> values(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        values[i] = prof->value(rule.nodes[i]);
    const std::size_t cells = cells_for(rg + kernel.support(), spacing);
    std::vector<double> out(cells + 1);
    parallel_for(cells + 1, [&](std::size_t j) {
        out[j] = radial_convolve_at(kernel, rule.nodes, rule.weights, values, spacing * static_cast<double>(j));
    });
    out[cells] = 0.0;
    return make_radial_function(RadialProfile(spacing, std::move(out)));
}

WindowData make_initial_window(const InitialData& data, const Mollifier& mollifier, double data_spacing)
{
    if (!data.density)
        throw DomainError("initial data: density required");
    WindowData w;
    w.density = data.density;
    auto smooth = [&](const SpatialFunctionPtr& g, const RadialKernel& k) -> SpatialFunctionPtr {
        if (g->is_zero())
            return make_zero_function();
        if (g->radial_profile())
            return mollify(*g, k, data_spacing);
        return std::make_shared<BallConvolution>(g, k);
    };
    w.field = {smooth(data.field.u1, mollifier.pair_kernel()), smooth(data.field.u2, mollifier.pair_kernel())};
    w.companion = {smooth(data.field.u1, mollifier.seed_kernel()), smooth(data.field.u2, mollifier.seed_kernel())};
    return w;
}

std::shared_ptr<const RadialSourceHistory> build_radial_source(const RadialMomentTable& moments,
                                                               const RadialKernel& kernel, double spacing,
                                                               std::size_t cells)
{
    const double rho_extent = moments.spacing() * static_cast<double>(moments.cells());
    const auto rule = composite_gauss_legendre(moments.cells(), 4, 0.0, rho_extent);
    const std::size_t nt = moments.times().size();
    if (spacing * static_cast<double>(cells) < rho_extent + kernel.support() - 1e-12)
        throw DomainError("source grid must reach radius " + std::to_string(rho_extent + kernel.support()));
    std::vector<std::vector<double>> vals(nt, std::vector<double>(cells + 1, 0.0));
    std::vector<std::vector<double>> at_nodes(nt, std::vector<double>(rule.size()));
    bool any = false;
    for (std::size_t k = 0; k < nt; ++k)
        for (std::size_t i = 0; i < rule.size(); ++i) {
            at_nodes[k][i] = moments.rho(moments.times()[k], rule.nodes[i]);
            any = any || at_nodes[k][i] != 0.0;
        }
    if (any)
        parallel_for(nt * (cells + 1), [&](std::size_t idx) {
            const std::size_t k = idx / (cells + 1), j = idx % (cells + 1);
            vals[k][j] = -radial_convolve_at(kernel, rule.nodes, rule.weights, at_nodes[k], spacing * static_cast<double>(j));
        });
    std::vector<RadialProfile> profiles;
    profiles.reserve(nt);
    for (auto& v : vals)
        profiles.emplace_back(spacing, std::move(v));
    return std::make_shared<RadialSourceHistory>(moments.times(), std::move(profiles));
}

SourceHistory build_source(const std::vector<double>& times, const std::vector<std::vector<double>>& rho,
                           const Mollifier& mollifier, const BoxLattice& lattice, double support_radius)
{
    if (!lattice.covers_ball(support_radius)) {
        const Vec3 hi = lattice.upper();
        const double have = std::min({-lattice.origin.x, -lattice.origin.y, -lattice.origin.z, hi.x, hi.y, hi.z});
        throw DomainError("source lattice too small: it must cover the ball of radius " + std::to_string(support_radius)
                          + " (half-width " + std::to_string(have) + ")");
    }
    const RadialKernel& k = mollifier.pair_kernel();
    const SphereRule sphere(8, 16);
    const auto radial = gauss_legendre(12, 0.0, k.support());
    std::vector<Vec3> offs;
    std::vector<double> wts;
    for (std::size_t i = 0; i < radial.size(); ++i)
        for (std::size_t j = 0; j < sphere.size(); ++j) {
            const double r = radial.nodes[i];
            offs.push_back(r * sphere.directions()[j]);
            wts.push_back(4.0 * std::numbers::pi * r * r * radial.weights[i] * sphere.weights()[j] * k.value(r));
        }
    std::vector<std::vector<double>> out(times.size(), std::vector<double>(lattice.size(), 0.0));
    for (std::size_t n = 0; n < times.size(); ++n) {
        if (std::all_of(rho[n].begin(), rho[n].end(), [](double v) { return v == 0.0; }))
            continue;
        parallel_for(lattice.size(), [&](std::size_t i) {
            const Vec3 x = lattice.node(i);
            double acc = 0.0;
            for (std::size_t q = 0; q < offs.size(); ++q)
                acc += wts[q] * lattice.interpolate(rho[n], x - offs[q]);
            out[n][i] = -acc;
        });
    }
    return SourceHistory(times, lattice, std::move(out));
}

double field_extent(const WindowData& window, const IterationConfig& cfg, int mollifier_index)
{
    double r = source_extent(window, cfg, mollifier_index);
    const auto ru = window.field.support_radius();
    if (!ru)
        throw DomainError("field data must have bounded support");
    r = std::max(r, *ru);
    const auto rc = window.companion.support_radius();
    if (rc)
        r = std::max(r, *rc);
    return r + cfg.horizon;
}

namespace {

struct FieldStage {
    std::shared_ptr<const RadialSourceHistory> source;
    std::shared_ptr<const FieldSolution> field;
    std::shared_ptr<const RadialFieldTable> table;
};

FieldStage solve_field(const RadialMomentTable& moments, const WindowData& w, const IterationConfig& cfg,
                       const Mollifier& mollifier, PhaseTimings& timings)
{
    FieldStage st;
    auto t0 = Clock::now();
    const int n = mollifier.index();
    st.source = build_radial_source(moments, mollifier.pair_kernel(), cfg.field_spacing,
                                    cells_for(source_extent(w, cfg, n), cfg.field_spacing));
    timings.source += seconds_since(t0);
    t0 = Clock::now();
    auto solver = std::make_shared<const KleinGordonSolver>(cfg.solver, cfg.horizon + 0.05);
    st.field = std::make_shared<const FieldSolution>(solver, w.field, st.source);
    st.table = std::make_shared<const RadialFieldTable>(RadialFieldTable::fill(
        *st.field, cfg.time_nodes(), cfg.field_spacing, cells_for(field_extent(w, cfg, n), cfg.field_spacing)));
    timings.field += seconds_since(t0);
    return st;
}

void require_radial(const WindowData& w, const IterationConfig& cfg)
{
    if (cfg.geometry != Geometry::Radial)
        return;
    if (!w.density->is_radial() || !w.field.is_radial() || !w.companion.is_radial())
        throw DomainError("radial geometry needs radial data and a momentum bump centred at v = 0");
}

} // namespace

double sup_gap(const WindowData& window, const ForcePtr& a, const ForcePtr& b, const IterationConfig& cfg)
{
    if (window.density->is_zero())
        return 0.0;
    const CharacteristicSpec spec{cfg.time_step()};
    const double T = cfg.horizon;
    const double rx = window.density->space_radius() + window.t0 + T;
    const double pv = std::max(state_for(window, a, T, spec).momentum_bound(), state_for(window, b, T, spec).momentum_bound());

    // quasi-random part
    const std::size_t ns = cfg.gap_samples;
    std::vector<double> slots(ns, 0.0);
    const std::size_t offset = static_cast<std::size_t>(cfg.seed % 1000003) * ns + 1;
    parallel_for(ns, [&](std::size_t i) {
        const auto h = halton_point(offset + i, 7);
        const double t = T * h[0];
        const Vec3 x(rx * (2 * h[1] - 1), rx * (2 * h[2] - 1), rx * (2 * h[3] - 1));
        const Vec3 v(pv * (2 * h[4] - 1), pv * (2 * h[5] - 1), pv * (2 * h[6] - 1));
        slots[i] = std::abs(state_for(window, a, t, spec).eval_f(x, v) - state_for(window, b, t, spec).eval_f(x, v));
    });

    // moment-lattice part: every time node and radial node with a coarse momentum cube
    const auto times = cfg.time_nodes();
    const auto rule = gauss_legendre(cfg.gap_momentum_nodes, -1.0, 1.0);
    const std::size_t nr = cells_for(rx, cfg.moment_spacing) + 1;
    std::vector<double> lat(times.size() * nr, 0.0);
    parallel_for(lat.size(), [&](std::size_t idx) {
        const std::size_t k = idx / nr, j = idx % nr;
        const KineticState sa = state_for(window, a, times[k], spec), sb = state_for(window, b, times[k], spec);
        const double p = std::max(sa.momentum_bound(), sb.momentum_bound());
        const Vec3 x(cfg.moment_spacing * static_cast<double>(j), 0, 0);
        double m = 0.0;
        for (double va : rule.nodes)
            for (double vb : rule.nodes)
                for (double vc : rule.nodes) {
                    const Vec3 v(p * va, p * vb, p * vc);
                    m = std::max(m, std::abs(sa.eval_f(x, v) - sb.eval_f(x, v)));
                }
        lat[idx] = m;
    });
    double gap = 0.0;
    for (double s : slots)
        gap = std::max(gap, s);
    for (double s : lat)
        gap = std::max(gap, s);
    return gap;
}

Iterate iterate_once(const Iterate& prev, const WindowData& window, const IterationConfig& cfg,
                     const Mollifier& mollifier)
{
    PhaseTimings scratch;
    require_radial(window, cfg);
    if (cfg.geometry == Geometry::Box)
        throw DomainError("iterate_once: box geometry is limited to source assembly (build_source)");
    if (!prev.moments)
        throw DomainError("iterate_once: previous iterate has no moments");
    FieldStage st = solve_field(*prev.moments, window, cfg, mollifier, scratch);
    Iterate next;
    next.index = prev.index + 1;
    next.force = make_chained_force(window.history, st.table, window.t0);
    next.moments = moments_for(window, next.force, cfg);
    next.source = st.source;
    next.field = st.field;
    next.gap = sup_gap(window, next.force, prev.force, cfg);
    return next;
}

RegularizedSolution run_picard(const WindowData& window, const IterationConfig& cfg, const Mollifier& mollifier)
{
    cfg.validate();
    require_radial(window, cfg);
    if (cfg.geometry == Geometry::Box)
        throw DomainError("run_picard: the coupled iteration runs in radial geometry; box lattices support "
                          "source assembly and field tables only");
    RegularizedSolution sol;
    sol.window = window;
    sol.config = cfg;
    sol.mollifier_index = mollifier.index();
    sol.times = cfg.time_nodes();
    ConvergenceReport& rep = sol.report;

    auto t0 = Clock::now();
    // zeroth iterate: f frozen at t0 (a null force, see state_for)
    Iterate cur;
    cur.moments = moments_for(window, nullptr, cfg);
    rep.timings.kinetic += seconds_since(t0);

    if (!cfg.checkpoint_dir.empty())
        std::filesystem::create_directories(cfg.checkpoint_dir);

    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        FieldStage st = solve_field(*cur.moments, window, cfg, mollifier, rep.timings);
        if (!cfg.checkpoint_dir.empty())
            st.source->write_csv(cfg.checkpoint_dir + "/source_iter_" + std::to_string(it) + ".csv");
        Iterate next;
        next.index = it;
        next.force = make_chained_force(window.history, st.table, window.t0);
        next.source = st.source;
        next.field = st.field;
        t0 = Clock::now();
        next.moments = moments_for(window, next.force, cfg);
        rep.timings.kinetic += seconds_since(t0);
        t0 = Clock::now();
        next.gap = sup_gap(window, next.force, cur.force, cfg);
        rep.timings.gap += seconds_since(t0);
        rep.gaps.push_back(next.gap);
        rep.rho_gaps.push_back(next.moments->max_abs_difference(*cur.moments));
        rep.iterations = it;
        cur = std::move(next);
        if (cur.gap <= cfg.gap_tolerance) {
            rep.converged = true;
            break;
        }
    }

    // field of the final kinetic state, so that u and rho are consistent
    FieldStage fin = solve_field(*cur.moments, window, cfg, mollifier, rep.timings);
    sol.kinetic_force = cur.force;
    sol.moments = cur.moments;
    sol.source = fin.source;
    sol.field = fin.field;
    sol.field_table = fin.table;
    return sol;
}

std::shared_ptr<const FieldSolution> solve_companion(const RegularizedSolution& sol, const Mollifier& mollifier)
{
    const auto& cfg = sol.config;
    const double ext = sol.window.density->space_radius() + sol.window.t0 + cfg.horizon + mollifier.seed_radius();
    auto source = build_radial_source(*sol.moments, mollifier.seed_kernel(), cfg.field_spacing,
                                      cells_for(ext, cfg.field_spacing));
    auto solver = std::make_shared<const KleinGordonSolver>(cfg.solver, cfg.horizon + 0.05);
    return std::make_shared<const FieldSolution>(solver, sol.window.companion, source);
}

WindowData next_window(const RegularizedSolution& sol, const FieldSolution& companion)
{
    const auto& cfg = sol.config;
    const double T = cfg.horizon;
    WindowData w;
    w.t0 = sol.window.t0 + T;
    w.density = sol.window.density;
    // f(T) is the pullback of f0 through the final force; if the state was
    // static (vacuum coupling) the chained field force is equivalent
    w.history = sol.kinetic_force ? sol.kinetic_force : make_chained_force(sol.window.history, sol.field_table, sol.window.t0);

    auto restart = [&](const FieldSolution& f) {
        const auto ext0 = f.data().support_radius();
        double ext = T + (ext0 ? *ext0 : 0.0);
        if (f.source() && !f.source()->is_zero() && f.source()->support_radius())
            ext = std::max(ext, *f.source()->support_radius() + T);
        const std::size_t cells = cells_for(ext, cfg.data_spacing);
        std::vector<double> u(cells + 1), ut(cells + 1);
        parallel_for(cells + 1, [&](std::size_t j) {
            const Vec3 x(cfg.data_spacing * static_cast<double>(j), 0, 0);
            u[j] = f.value(T, x);
            ut[j] = f.time_derivative(T, x);
        });
        u[cells] = 0.0;
        ut[cells] = 0.0;
        return FieldData{make_radial_function(RadialProfile(cfg.data_spacing, std::move(u))),
                         make_radial_function(RadialProfile(cfg.data_spacing, std::move(ut)))};
    };
    w.field = restart(*sol.field);
    w.companion = restart(companion);
    return w;
}

} // namespace vkg
