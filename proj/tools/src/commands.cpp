#include "vkg/app/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include "vkg/error.hpp"
#include "vkg/parallel.hpp"

namespace vkg::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// %.17g so that CSV values round-trip and repeated runs compare byte for byte
std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvFile {
public:
    CsvFile(const fs::path& path, const std::string& header) : out_(path)
    {
        if (!out_)
            throw std::runtime_error("cannot write " + path.string());
        out_ << header << '\n';
    }
    template <class... T>
    void row(const T&... cols)
    {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cols), first = false), ...);
        out_ << '\n';
    }

private:
    static std::string cell(double x) { return num(x); }
    static std::string cell(std::size_t x) { return std::to_string(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(bool x) { return x ? "1" : "0"; }

    std::ofstream out_;
};

json exponent_json(double p)
{
    if (std::isinf(p))
        return "inf";
    return p;
}

json threshold_json(const ThresholdReport& t)
{
    return json{{"p", exponent_json(t.p)}, {"q", t.q},          {"norm1", t.norm1},
                {"normp", t.normp},        {"C", t.C},          {"C_squared", t.C * t.C},
                {"lhs", t.lhs},            {"rhs", t.rhs},      {"satisfied", t.satisfied},
                {"epsilon", t.epsilon}};
}

void print_threshold(const ThresholdReport& t, std::ostream& out)
{
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "p = %s  q = %.6g\n|f|_1 = %.12g  |f|_p = %.12g\nC(f) = %.12g  C(f)^2 = %.12g\n"
                  "lhs = %.12g  rhs = %.12g\nthreshold %s",
                  std::isinf(t.p) ? "inf" : num(t.p).c_str(), t.q, t.norm1, t.normp, t.C, t.C * t.C, t.lhs, t.rhs,
                  t.satisfied ? "satisfied" : "NOT satisfied");
    out << buf;
    if (t.satisfied) {
        std::snprintf(buf, sizeof buf, " (epsilon = %.6g)", t.epsilon);
        out << buf;
    }
    out << '\n';
}

void print_gaps(const ConvergenceReport& r, std::ostream& out)
{
    out << "gap history:";
    for (double g : r.gaps)
        out << ' ' << num(g);
    out << '\n';
}

} // namespace

double RunArtifacts::max_energy_drift() const
{
    double d = 0.0;
    for (const auto& e : energy)
        d = std::max(d, std::abs(e.drift));
    return d;
}

double RunArtifacts::max_mass_drift() const
{
    double d = 0.0;
    for (double m : mass_drift)
        d = std::max(d, std::abs(m));
    return d;
}

ThresholdReport data_threshold(const RunConfig& cfg)
{
    const InitialDensity f(cfg.density);
    return threshold_check(f, cfg.p);
}

std::vector<std::size_t> sample_nodes(std::size_t last_node, std::size_t count)
{
    std::vector<std::size_t> nodes;
    if (count == 0)
        return nodes;
    if (count == 1)
        return {0};
    for (std::size_t i = 0; i < count; ++i) {
        const double x = static_cast<double>(i) * static_cast<double>(last_node) / static_cast<double>(count - 1);
        const auto k = static_cast<std::size_t>(std::llround(x));
        if (nodes.empty() || nodes.back() != k)
            nodes.push_back(k);
    }
    return nodes;
}

RunArtifacts run_pipeline(const RunConfig& cfg, int n, std::ostream& log)
{
    RunArtifacts run;
    run.mollifier_index = n;
    run.threshold = data_threshold(cfg);

    const Mollifier mollifier = make_mollifier(n);
    const IterationConfig icfg = cfg.iteration_config();
    const WindowData window = make_initial_window(cfg.initial_data(), mollifier, icfg.data_spacing);

    Stopwatch clock;
    run.solution = run_picard(window, icfg, mollifier);
    const ConvergenceReport& rep = run.solution.report;
    char buf[256];
    std::snprintf(buf, sizeof buf, "[n=%d] picard: %zu iterations, %s, %.2f s (source %.2f, field %.2f, kinetic %.2f, gap %.2f)\n",
                  n, rep.iterations, rep.converged ? "converged" : "not converged", clock.seconds(),
                  rep.timings.source, rep.timings.field, rep.timings.kinetic, rep.timings.gap);
    log << buf;
    if (!rep.converged)
        return run;

    Stopwatch diag;
    run.companion = solve_companion(run.solution, mollifier);
    run.energy_nodes = sample_nodes(run.solution.times.size() - 1, cfg.diagnostics.energy_samples);
    run.energy = energy_series(run.solution, *run.companion, run.energy_nodes);
    const double m0 = run.energy.front().mass;
    for (const auto& e : run.energy)
        run.mass_drift.push_back(m0 != 0.0 ? (e.mass - m0) / std::abs(m0) : e.mass);

    const ThresholdReport& th = run.threshold;
    for (const auto& e : run.energy) {
        run.interaction.push_back(interaction_estimate_check(e, th.C));
        run.rho65.push_back(rho65_check(e, th.norm1, th.normp, th.p));
        if (th.satisfied)
            run.apriori.push_back(apriori_bound_check(e, th.epsilon, th.C * th.C));
    }
    std::snprintf(buf, sizeof buf, "[n=%d] energy and inequalities: %.2f s, max drift %.3e, max mass drift %.3e\n", n,
                  diag.seconds(), run.max_energy_drift(), run.max_mass_drift());
    log << buf;

    if (cfg.diagnostics.residual_tests > 0) {
        Stopwatch res;
        auto suite = default_test_suite(cfg.density.space_radius, InitialDensity(cfg.density).momentum_radius(),
                                        cfg.horizon);
        suite.resize(std::min(suite.size(), cfg.diagnostics.residual_tests));
        run.residuals = solution_residuals(run.solution, suite, cfg.residual_quadrature());
        std::snprintf(buf, sizeof buf, "[n=%d] residuals: %zu test functions, %.2f s\n", n, suite.size(),
                      res.seconds());
        log << buf;
    }
    return run;
}

json run_summary(const RunArtifacts& run)
{
    const ConvergenceReport& rep = run.solution.report;
    json j;
    j["mollifier"] = run.mollifier_index;
    j["status"] = rep.converged ? "converged" : "not_converged";
    j["convergence"] = {{"iterations", rep.iterations},
                        {"converged", rep.converged},
                        {"gaps", rep.gaps},
                        {"rho_gaps", rep.rho_gaps}};
    j["threshold"] = threshold_json(run.threshold);
    if (!rep.converged)
        return j;

    std::vector<double> times;
    for (const auto& e : run.energy)
        times.push_back(e.t);
    j["energy"] = {{"sample_times", times},
                   {"initial_total", run.energy.front().total},
                   {"max_relative_drift", run.max_energy_drift()},
                   {"max_relative_mass_drift", run.max_mass_drift()}};

    auto all_hold = [](const auto& v) { return std::all_of(v.begin(), v.end(), [](const auto& r) { return r.holds; }); };
    double interaction_margin = std::numeric_limits<double>::infinity(), rho65_margin = interaction_margin;
    for (const auto& r : run.interaction)
        interaction_margin = std::min(interaction_margin, r.margin());
    for (const auto& r : run.rho65)
        rho65_margin = std::min(rho65_margin, r.margin());
    json ineq = {{"interaction_holds", all_hold(run.interaction)},
                 {"interaction_min_margin", interaction_margin},
                 {"rho65_holds", all_hold(run.rho65)},
                 {"rho65_min_margin", rho65_margin}};
    if (run.apriori.empty()) {
        ineq["apriori_holds"] = nullptr;
    } else {
        double margin = std::numeric_limits<double>::infinity();
        for (const auto& a : run.apriori)
            margin = std::min(margin, a.energy - a.rhs);
        ineq["apriori_holds"] = all_hold(run.apriori);
        ineq["apriori_min_margin"] = margin;
    }
    j["inequalities"] = ineq;

    double vl = 0.0, kg = 0.0, ct = 0.0, worst = 0.0;
    for (const auto& r : run.residuals) {
        vl += std::abs(r.vlasov.value);
        kg += std::abs(r.kg.value);
        ct += std::abs(r.continuity.value);
        worst = std::max({worst, r.vlasov.relative(), r.kg.relative(), r.continuity.relative()});
    }
    j["residuals"] = {{"tests", run.residuals.size()},
                      {"vlasov_abs_sum", vl},
                      {"kg_abs_sum", kg},
                      {"continuity_abs_sum", ct},
                      {"max_relative", worst}};
    return j;
}

void write_artifacts(const RunArtifacts& run, const RunConfig& cfg, const std::string& dir)
{
    const fs::path root(dir);
    fs::create_directories(root);
    const RegularizedSolution& sol = run.solution;
    std::vector<std::string> files{"manifest.json", "convergence.csv"};

    {
        CsvFile csv(root / "convergence.csv", "iteration,gap,rho_gap");
        const auto& r = sol.report;
        for (std::size_t i = 0; i < r.gaps.size(); ++i)
            csv.row(i + 1, r.gaps[i], i < r.rho_gaps.size() ? r.rho_gaps[i] : 0.0);
    }

    if (run.converged()) {
        {
            CsvFile csv(root / "energy.csv", "t,E_K,E_F_tilde,E_C,E_total,mass");
            for (const auto& e : run.energy)
                csv.row(e.t, e.E_K, e.E_F_tilde, e.E_C, e.total, e.mass);
        }
        {
            CsvFile csv(root / "inequalities.csv",
                        "t,relative_drift,mass_drift,interaction_lhs,interaction_rhs,interaction_holds,rho65_lhs,"
                        "rho65_rhs,rho65_holds,apriori_energy,apriori_rhs,apriori_holds");
            for (std::size_t i = 0; i < run.energy.size(); ++i) {
                const bool ap = !run.apriori.empty();
                csv.row(run.energy[i].t, run.energy[i].drift, run.mass_drift[i], run.interaction[i].lhs,
                        run.interaction[i].rhs, run.interaction[i].holds, run.rho65[i].lhs, run.rho65[i].rhs,
                        run.rho65[i].holds, ap ? run.apriori[i].energy : 0.0, ap ? run.apriori[i].rhs : 0.0,
                        ap ? run.apriori[i].holds : false);
            }
        }
        files.insert(files.end(), {"energy.csv", "inequalities.csv"});
        if (!run.residuals.empty()) {
            CsvFile csv(root / "residuals.csv",
                        "test,vlasov,vlasov_scale,kg,kg_scale,continuity,continuity_scale");
            for (const auto& r : run.residuals)
                csv.row(r.test, r.vlasov.value, r.vlasov.scale, r.kg.value, r.kg.scale, r.continuity.value,
                        r.continuity.scale);
            files.push_back("residuals.csv");
        }

        const auto snaps = sample_nodes(sol.times.size() - 1, cfg.diagnostics.snapshots);
        const auto& m = *sol.moments;
        const auto& u = *sol.field_table;
        for (std::size_t i = 0; i < snaps.size(); ++i) {
            const std::size_t k = snaps[i];
            const std::string name = "snapshot_" + std::to_string(i) + ".csv";
            CsvFile csv(root / name, "t,r,rho,j_r,energy_density,u,u_r");
            const double t = sol.times[k];
            for (std::size_t jr = 0; jr <= m.cells(); ++jr) {
                const double r = m.radius(jr);
                csv.row(sol.window.t0 + t, r, m.rho_at(k, jr), m.jr_at(k, jr), m.energy_at(k, jr), u.value(t, r),
                        u.radial_derivative(t, r));
            }
            files.push_back(name);
        }
    }

    json manifest = run_summary(run);
    RunConfig echo = cfg;
    echo.mollifier = run.mollifier_index;
    echo.output = dir;
    manifest["config"] = to_json(echo);
    manifest["files"] = files;
    std::ofstream out(root / "manifest.json");
    if (!out)
        throw std::runtime_error("cannot write manifest in " + dir);
    out << manifest.dump(2) << '\n';
}

int cmd_check_data(const RunConfig& cfg, std::ostream& out)
{
    const ThresholdReport t = data_threshold(cfg);
    print_threshold(t, out);
    return t.satisfied ? kExitOk : kExitThreshold;
}

namespace {

RunConfig with_overrides(RunConfig cfg, const RunOptions& opt)
{
    if (opt.out)
        cfg.output = *opt.out;
    if (opt.seed)
        cfg.seed = *opt.seed;
    set_thread_count(std::max(1u, opt.threads));
    return cfg;
}

bool threshold_gate(const RunConfig& cfg, const RunOptions& opt, std::ostream& out, std::ostream& err)
{
    const ThresholdReport t = data_threshold(cfg);
    print_threshold(t, out);
    if (!t.satisfied && !opt.force) {
        err << "threshold not satisfied; rerun with --force to solve the regularized problem anyway\n";
        return false;
    }
    if (!t.satisfied)
        err << "warning: --force given, a-priori bounds do not apply to this run\n";
    return true;
}

} // namespace

int cmd_simulate(const RunConfig& base, const RunOptions& opt, std::ostream& out, std::ostream& err)
{
    const RunConfig cfg = with_overrides(base, opt);
    if (!threshold_gate(cfg, opt, out, err))
        return kExitThreshold;
    const RunArtifacts run = run_pipeline(cfg, cfg.mollifier, out);
    write_artifacts(run, cfg, cfg.output);
    if (!run.converged()) {
        err << "picard iteration did not converge within " << cfg.iteration.max_iterations << " iterations\n";
        print_gaps(run.solution.report, err);
        return kExitNotConverged;
    }
    out << "wrote " << cfg.output << '\n';
    return kExitOk;
}

int cmd_refine(const RunConfig& base, const RunOptions& opt, std::ostream& out, std::ostream& err)
{
    const RunConfig cfg = with_overrides(base, opt);
    if (cfg.refine.size() < 2)
        throw ConfigError("refine needs at least two mollifier indices in 'refine'");
    if (!threshold_gate(cfg, opt, out, err))
        return kExitThreshold;

    struct Entry {
        int n;
        std::optional<RunArtifacts> run;
        std::string error;
    };
    std::vector<Entry> entries;
    for (int n : cfg.refine) {
        Entry e{n, std::nullopt, {}};
        try {
            e.run = run_pipeline(cfg, n, out);
            write_artifacts(*e.run, cfg, (fs::path(cfg.output) / ("n" + std::to_string(n))).string());
            if (!e.run->converged()) {
                e.error = "not converged";
                print_gaps(e.run->solution.report, err);
            }
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
        if (!e.error.empty())
            err << "[n=" << n << "] " << e.error << '\n';
        entries.push_back(std::move(e));
    }

    const fs::path root(cfg.output);
    fs::create_directories(root);
    json report;
    report["config"] = to_json(cfg);
    report["runs"] = json::array();
    {
        CsvFile csv(root / "refine.csv",
                    "n,status,iterations,max_energy_drift,max_mass_drift,vlasov_abs_sum,kg_abs_sum,"
                    "continuity_abs_sum,interaction_min_margin,rho65_min_margin");
        for (const auto& e : entries) {
            if (!e.run || !e.run->converged()) {
                csv.row(e.n, 0, e.run ? e.run->solution.report.iterations : std::size_t{0}, 0.0, 0.0, 0.0, 0.0, 0.0,
                        0.0, 0.0);
                report["runs"].push_back({{"mollifier", e.n}, {"status", "failed"}, {"error", e.error}});
                continue;
            }
            json s = run_summary(*e.run);
            const json& r = s["residuals"];
            const json& q = s["inequalities"];
            csv.row(e.n, 1, e.run->solution.report.iterations, e.run->max_energy_drift(), e.run->max_mass_drift(),
                    r.value("vlasov_abs_sum", 0.0), r.value("kg_abs_sum", 0.0), r.value("continuity_abs_sum", 0.0),
                    q["interaction_min_margin"].get<double>(), q["rho65_min_margin"].get<double>());
            report["runs"].push_back(s);
        }
    }
    {
        // differences on the lattice shared by both runs: common time nodes,
        // radii up to the smaller table extent
        CsvFile csv(root / "refine_pairs.csv", "n_a,n_b,u_sup_difference,rho_sup_difference");
        report["pairs"] = json::array();
        for (std::size_t a = 0; a < entries.size(); ++a)
            for (std::size_t b = a + 1; b < entries.size(); ++b) {
                const auto& A = entries[a].run;
                const auto& B = entries[b].run;
                if (!A || !B || !A->converged() || !B->converged())
                    continue;
                const auto& ua = *A->solution.field_table;
                const auto& ub = *B->solution.field_table;
                const std::size_t cells = std::min(ua.cells(), ub.cells());
                double du = 0.0;
                for (std::size_t k = 0; k < ua.time_nodes().size(); ++k)
                    for (std::size_t j = 0; j <= cells; ++j) {
                        const double r = ua.spacing() * static_cast<double>(j);
                        du = std::max(du, std::abs(ua.u_at(k, j) - ub.value(ua.time_nodes()[k], r)));
                    }
                const auto& ma = *A->solution.moments;
                const auto& mb = *B->solution.moments;
                const double drho = ma.cells() <= mb.cells() ? ma.max_abs_difference(mb) : mb.max_abs_difference(ma);
                csv.row(entries[a].n, entries[b].n, du, drho);
                report["pairs"].push_back(
                    {{"n_a", entries[a].n}, {"n_b", entries[b].n}, {"u_sup_difference", du}, {"rho_sup_difference", drho}});
            }
    }
    std::ofstream(root / "refine.json") << report.dump(2) << '\n';

    bool failed = false, unconverged = false;
    for (const auto& e : entries) {
        failed |= !e.run.has_value();
        unconverged |= e.run && !e.run->converged();
    }
    out << "wrote " << cfg.output << '\n';
    if (unconverged)
        return kExitNotConverged;
    return failed ? kExitConfig : kExitOk;
}

} // namespace vkg::app
