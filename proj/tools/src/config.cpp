#include "vkg/app/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "vkg/error.hpp"

namespace vkg::app {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& keys, const std::string& where)
{
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!keys.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where)
{
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

// counts must be non-negative integers; nlohmann would wrap -1 silently
void read_count(const json& j, const char* key, std::size_t& out, const std::string& where)
{
    if (!j.contains(key))
        return;
    const json& v = j.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        throw ConfigError(where + "." + key + ": expected a non-negative integer");
    out = v.get<std::size_t>();
}

json bump_json(const Bump1D& b)
{
    return json{{"kind", bump_kind_name(b.kind)}, {"power", b.power}};
}

Bump1D bump_from(const json& j, const std::string& where)
{
    reject_unknown(j, {"kind", "power"}, where);
    Bump1D b;
    std::string kind = bump_kind_name(b.kind);
    read(j, "kind", kind, where);
    try {
        b.kind = parse_bump_kind(kind);
    } catch (const std::exception&) {
        throw ConfigError(where + ".kind: expected 'exp' or 'poly'");
    }
    read(j, "power", b.power, where);
    return b;
}

json field_json(const FieldBump& f)
{
    return json{{"amplitude", f.amplitude}, {"radius", f.radius}, {"bump", bump_json(f.bump)}};
}

FieldBump field_from(const json& j, const std::string& where)
{
    reject_unknown(j, {"amplitude", "radius", "bump"}, where);
    FieldBump f;
    read(j, "amplitude", f.amplitude, where);
    read(j, "radius", f.radius, where);
    if (j.contains("bump"))
        f.bump = bump_from(j.at("bump"), where + ".bump");
    return f;
}

json exponent_json(double p)
{
    if (std::isinf(p))
        return "inf";
    return p;
}

double exponent_from(const json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() == "inf")
            return std::numeric_limits<double>::infinity();
        throw ConfigError("p: expected a number or \"inf\"");
    }
    if (!j.is_number())
        throw ConfigError("p: expected a number or \"inf\"");
    return j.get<double>();
}

SpatialFunctionPtr field_function(const FieldBump& f)
{
    if (f.amplitude == 0.0)
        return make_zero_function();
    const double a = f.amplitude, r0 = f.radius;
    const Bump1D b = f.bump;
    return make_radial_function(RadialProfile::sample([=](double r) { return a * b.value(r / r0); }, r0, 1024));
}

} // namespace

RunConfig::RunConfig()
{
    density.amplitude = 40.0;
    density.space_radius = 0.5;
    density.momentum_width = 1.0;
    density.bump = Bump1D{Bump1D::Kind::Poly, 6};
    p = std::numeric_limits<double>::infinity();
    u1 = FieldBump{0.1, 1.0, Bump1D{}};
    u2 = FieldBump{0.0, 1.0, Bump1D{}};
}

void RunConfig::validate() const
{
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (!(density.amplitude >= 0.0) || !std::isfinite(density.amplitude))
        fail("density.amplitude must be finite and non-negative");
    if (!(density.space_radius > 0.0) || !(density.momentum_width > 0.0))
        fail("density radii must be positive");
    if (density.bump.kind == Bump1D::Kind::Poly && density.bump.power < 2)
        fail("density.bump.power must be at least 2");
    if (!(p >= 2.0))
        fail("p must lie in [2, inf]");
    for (const FieldBump* f : {&u1, &u2}) {
        if (!std::isfinite(f->amplitude) || !(f->radius > 0.0))
            fail("field data need a finite amplitude and a positive radius");
        if (f->bump.kind == Bump1D::Kind::Poly && f->bump.power < 2)
            fail("field bump power must be at least 2");
    }
    if (mollifier < 1)
        fail("mollifier index must be at least 1");
    for (int n : refine)
        if (n < 1)
            fail("refine indices must be at least 1");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        fail("horizon must be positive");
    if (diagnostics.energy_samples < 2)
        fail("diagnostics.energy_samples must be at least 2");
    if (diagnostics.snapshots > diagnostics.max_snapshots)
        fail("diagnostics.snapshots exceeds diagnostics.max_snapshots");
    if (diagnostics.residual_tests > 12)
        fail("diagnostics.residual_tests is limited to the 12 default test functions");
    if (lattice.sphere_theta == 0 || lattice.sphere_phi == 0 || lattice.radial_nodes == 0 ||
        lattice.time_per_panel == 0 || lattice.analytic_time_nodes == 0 || !(lattice.fd_step > 0.0))
        fail("lattice quadrature orders and fd_step must be positive");
    if (diagnostics.residual_tests > 0 &&
        (diagnostics.residual_time_nodes == 0 || diagnostics.residual_space_nodes == 0 ||
         diagnostics.residual_momentum_nodes == 0))
        fail("residual quadrature orders must be positive");
    try {
        iteration_config().validate();
    } catch (const DomainError& e) {
        fail(e.what());
    }
}

InitialData RunConfig::initial_data() const
{
    InitialData d;
    d.density = std::make_shared<const InitialDensity>(density);
    d.field.u1 = field_function(u1);
    d.field.u2 = field_function(u2);
    return d;
}

IterationConfig RunConfig::iteration_config() const
{
    IterationConfig c;
    c.horizon = horizon;
    c.steps_per_unit = lattice.steps_per_unit;
    c.moment_spacing = lattice.moment_spacing;
    c.field_spacing = lattice.field_spacing;
    c.data_spacing = lattice.data_spacing;
    c.momentum = MomentQuadrature{lattice.momentum_nodes};
    c.solver.quadrature = QuadratureSpec{lattice.sphere_theta, lattice.sphere_phi, lattice.radial_nodes,
                                         lattice.time_per_panel};
    c.solver.analytic_time_nodes = lattice.analytic_time_nodes;
    c.solver.fd_step = lattice.fd_step;
    c.max_iterations = iteration.max_iterations;
    c.gap_tolerance = iteration.gap_tolerance;
    c.gap_samples = iteration.gap_samples;
    c.gap_momentum_nodes = iteration.gap_momentum_nodes;
    c.seed = seed;
    return c;
}

ResidualQuadrature RunConfig::residual_quadrature() const
{
    return ResidualQuadrature{diagnostics.residual_time_nodes, diagnostics.residual_space_nodes,
                              diagnostics.residual_momentum_nodes};
}

json to_json(const RunConfig& c)
{
    const Vec3& v0 = c.density.momentum_center;
    json j;
    j["density"] = {{"amplitude", c.density.amplitude},
                    {"space_radius", c.density.space_radius},
                    {"momentum_width", c.density.momentum_width},
                    {"momentum_center", {v0.x, v0.y, v0.z}},
                    {"bump", bump_json(c.density.bump)}};
    j["p"] = exponent_json(c.p);
    j["field"] = {{"u1", field_json(c.u1)}, {"u2", field_json(c.u2)}};
    j["mollifier"] = c.mollifier;
    j["refine"] = c.refine;
    j["horizon"] = c.horizon;
    const LatticeConfig& l = c.lattice;
    j["lattice"] = {{"steps_per_unit", l.steps_per_unit},
                    {"moment_spacing", l.moment_spacing},
                    {"field_spacing", l.field_spacing},
                    {"data_spacing", l.data_spacing},
                    {"momentum_nodes", l.momentum_nodes},
                    {"sphere_theta", l.sphere_theta},
                    {"sphere_phi", l.sphere_phi},
                    {"radial_nodes", l.radial_nodes},
                    {"time_per_panel", l.time_per_panel},
                    {"analytic_time_nodes", l.analytic_time_nodes},
                    {"fd_step", l.fd_step}};
    const IterationSettings& it = c.iteration;
    j["iteration"] = {{"max_iterations", it.max_iterations},
                      {"gap_tolerance", it.gap_tolerance},
                      {"gap_samples", it.gap_samples},
                      {"gap_momentum_nodes", it.gap_momentum_nodes}};
    const DiagnosticsConfig& d = c.diagnostics;
    j["diagnostics"] = {{"energy_samples", d.energy_samples},
                        {"residual_tests", d.residual_tests},
                        {"residual_time_nodes", d.residual_time_nodes},
                        {"residual_space_nodes", d.residual_space_nodes},
                        {"residual_momentum_nodes", d.residual_momentum_nodes},
                        {"snapshots", d.snapshots},
                        {"max_snapshots", d.max_snapshots}};
    j["output"] = c.output;
    j["seed"] = c.seed;
    return j;
}

RunConfig from_json(const json& j)
{
    RunConfig c;
    reject_unknown(j, {"density", "p", "field", "mollifier", "refine", "horizon", "lattice", "iteration",
                       "diagnostics", "output", "seed"},
                   "config");
    if (j.contains("density")) {
        const json& d = j.at("density");
        reject_unknown(d, {"amplitude", "space_radius", "momentum_width", "momentum_center", "bump"}, "density");
        read(d, "amplitude", c.density.amplitude, "density");
        read(d, "space_radius", c.density.space_radius, "density");
        read(d, "momentum_width", c.density.momentum_width, "density");
        if (d.contains("momentum_center")) {
            const json& v = d.at("momentum_center");
            if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
                throw ConfigError("density.momentum_center: expected three numbers");
            c.density.momentum_center = Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        }
        if (d.contains("bump"))
            c.density.bump = bump_from(d.at("bump"), "density.bump");
    }
    if (j.contains("p"))
        c.p = exponent_from(j.at("p"));
    if (j.contains("field")) {
        const json& f = j.at("field");
        reject_unknown(f, {"u1", "u2"}, "field");
        if (f.contains("u1"))
            c.u1 = field_from(f.at("u1"), "field.u1");
        if (f.contains("u2"))
            c.u2 = field_from(f.at("u2"), "field.u2");
    }
    read(j, "mollifier", c.mollifier, "config");
    read(j, "refine", c.refine, "config");
    read(j, "horizon", c.horizon, "config");
    if (j.contains("lattice")) {
        const json& l = j.at("lattice");
        reject_unknown(l, {"steps_per_unit", "moment_spacing", "field_spacing", "data_spacing", "momentum_nodes",
                           "sphere_theta", "sphere_phi", "radial_nodes", "time_per_panel", "analytic_time_nodes",
                           "fd_step"},
                       "lattice");
        read_count(l, "steps_per_unit", c.lattice.steps_per_unit, "lattice");
        read(l, "moment_spacing", c.lattice.moment_spacing, "lattice");
        read(l, "field_spacing", c.lattice.field_spacing, "lattice");
        read(l, "data_spacing", c.lattice.data_spacing, "lattice");
        read_count(l, "momentum_nodes", c.lattice.momentum_nodes, "lattice");
        read_count(l, "sphere_theta", c.lattice.sphere_theta, "lattice");
        read_count(l, "sphere_phi", c.lattice.sphere_phi, "lattice");
        read_count(l, "radial_nodes", c.lattice.radial_nodes, "lattice");
        read_count(l, "time_per_panel", c.lattice.time_per_panel, "lattice");
        read_count(l, "analytic_time_nodes", c.lattice.analytic_time_nodes, "lattice");
        read(l, "fd_step", c.lattice.fd_step, "lattice");
    }
    if (j.contains("iteration")) {
        const json& it = j.at("iteration");
        reject_unknown(it, {"max_iterations", "gap_tolerance", "gap_samples", "gap_momentum_nodes"}, "iteration");
        read_count(it, "max_iterations", c.iteration.max_iterations, "iteration");
        read(it, "gap_tolerance", c.iteration.gap_tolerance, "iteration");
        read_count(it, "gap_samples", c.iteration.gap_samples, "iteration");
        read_count(it, "gap_momentum_nodes", c.iteration.gap_momentum_nodes, "iteration");
    }
    if (j.contains("diagnostics")) {
        const json& d = j.at("diagnostics");
        reject_unknown(d, {"energy_samples", "residual_tests", "residual_time_nodes", "residual_space_nodes",
                           "residual_momentum_nodes", "snapshots", "max_snapshots"},
                       "diagnostics");
        read_count(d, "energy_samples", c.diagnostics.energy_samples, "diagnostics");
        read_count(d, "residual_tests", c.diagnostics.residual_tests, "diagnostics");
        read_count(d, "residual_time_nodes", c.diagnostics.residual_time_nodes, "diagnostics");
        read_count(d, "residual_space_nodes", c.diagnostics.residual_space_nodes, "diagnostics");
        read_count(d, "residual_momentum_nodes", c.diagnostics.residual_momentum_nodes, "diagnostics");
        read_count(d, "snapshots", c.diagnostics.snapshots, "diagnostics");
        read_count(d, "max_snapshots", c.diagnostics.max_snapshots, "diagnostics");
    }
    read(j, "output", c.output, "config");
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_unsigned())
            throw ConfigError("seed: expected a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    return c;
}

std::string serialize(const RunConfig& cfg)
{
    return to_json(cfg).dump(2) + "\n";
}

RunConfig parse(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

} // namespace vkg::app
