#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "vkg/app/commands.hpp"
#include "vkg/app/config.hpp"

using namespace vkg;
using namespace vkg::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / "vkg_cli_tests" / name;
    fs::create_directories(p.parent_path());
    return p;
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr)
{
    args.insert(args.begin(), "vkg");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text)
        *out_text = out.str() + err.str();
    return code;
}

// fast lattice for end-to-end runs
RunConfig small_run()
{
    RunConfig c;
    c.horizon = 0.25;
    c.lattice.moment_spacing = 1.0 / 32;
    c.lattice.field_spacing = 1.0 / 64;
    c.lattice.momentum_nodes = 8;
    c.iteration.gap_samples = 512;
    c.iteration.gap_momentum_nodes = 4;
    c.diagnostics.energy_samples = 3;
    c.diagnostics.residual_tests = 1;
    c.diagnostics.residual_space_nodes = 6;
    c.diagnostics.residual_time_nodes = 6;
    c.diagnostics.residual_momentum_nodes = 6;
    c.diagnostics.snapshots = 2;
    return c;
}

} // namespace

TEST(Config, RoundTrips)
{
    const RunConfig a;
    EXPECT_EQ(parse(serialize(a)), a);
    RunConfig b;
    b.density.amplitude = 12.5;
    b.density.bump = Bump1D{Bump1D::Kind::Exp, 3};
    b.p = 4.0;
    b.u2.amplitude = -0.3;
    b.refine = {2, 3, 5};
    b.lattice.field_spacing = 1.0 / 3.0;
    b.seed = 99;
    EXPECT_EQ(parse(serialize(b)), b);
    EXPECT_TRUE(std::isinf(parse(serialize(a)).p));
    EXPECT_EQ(serialize(parse(serialize(b))), serialize(b));
}

TEST(Config, RejectsBadInput)
{
    EXPECT_THROW(parse(R"({"bogus": 1})"), ConfigError);
    EXPECT_THROW(parse(R"({"density": {"amplitude": "big"}})"), ConfigError);
    EXPECT_THROW(parse(R"({"lattice": {"steps_per_unit": -4}})"), ConfigError);
    EXPECT_THROW(parse("{not json"), ConfigError);
    EXPECT_THROW(load_config(scratch("missing.json").string()), ConfigError);
    RunConfig c;
    c.horizon = -1.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = RunConfig{};
    c.mollifier = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    // partial documents keep the defaults
    EXPECT_EQ(parse("{}"), RunConfig{});
}

TEST(Config, InitialDataFollowsTheBumps)
{
    RunConfig c;
    const InitialData d = c.initial_data();
    EXPECT_NEAR(d.field.u1->value({0, 0, 0}), 0.1 * c.u1.bump.value(0.0), 1e-12);
    EXPECT_EQ(d.field.u1->value({1.01, 0, 0}), 0.0);
    EXPECT_TRUE(d.field.u2->is_zero());
    EXPECT_EQ(c.iteration_config().time_steps(), 8u);
}

TEST(Cli, CheckDataExitCodes)
{
    const fs::path ok = scratch("ok.json"), bad = scratch("bad.json"), big = scratch("big.json");
    RunConfig c;
    write_file(ok, serialize(c));
    c.density.amplitude = 80.0;
    write_file(big, serialize(c));
    write_file(bad, R"({"density": {"amplitude": -1}})");
    std::string text;
    EXPECT_EQ(cli({"check-data", "--config", ok.string()}, &text), kExitOk);
    EXPECT_NE(text.find("satisfied"), std::string::npos);
    EXPECT_EQ(cli({"check-data", "--config", big.string()}), kExitThreshold);
    EXPECT_EQ(cli({"check-data", "--config", bad.string()}), kExitConfig);
    EXPECT_EQ(cli({"check-data", "--config", scratch("nope.json").string()}), kExitConfig);
    EXPECT_EQ(cli({"explode"}), kExitConfig);
    EXPECT_EQ(cli({"check-data", "--config", ok.string(), "--seed", "3"}), kExitConfig);
}

TEST(Cli, ThresholdScalesWithAmplitude)
{
    // C(lambda f) = sqrt(lambda) C(f), so the gate flips at C^2 = 2
    RunConfig c;
    const double c2 = std::pow(data_threshold(c).C, 2);
    c.density.amplitude *= 0.99 * 2.0 / c2;
    EXPECT_TRUE(data_threshold(c).satisfied);
    c.density.amplitude *= 1.02;
    EXPECT_FALSE(data_threshold(c).satisfied);
    const fs::path path = scratch("edge.json");
    write_file(path, serialize(c));
    EXPECT_EQ(cli({"simulate", "--config", path.string(), "--out", scratch("edge_out").string()}), kExitThreshold);
}

TEST(Cli, VacuumSimulateWritesArtifacts)
{
    RunConfig c = small_run();
    c.density.amplitude = 0.0;
    c.u1.amplitude = 0.0;
    const fs::path cfg = scratch("vacuum.json"), out = scratch("vacuum_out");
    fs::remove_all(out);
    write_file(cfg, serialize(c));
    ASSERT_EQ(cli({"simulate", "--config", cfg.string(), "--out", out.string(), "--seed", "5"}), kExitOk);
    for (const char* f : {"manifest.json", "energy.csv", "inequalities.csv", "residuals.csv", "convergence.csv",
                          "snapshot_0.csv", "snapshot_1.csv"})
        EXPECT_TRUE(fs::exists(out / f)) << f;
    std::ifstream in(out / "manifest.json");
    const nlohmann::json m = nlohmann::json::parse(in);
    EXPECT_EQ(m["convergence"]["iterations"], 1);
    EXPECT_EQ(m["config"]["seed"], 5);
    EXPECT_EQ(m["config"]["output"], out.string());
    fs::remove_all(out);
}

TEST(Cli, RefineNeedsTwoIndices)
{
    RunConfig c = small_run();
    c.refine = {2};
    const fs::path cfg = scratch("refine1.json");
    write_file(cfg, serialize(c));
    EXPECT_EQ(cli({"refine", "--config", cfg.string(), "--out", scratch("refine1_out").string()}), kExitConfig);
}

TEST(Pipeline, SampleNodes)
{
    EXPECT_EQ(sample_nodes(8, 8), (std::vector<std::size_t>{0, 1, 2, 3, 5, 6, 7, 8}));
    EXPECT_EQ(sample_nodes(2, 8), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(sample_nodes(8, 1), (std::vector<std::size_t>{0}));
}
