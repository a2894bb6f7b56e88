#include <ostream>

#include <CLI11.hpp>

#include "vkg/app/commands.hpp"
#include "vkg/error.hpp"

namespace vkg::app {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Regularized relativistic Vlasov-Klein-Gordon simulator"};
    app.require_subcommand(1);

    std::string config_path;
    RunOptions opt;
    std::string out_dir;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub, bool runs) {
        sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
        if (!runs)
            return;
        sub->add_option("--out", out_dir, "output directory (overrides 'output')");
        sub->add_option("--seed", seed, "seed of the gap sample set (overrides 'seed')");
        sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--force", opt.force, "run even when the smallness threshold fails");
    };
    CLI::App* check = app.add_subcommand("check-data", "evaluate the smallness threshold of the initial data");
    CLI::App* simulate = app.add_subcommand("simulate", "solve the regularized system and write diagnostics");
    CLI::App* refine = app.add_subcommand("refine", "compare runs over the mollifier indices in 'refine'");
    add_common(check, false);
    add_common(simulate, true);
    add_common(refine, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (!out_dir.empty())
        opt.out = out_dir;
    if (const CLI::Option* s = sub->get_option_no_throw("--seed"); s && s->count() > 0)
        opt.seed = seed;

    try {
        RunConfig cfg = load_config(config_path);
        cfg.validate();
        if (sub == check)
            return cmd_check_data(cfg, out);
        if (sub == simulate)
            return cmd_simulate(cfg, opt, out, err);
        return cmd_refine(cfg, opt, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IterationError& e) {
        err << "iteration failed: " << e.what() << '\n';
        return kExitNotConverged;
    }
}

} // namespace vkg::app
