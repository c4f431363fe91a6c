#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "flatfront/commands.hpp"
#include "flatfront/errors.hpp"
#include "flatfront/parallel.hpp"

int main(int argc, char** argv) {
    using namespace flatfront;
    CLI::App app{"Flat fronts in hyperbolic 3-space and their duals"};
    app.require_subcommand(1, 1);
    std::string config_path;
    std::string out_dir;
    int threads = 0;
    for (Command c : {Command::trace, Command::classify, Command::invariants, Command::mesh, Command::verify}) {
        CLI::App* sub = app.add_subcommand(to_string(c));
        sub->add_option("--config", config_path, "INI job file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out-dir", out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--threads", threads, "worker threads (default: FLATFRONT_THREADS or hardware)")
            ->check(CLI::PositiveNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    const Command cmd = parse_command(app.get_subcommands().front()->get_name());
    if (threads > 0) set_default_threads(threads);
    try {
        JobConfig cfg = load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        return run_command(cmd, cfg, std::cout).exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
}
