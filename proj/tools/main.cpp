#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gclab: kicked dissipative dynamics, entropy production and "
                 "Gallavotti-Cohen diagnostics"};
    app.require_subcommand(1);

    std::string config_path;
    gclab::cli::Overrides ov;
    std::uint64_t seed = 0;
    int threads = -1;
    std::string out_dir;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--threads", threads, "worker threads (0 = auto)");
    };

    for (const char* name : {"simulate", "oracle", "scgf", "rate", "verify"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : gclab::cli::kConfigError;
    }

    const auto* sub = app.get_subcommands().front();
    if (sub->count("--seed")) {
        ov.seed = seed;
        ov.has_seed = true;
    }
    ov.threads = sub->count("--threads") ? threads : -1;
    ov.out_dir = out_dir;
    return gclab::cli::run_command(sub->get_name(), config_path, ov);
}
