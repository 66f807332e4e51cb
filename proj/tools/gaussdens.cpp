// gaussdens command-line front end: argument parsing only, the work happens
// in gaussdens::cli::run.

#include "gaussdens/cli.hpp"
#include "gaussdens/errors.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    namespace gc = gaussdens::cli;

    CLI::App app{"Dirichlet-type density of Gaussian-integer sets"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::map<std::string, std::string> flags;
    bool strict = false;
    bool exact_only = false;

    app.add_option("--config", config_path, "key=value file mirroring the long flags");
    const std::pair<const char*, const char*> valued[] = {
        {"schedule", "k0..k1 (s = 1 + 0.5*2^-k) or a comma list of s values"},
        {"eps", "per-point accuracy target"},
        {"budget", "term budget per evaluation"},
        {"degree", "fit polynomial degree"},
        {"format", "table, csv or json"},
        {"out", "output path (stdout when absent)"},
        {"workers", "worker threads, 0 = hardware concurrency"},
        {"side", "oracle box side N"},
    };
    for (const auto& [name, help] : valued) app.add_option(std::string("--") + name, flags[name], help);
    app.add_flag("--strict", strict, "exit 3 when an estimate does not converge");
    app.add_flag("--exact-only", exact_only, "check: skip estimator-based rows");

    std::string expression;
    const std::pair<const char*, const char*> commands[] = {
        {"exact", "exact density with rule trace"},
        {"estimate", "numerical s -> 1 extrapolation"},
        {"compare", "exact value against the estimate"},
        {"sweep", "series value against s"},
        {"oracle", "brute-force partial sums and box counting"},
    };
    for (const auto& [name, help] : commands)
        app.add_subcommand(name, help)->add_option("expression", expression, "set expression")->required();
    app.add_subcommand("check", "invariant suite on the built-in corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    gc::Command cmd;
    cmd.subcommand = app.get_subcommands().front()->get_name();
    cmd.expression = expression;
    try {
        if (!config_path.empty()) gc::apply_config_file(cmd, config_path);
        for (const auto& [name, help] : valued) {
            (void)help;
            if (app.count(std::string("--") + name) > 0) gc::apply_setting(cmd, name, flags[name]);
        }
        if (strict) cmd.strict = true;
        if (exact_only) cmd.exact_only = true;
    } catch (const gaussdens::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    }
    return gc::run(cmd, std::cout, std::cerr);
}
