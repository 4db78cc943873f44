#include "cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tricycle/errors.hpp"

namespace tricycle::harness {

namespace {

// Raw flag values; applied on top of the config file after parsing.
struct Flags {
    std::string config;
    std::optional<std::string> alpha, tau_c, tau_p, tau_ladder, format, drive, out;
    std::optional<double> cop_target;
    std::optional<int> nodes, refinements, min_steps;
};

void add_flags(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "JSON config file; flags override its values");
    app->add_option("--alpha", f.alpha, "spectral exponents: list or start:stop:step");
    app->add_option("--tau-c", f.tau_c, "cold-branch durations: list or start:stop:step");
    app->add_option("--tau-p", f.tau_p, "auxiliary-branch durations: list or start:stop:step");
    app->add_option("--cop-target", f.cop_target, "target COP for optimize");
    app->add_option("--nodes", f.nodes, "Simpson nodes (odd, >= 3)");
    app->add_option("--refinements", f.refinements, "node-doubling passes for the error estimate");
    app->add_option("--tau-ladder", f.tau_ladder, "durations for oracle-check (>= 3, increasing)");
    app->add_option("--min-steps", f.min_steps, "minimum RK4 steps per branch for oracle-check");
    app->add_option("--drive", f.drive, "cosine | frozen");
    app->add_option("--out", f.out, "output file (default stdout)");
    app->add_option("--format", f.format, "csv | jsonl");
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (f.alpha) cfg.alphas = parse_range(*f.alpha);
    if (f.tau_c) cfg.tau_c = parse_range(*f.tau_c);
    if (f.tau_p) cfg.tau_p = parse_range(*f.tau_p);
    if (f.tau_ladder) cfg.tau_ladder = parse_range(*f.tau_ladder);
    if (f.cop_target) cfg.cop_target = *f.cop_target;
    if (f.nodes) cfg.quadrature.nodes = *f.nodes;
    if (f.refinements) cfg.quadrature.refinements = *f.refinements;
    if (f.min_steps) cfg.min_steps = *f.min_steps;
    if (f.drive) cfg.drive = parse_drive(*f.drive);
    if (f.format) cfg.format = parse_format(*f.format);
    if (f.out) cfg.out = *f.out;
    return cfg;
}

using Command = std::function<int(const RunConfig&, std::ostream&, std::ostream&)>;

int dispatch(const Command& cmd, const Flags& flags, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = resolve(flags);
        if (cfg.out.empty()) return cmd(cfg, out, err);

        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << cfg.out << "' for writing\n";
            return kIo;
        }
        const int code = cmd(cfg, file, err);
        file.flush();
        if (!file) {
            err << "error: write to '" << cfg.out << "' failed\n";
            return kIo;
        }
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const tricycle::Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Slow-driving thermodynamics of a three-reservoir quantum refrigerator"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        Command cmd;
    };
    const Sub subs[] = {
        {"verify-bound", "check lh >= rh over the (alpha, tau_c, tau_p) grid", cmd_verify_bound},
        {"sweep", "emit the cycle metrics dataset over the grid", cmd_sweep},
        {"oracle-check", "measure the first-order convergence of the slow-driving expansion", cmd_oracle_check},
        {"optimize", "allocate tau_h and tau_p at a fixed COP", cmd_optimize},
    };

    Flags flags;
    std::vector<std::pair<CLI::App*, Command>> registered;
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_flags(sub, flags);
        registered.emplace_back(sub, s.cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    for (const auto& [sub, cmd] : registered)
        if (sub->parsed()) return dispatch(cmd, flags, out, err);
    return kUsage;
}

}  // namespace tricycle::harness
