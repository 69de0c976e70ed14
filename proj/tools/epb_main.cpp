// SPDX-License-Identifier: Apache-2.0
//
// epb command line front end: one subcommand per experiment family, config
// file plus flag overrides, CSV/JSON sweep output.
//
// Exit codes: 0 success, 2 configuration error, 3 degenerate computation.

#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "epb/output_table.hpp"
#include "epb/run_config.hpp"
#include "epb/runner.hpp"

namespace {

struct FlagValues {
    std::string config_path;
    std::string out;
    std::string format;
    std::string normalize;
    std::string crosstalk;
    std::string skew_mode;
    std::string theta1, theta2, theta3, theta4, phi, psi, delta1, delta2;
    std::string sweep_param, sweep_start, sweep_stop, sweep_step;
    double smax = 0.0;
    int nodes = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double window = 0.0;
    double duration = 0.0;
    double poisson_rate = 0.0;
    double spread_s = 0.0;
    std::string mc_target;
    bool pi_units = false;
};

// Attach the shared option set to one subcommand. Angle-valued options are
// taken as strings so "0.25pi" literals work everywhere.
void add_common_options(CLI::App* cmd, FlagValues& f)
{
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
    cmd->add_option("--out", f.out, "output path (default: stdout)");
    cmd->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--normalize", f.normalize, "raw|max|denominator")
        ->check(CLI::IsMember({"raw", "max", "denominator"}));
    cmd->add_flag("--pi-units", f.pi_units, "add *_pi angle columns");
    cmd->add_option("--sweep-param", f.sweep_param, "swept parameter name");
    cmd->add_option("--sweep-start", f.sweep_start, "sweep start (angle literal)");
    cmd->add_option("--sweep-stop", f.sweep_stop, "sweep stop (angle literal)");
    cmd->add_option("--sweep-step", f.sweep_step, "sweep step (angle literal)");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw epb::config_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Merge flag overrides (only options the user actually passed) onto cfg.
void apply_overrides(const CLI::App* cmd, const FlagValues& f, epb::RunConfig& cfg)
{
    auto passed = [cmd](const std::string& name) {
        const CLI::Option* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };

    if (passed("--out")) cfg.out = f.out;
    if (passed("--format"))
        cfg.format = f.format == "json" ? epb::OutputFormat::json : epb::OutputFormat::csv;
    if (passed("--normalize")) {
        if (f.normalize == "raw")
            cfg.normalization = epb::Normalization::raw;
        else if (f.normalize == "max")
            cfg.normalization = epb::Normalization::max_of_sweep;
        else
            cfg.normalization = epb::Normalization::denominator;
    }
    if (passed("--pi-units")) cfg.pi_units = f.pi_units;
    if (passed("--crosstalk")) cfg.crosstalk = f.crosstalk == "on";
    if (passed("--skew-mode"))
        cfg.skew_mode = f.skew_mode == "opposite" ? epb::SkewMode::opposite : epb::SkewMode::same;
    if (passed("--smax")) cfg.spread.s_max = f.smax;
    if (passed("--nodes")) cfg.spread.nodes = f.nodes;
    if (passed("--trials")) cfg.mc.trials = f.trials;
    if (passed("--seed")) cfg.mc.seed = f.seed;
    if (passed("--window")) cfg.mc.window = f.window;
    if (passed("--duration")) cfg.mc.duration = f.duration;
    if (passed("--poisson-rate")) cfg.mc.poisson_rate = f.poisson_rate;
    if (passed("--s")) cfg.mc.s = f.spread_s;
    if (passed("--target")) cfg.mc.target = f.mc_target;

    if (passed("--theta1")) cfg.theta1 = epb::parse_angle(f.theta1);
    if (passed("--theta2")) cfg.theta2 = epb::parse_angle(f.theta2);
    if (passed("--theta3")) cfg.theta3 = epb::parse_angle(f.theta3);
    if (passed("--theta4")) cfg.theta4 = epb::parse_angle(f.theta4);
    if (passed("--phi")) cfg.phi = epb::parse_angle(f.phi);
    if (passed("--psi")) cfg.psi = epb::parse_angle(f.psi);
    if (passed("--delta1")) cfg.phi = epb::parse_angle(f.delta1);
    if (passed("--delta2")) cfg.psi = epb::parse_angle(f.delta2);

    if (passed("--sweep-param") || passed("--sweep-start") || passed("--sweep-stop") ||
        passed("--sweep-step")) {
        if (!(passed("--sweep-param") && passed("--sweep-start") && passed("--sweep-stop") &&
              passed("--sweep-step")))
            throw epb::config_error("a sweep needs --sweep-param, --sweep-start, --sweep-stop,"
                                    " and --sweep-step together");
        epb::SweepSpec sweep;
        sweep.param = f.sweep_param;
        sweep.start = epb::parse_angle(f.sweep_start);
        sweep.stop = epb::parse_angle(f.sweep_stop);
        sweep.step = epb::parse_angle(f.sweep_step);
        if (!(sweep.step > 0.0)) throw epb::config_error("sweep step must be > 0");
        if (sweep.stop < sweep.start) throw epb::config_error("sweep stop must be >= start");
        cfg.sweep = sweep;
    }
}

void validate_for_experiment(const epb::RunConfig& cfg)
{
    cfg.spread.validate();
    if (cfg.sweep && !epb::detail::sweep_param_valid(cfg.experiment, cfg.sweep->param))
        throw epb::config_error("parameter \"" + cfg.sweep->param + "\" is not sweepable here");
    if (cfg.experiment == epb::ExperimentKind::ghz_table && cfg.sweep)
        throw epb::config_error("ghz-table takes no sweep");
    if (cfg.experiment == epb::ExperimentKind::mc && cfg.sweep)
        throw epb::config_error("mc takes no sweep");
}

void emit(const epb::RunConfig& cfg, const epb::OutputTable& table)
{
    if (cfg.out.empty()) {
        if (cfg.format == epb::OutputFormat::csv)
            epb::write_csv(table, std::cout);
        else
            epb::write_json(table, std::cout);
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw epb::config_error("cannot open output file '" + cfg.out + "'");
    if (cfg.format == epb::OutputFormat::csv)
        epb::write_csv(table, out);
    else
        epb::write_json(table, out);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"epb: classical coincidence-optics simulator"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* cmd;
        epb::ExperimentKind kind;
        FlagValues flags;
    };
    // deque: CLI11 keeps pointers into each Sub's flags, so element
    // addresses must stay stable while subcommands are added
    std::deque<Sub> subs;
    auto make_sub = [&](const std::string& name, epb::ExperimentKind kind,
                        const std::string& desc) -> Sub& {
        subs.push_back({app.add_subcommand(name, desc), kind, {}});
        Sub& s = subs.back();
        add_common_options(s.cmd, s.flags);
        return s;
    };

    {
        Sub& s = make_sub("clauser", epb::ExperimentKind::clauser,
                          "two-detector polarizer coincidence rate");
        s.cmd->add_option("--theta1", s.flags.theta1, "polarizer 1 angle");
        s.cmd->add_option("--theta2", s.flags.theta2, "polarizer 2 angle");
    }
    {
        Sub& s = make_sub("ghz", epb::ExperimentKind::ghz, "four-fold coincidence rate");
        s.cmd->add_option("--theta1", s.flags.theta1, "polarizer 1 angle");
        s.cmd->add_option("--theta2", s.flags.theta2, "polarizer 2 angle");
        s.cmd->add_option("--theta3", s.flags.theta3, "polarizer 3 angle");
        s.cmd->add_option("--theta4", s.flags.theta4, "polarizer 4 angle");
        s.cmd->add_option("--crosstalk", s.flags.crosstalk, "on|off")
            ->check(CLI::IsMember({"on", "off"}));
    }
    {
        make_sub("ghz-table", epb::ExperimentKind::ghz_table,
                 "all 16 regimes with polarizers at 0 or pi/2");
    }
    {
        Sub& s = make_sub("ghz-skew", epb::ExperimentKind::ghz_skew,
                          "rate vs polarizer skew from {pi/2,0,0,pi/2}");
        s.cmd->add_option("--skew-mode", s.flags.skew_mode, "same|opposite")
            ->check(CLI::IsMember({"same", "opposite"}));
        s.cmd->add_option("--crosstalk", s.flags.crosstalk, "on|off")
            ->check(CLI::IsMember({"on", "off"}));
    }
    {
        Sub& s = make_sub("franson", epb::ExperimentKind::franson,
                          "twin-interferometer fringe vs long-path phases");
        s.cmd->add_option("--phi", s.flags.phi, "left long-path phase");
        s.cmd->add_option("--psi", s.flags.psi, "right long-path phase");
    }
    {
        Sub& s = make_sub("ghosh-mandel", epb::ExperimentKind::ghosh_mandel,
                          "path-length-difference fringe");
        s.cmd->add_option("--delta1", s.flags.delta1, "left path-length phase");
        s.cmd->add_option("--delta2", s.flags.delta2, "right path-length phase");
    }
    {
        Sub& s = make_sub("brendel", epb::ExperimentKind::brendel,
                          "dispersive fringe averaged over frequency spread");
        s.cmd->add_option("--phi", s.flags.phi, "left long-path phase");
        s.cmd->add_option("--psi", s.flags.psi, "right long-path phase");
        s.cmd->add_option("--smax", s.flags.smax, "fractional frequency spread bound");
        s.cmd->add_option("--nodes", s.flags.nodes, "quadrature nodes (odd, >= 3)");
    }
    {
        Sub& s = make_sub("mc", epb::ExperimentKind::mc,
                          "Monte Carlo estimate, or Poisson stream demo");
        s.cmd->add_option("--target", s.flags.mc_target,
                          "clauser|ghz|franson|ghosh-mandel|brendel");
        s.cmd->add_option("--theta1", s.flags.theta1, "polarizer 1 angle");
        s.cmd->add_option("--theta2", s.flags.theta2, "polarizer 2 angle");
        s.cmd->add_option("--theta3", s.flags.theta3, "polarizer 3 angle");
        s.cmd->add_option("--theta4", s.flags.theta4, "polarizer 4 angle");
        s.cmd->add_option("--phi", s.flags.phi, "left phase");
        s.cmd->add_option("--psi", s.flags.psi, "right phase");
        s.cmd->add_option("--s", s.flags.spread_s, "fixed spread for a brendel target");
        s.cmd->add_option("--crosstalk", s.flags.crosstalk, "on|off")
            ->check(CLI::IsMember({"on", "off"}));
        s.cmd->add_option("--trials", s.flags.trials, "Monte Carlo trials");
        s.cmd->add_option("--seed", s.flags.seed, "random seed");
        s.cmd->add_option("--window", s.flags.window, "coincidence window width");
        s.cmd->add_option("--duration", s.flags.duration, "stream demo duration");
        s.cmd->add_option("--poisson-rate", s.flags.poisson_rate,
                          "run the two-stream Poisson demo at this rate");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Sub* active = nullptr;
        for (Sub& s : subs)
            if (s.cmd->parsed()) active = &s;
        if (active == nullptr) {
            std::cerr << "error: no subcommand given\n";
            return 2;
        }

        epb::RunConfig cfg;
        if (!active->flags.config_path.empty())
            cfg = epb::parse_config(read_file(active->flags.config_path));
        cfg.experiment = active->kind;
        apply_overrides(active->cmd, active->flags, cfg);
        validate_for_experiment(cfg);

        emit(cfg, epb::run(cfg));
        return 0;
    } catch (const epb::degenerate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const epb::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
