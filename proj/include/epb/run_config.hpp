// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: the JSON config document, its validation, and the
// shared angle-literal parser ("0.25pi" forms).

#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "correlator.hpp"
#include "experiments.hpp"

namespace epb {

/// Configuration rejected; the message carries "line N:" context from the
/// config document. Maps to exit code 2 in the CLI.
class config_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    clauser,
    ghz,
    ghz_table,
    ghz_skew,
    franson,
    ghosh_mandel,
    brendel,
    mc,
};

enum class OutputFormat { csv, json };

struct SweepSpec {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
};

struct McBlock {
    std::string target = "clauser";  // experiment whose rate is estimated
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    double s = 0.0;            // fixed spread for a brendel target
    double window = 0.01;      // coincidence window of the stream demo
    double duration = 1000.0;  // stream demo duration
    double poisson_rate = -1.0;  // >= 0 switches to the Poisson stream demo
};

struct RunConfig {
    ExperimentKind experiment = ExperimentKind::clauser;
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0, theta4 = 0.0;
    double phi = 0.0, psi = 0.0;  // interferometer phases / path offsets
    bool crosstalk = true;
    SkewMode skew_mode = SkewMode::same;
    SpreadSpec spread{};
    std::optional<SweepSpec> sweep;
    Normalization normalization = Normalization::max_of_sweep;
    McBlock mc{};
    std::string out;  // empty = stdout
    OutputFormat format = OutputFormat::csv;
    bool pi_units = false;
};

/// Parse an angle literal: a plain number, or a number with a "pi" suffix
/// ("0.25pi", "-0.5pi", "pi").
inline double parse_angle(const std::string& text)
{
    std::string body = text;
    bool has_pi = false;
    if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
        has_pi = true;
        body.erase(body.size() - 2);
        if (body.empty() || body == "-" || body == "+") body += "1";
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(body, &used);
    } catch (const std::exception&) {
        throw config_error("invalid angle literal '" + text + "'");
    }
    if (used != body.size())
        throw config_error("invalid angle literal '" + text + "'");
    return has_pi ? v * std::numbers::pi : v;
}

namespace detail {

inline int line_of_offset(const std::string& text, std::size_t offset)
{
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline int line_of_key(const std::string& text, const std::string& key)
{
    const std::size_t pos = text.find("\"" + key + "\"");
    return pos == std::string::npos ? 1 : line_of_offset(text, pos);
}

[[noreturn]] inline void fail_at(const std::string& text, const std::string& key,
                                 const std::string& what)
{
    throw config_error("line " + std::to_string(line_of_key(text, key)) + ": " + what);
}

inline double angle_value(const nlohmann::json& v, const std::string& text,
                          const std::string& key)
{
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return parse_angle(v.get<std::string>());
        } catch (const config_error& e) {
            fail_at(text, key, e.what());
        }
    }
    fail_at(text, key, "expected a number or angle literal for '" + key + "'");
}

inline ExperimentKind experiment_from_name(const std::string& name, const std::string& text)
{
    if (name == "clauser") return ExperimentKind::clauser;
    if (name == "ghz") return ExperimentKind::ghz;
    if (name == "ghz-table") return ExperimentKind::ghz_table;
    if (name == "ghz-skew") return ExperimentKind::ghz_skew;
    if (name == "franson") return ExperimentKind::franson;
    if (name == "ghosh-mandel") return ExperimentKind::ghosh_mandel;
    if (name == "brendel") return ExperimentKind::brendel;
    if (name == "mc") return ExperimentKind::mc;
    fail_at(text, "experiment", "unknown experiment id \"" + name + "\"");
}

inline bool sweep_param_valid(ExperimentKind kind, const std::string& param)
{
    switch (kind) {
        case ExperimentKind::clauser:
            return param == "theta1" || param == "theta2";
        case ExperimentKind::ghz:
            return param == "theta1" || param == "theta2" || param == "theta3" ||
                   param == "theta4";
        case ExperimentKind::ghz_skew:
            return param == "epsilon";
        case ExperimentKind::franson:
            return param == "phi" || param == "psi";
        case ExperimentKind::ghosh_mandel:
            return param == "delta1" || param == "delta2";
        case ExperimentKind::brendel:
            return param == "phi";
        default:
            return false;
    }
}

}  // namespace detail

/// Parse and validate a JSON config document. Defaults: normalization
/// max-of-sweep, 201 quadrature nodes, cross-talk on, CSV to stdout.
inline RunConfig parse_config(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("line " + std::to_string(detail::line_of_offset(text, e.byte)) +
                           ": malformed JSON: " + e.what());
    }
    if (!doc.is_object())
        throw config_error("line 1: config must be a JSON object");

    try {
    static const std::set<std::string> known{
        "experiment", "settings", "sweep", "normalize", "crosstalk", "skew_mode",
        "smax",       "nodes",    "mc",    "out",       "format",    "pi_units"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key)) detail::fail_at(text, key, "unknown config key \"" + key + "\"");

    RunConfig cfg;
    if (!doc.contains("experiment"))
        throw config_error("line 1: missing required key \"experiment\"");
    cfg.experiment =
        detail::experiment_from_name(doc["experiment"].get<std::string>(), text);

    if (doc.contains("settings")) {
        const auto& s = doc["settings"];
        if (!s.is_object()) detail::fail_at(text, "settings", "settings must be an object");
        for (const auto& [key, v] : s.items()) {
            const double angle = detail::angle_value(v, text, key);
            if (key == "theta1")
                cfg.theta1 = angle;
            else if (key == "theta2")
                cfg.theta2 = angle;
            else if (key == "theta3")
                cfg.theta3 = angle;
            else if (key == "theta4")
                cfg.theta4 = angle;
            else if (key == "phi" || key == "delta1")
                cfg.phi = angle;
            else if (key == "psi" || key == "delta2")
                cfg.psi = angle;
            else
                detail::fail_at(text, key, "unknown setting \"" + key + "\"");
        }
    }

    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        if (!s.is_object() || !s.contains("param") || !s.contains("start") ||
            !s.contains("stop") || !s.contains("step"))
            detail::fail_at(text, "sweep", "sweep requires param, start, stop, step");
        SweepSpec sweep;
        sweep.param = s["param"].get<std::string>();
        sweep.start = detail::angle_value(s["start"], text, "start");
        sweep.stop = detail::angle_value(s["stop"], text, "stop");
        sweep.step = detail::angle_value(s["step"], text, "step");
        if (!(sweep.step > 0.0)) detail::fail_at(text, "step", "sweep step must be > 0");
        if (sweep.stop < sweep.start)
            detail::fail_at(text, "stop", "sweep stop must be >= start");
        if (!detail::sweep_param_valid(cfg.experiment, sweep.param))
            detail::fail_at(text, "param",
                            "parameter \"" + sweep.param + "\" is not sweepable here");
        cfg.sweep = sweep;
    }

    if (doc.contains("normalize")) {
        const std::string mode = doc["normalize"].get<std::string>();
        if (mode == "raw")
            cfg.normalization = Normalization::raw;
        else if (mode == "max")
            cfg.normalization = Normalization::max_of_sweep;
        else if (mode == "denominator")
            cfg.normalization = Normalization::denominator;
        else
            detail::fail_at(text, "normalize", "unknown normalization \"" + mode + "\"");
    }

    if (doc.contains("crosstalk")) {
        const auto& v = doc["crosstalk"];
        if (v.is_boolean())
            cfg.crosstalk = v.get<bool>();
        else if (v == "on")
            cfg.crosstalk = true;
        else if (v == "off")
            cfg.crosstalk = false;
        else
            detail::fail_at(text, "crosstalk", "crosstalk must be \"on\" or \"off\"");
    }

    if (doc.contains("skew_mode")) {
        const std::string mode = doc["skew_mode"].get<std::string>();
        if (mode == "same")
            cfg.skew_mode = SkewMode::same;
        else if (mode == "opposite")
            cfg.skew_mode = SkewMode::opposite;
        else
            detail::fail_at(text, "skew_mode", "skew_mode must be \"same\" or \"opposite\"");
    }

    if (doc.contains("smax")) cfg.spread.s_max = doc["smax"].get<double>();
    if (doc.contains("nodes")) cfg.spread.nodes = doc["nodes"].get<int>();
    if (!(cfg.spread.s_max > 0.0 && cfg.spread.s_max < 1.0))
        detail::fail_at(text, "smax", "smax must lie in (0, 1)");
    if (cfg.spread.nodes < 3 || cfg.spread.nodes % 2 == 0)
        detail::fail_at(text, "nodes", "quadrature node count must be odd and >= 3");

    if (doc.contains("mc")) {
        const auto& m = doc["mc"];
        if (!m.is_object()) detail::fail_at(text, "mc", "mc must be an object");
        if (m.contains("target")) cfg.mc.target = m["target"].get<std::string>();
        if (m.contains("trials")) cfg.mc.trials = m["trials"].get<std::uint64_t>();
        if (m.contains("seed")) cfg.mc.seed = m["seed"].get<std::uint64_t>();
        if (m.contains("s")) cfg.mc.s = m["s"].get<double>();
        if (m.contains("window")) cfg.mc.window = m["window"].get<double>();
        if (m.contains("duration")) cfg.mc.duration = m["duration"].get<double>();
        if (m.contains("poisson_rate")) cfg.mc.poisson_rate = m["poisson_rate"].get<double>();
        if (cfg.mc.trials < 1) detail::fail_at(text, "trials", "trials must be >= 1");
    }

    if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
    if (doc.contains("format")) {
        const std::string f = doc["format"].get<std::string>();
        if (f == "csv")
            cfg.format = OutputFormat::csv;
        else if (f == "json")
            cfg.format = OutputFormat::json;
        else
            detail::fail_at(text, "format", "format must be \"csv\" or \"json\"");
    }
    if (doc.contains("pi_units")) cfg.pi_units = doc["pi_units"].get<bool>();

    return cfg;
    } catch (const config_error&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("line 1: invalid config value: " + std::string(e.what()));
    }
}

}  // namespace epb
