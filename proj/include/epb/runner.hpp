// SPDX-License-Identifier: Apache-2.0
//
// Drives one configured run: builds the sweep grid, evaluates the
// experiment per point, applies the normalization mode, and assembles the
// output table in grid order.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "detector.hpp"
#include "experiments.hpp"
#include "output_table.hpp"
#include "run_config.hpp"

namespace epb {

namespace detail {

inline std::vector<double> sweep_grid(const SweepSpec& sweep)
{
    std::vector<double> grid;
    const double slack = sweep.step * 1e-9;
    for (std::size_t k = 0;; ++k) {
        const double v = sweep.start + static_cast<double>(k) * sweep.step;
        if (v > sweep.stop + slack) break;
        grid.push_back(v);
    }
    return grid;
}

inline void push_angle_cells(std::vector<Cell>& row, double radians, bool pi_units)
{
    row.push_back(num_cell(radians));
    if (pi_units) row.push_back(num_cell(radians / std::numbers::pi));
}

inline void push_angle_headers(std::vector<std::string>& header, const std::string& name,
                               bool pi_units)
{
    header.push_back(name + "_rad");
    if (pi_units) header.push_back(name + "_pi");
}

struct Point {
    std::vector<double> angles;  // experiment-specific meaning, grid order
    CoincidenceResult result;
};

inline OutputTable assemble(const RunConfig& cfg, const std::vector<std::string>& angle_names,
                            std::vector<Point> points, const std::vector<double>* ratio_to_c)
{
    std::vector<CoincidenceResult> results;
    results.reserve(points.size());
    for (const auto& p : points) results.push_back(p.result);
    results = normalize(std::move(results), cfg.normalization);

    OutputTable table;
    for (const auto& name : angle_names)
        push_angle_headers(table.header, name, cfg.pi_units);
    table.header.push_back("raw");
    table.header.push_back("normalized");
    if (ratio_to_c) table.header.push_back("ratio_to_c");

    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Cell> row;
        for (const double a : points[i].angles) push_angle_cells(row, a, cfg.pi_units);
        row.push_back(num_cell(results[i].raw));
        row.push_back(num_cell(results[i].value));
        if (ratio_to_c) row.push_back(num_cell((*ratio_to_c)[i]));
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline OutputTable run_clauser(const RunConfig& cfg)
{
    std::vector<Point> points;
    if (cfg.sweep) {
        for (const double v : sweep_grid(*cfg.sweep)) {
            const double t1 = cfg.sweep->param == "theta1" ? v : cfg.theta1;
            const double t2 = cfg.sweep->param == "theta2" ? v : cfg.theta2;
            points.push_back({{t1, t2}, clauser_aspect(t1, t2)});
        }
    } else {
        points.push_back({{cfg.theta1, cfg.theta2}, clauser_aspect(cfg.theta1, cfg.theta2)});
    }
    return assemble(cfg, {"theta1", "theta2"}, std::move(points), nullptr);
}

inline OutputTable run_ghz(const RunConfig& cfg)
{
    const double c_rate = ghz_reference_rate();
    std::vector<Point> points;
    std::vector<double> ratios;
    auto add = [&](std::array<double, 4> theta) {
        const CoincidenceResult res = ghz_rate(theta, cfg.crosstalk);
        ratios.push_back(res.raw / c_rate);
        points.push_back({{theta[0], theta[1], theta[2], theta[3]}, res});
    };
    if (cfg.sweep) {
        const int swept = cfg.sweep->param[5] - '1';  // theta1..theta4
        for (const double v : sweep_grid(*cfg.sweep)) {
            std::array<double, 4> theta{cfg.theta1, cfg.theta2, cfg.theta3, cfg.theta4};
            theta[swept] = v;
            add(theta);
        }
    } else {
        add({cfg.theta1, cfg.theta2, cfg.theta3, cfg.theta4});
    }
    return assemble(cfg, {"theta1", "theta2", "theta3", "theta4"}, std::move(points), &ratios);
}

inline OutputTable run_ghz_table(const RunConfig& cfg)
{
    const double c_rate = ghz_reference_rate();
    std::vector<Point> points;
    std::vector<double> ratios;
    for (const SweepRow& row : ghz_regime_table()) {
        const CoincidenceResult res =
            ghz_rate({row.params[0], row.params[1], row.params[2], row.params[3]}, true);
        ratios.push_back(res.raw / c_rate);
        points.push_back({row.params, res});
    }
    return assemble(cfg, {"theta1", "theta2", "theta3", "theta4"}, std::move(points), &ratios);
}

inline OutputTable run_ghz_skew(const RunConfig& cfg)
{
    SweepSpec sweep = cfg.sweep ? *cfg.sweep
                                : SweepSpec{"epsilon", 0.0, std::numbers::pi / 2.0,
                                            std::numbers::pi / 200.0};
    const double c_rate = ghz_reference_rate();
    std::vector<Point> points;
    std::vector<double> ratios;
    for (const double eps : sweep_grid(sweep)) {
        const CoincidenceResult res =
            ghz_rate(ghz_skewed_settings(cfg.skew_mode, eps), cfg.crosstalk);
        ratios.push_back(res.raw / c_rate);
        points.push_back({{eps}, res});
    }
    return assemble(cfg, {"epsilon"}, std::move(points), &ratios);
}

inline OutputTable run_interferometer(const RunConfig& cfg, bool ghosh)
{
    std::vector<Point> points;
    auto rate = [&](double a, double b) { return ghosh ? ghosh_mandel(a, b) : franson(a, b); };
    if (cfg.sweep) {
        const bool first = cfg.sweep->param == "phi" || cfg.sweep->param == "delta1";
        for (const double v : sweep_grid(*cfg.sweep)) {
            const double a = first ? v : cfg.phi;
            const double b = first ? cfg.psi : v;
            points.push_back({{a, b}, rate(a, b)});
        }
    } else {
        points.push_back({{cfg.phi, cfg.psi}, rate(cfg.phi, cfg.psi)});
    }
    const std::vector<std::string> names =
        ghosh ? std::vector<std::string>{"delta1", "delta2"}
              : std::vector<std::string>{"phi", "psi"};
    return assemble(cfg, names, std::move(points), nullptr);
}

inline OutputTable run_brendel(const RunConfig& cfg)
{
    std::vector<Point> points;
    if (cfg.sweep) {
        for (const double v : sweep_grid(*cfg.sweep))
            points.push_back({{v, cfg.psi}, brendel_rate(v, cfg.psi, cfg.spread)});
    } else {
        points.push_back({{cfg.phi, cfg.psi}, brendel_rate(cfg.phi, cfg.psi, cfg.spread)});
    }
    OutputTable table = assemble(cfg, {"phi", "psi"}, std::move(points), nullptr);
    table.header.push_back("smax");
    for (auto& row : table.rows) row.push_back(num_cell(cfg.spread.s_max));
    return table;
}

inline OutputTable run_mc(const RunConfig& cfg)
{
    OutputTable table;

    if (cfg.mc.poisson_rate >= 0.0) {
        // Stream demo: two independent detectors at the same rate, counted
        // through the coincidence window. Accidentals ~ 2 rate^2 tau T.
        const EventStream a = poisson_stream(cfg.mc.poisson_rate, cfg.mc.duration, cfg.mc.seed, 0);
        const EventStream b = poisson_stream(cfg.mc.poisson_rate, cfg.mc.duration, cfg.mc.seed, 1);
        const std::array<EventStream, 2> streams{a, b};
        const std::size_t coincidences = coincidence_count(streams, {cfg.mc.window});
        const double expected =
            2.0 * cfg.mc.poisson_rate * cfg.mc.poisson_rate * cfg.mc.window * cfg.mc.duration;
        table.header = {"rate",    "duration",     "window",      "seed",
                        "count_a", "count_b",      "coincidences", "expected_accidentals"};
        table.rows.push_back({num_cell(cfg.mc.poisson_rate), num_cell(cfg.mc.duration),
                              num_cell(cfg.mc.window),
                              int_cell(static_cast<long long>(cfg.mc.seed)),
                              int_cell(static_cast<long long>(a.times.size())),
                              int_cell(static_cast<long long>(b.times.size())),
                              int_cell(static_cast<long long>(coincidences)),
                              num_cell(expected)});
        return table;
    }

    ExperimentPreset preset;
    AnalyzerSettings settings;
    std::vector<std::pair<std::string, double>> shown;
    if (cfg.mc.target == "clauser") {
        preset = clauser_preset();
        settings.theta = {cfg.theta1, cfg.theta2};
        shown = {{"theta1_rad", cfg.theta1}, {"theta2_rad", cfg.theta2}};
    } else if (cfg.mc.target == "ghz") {
        preset = ghz_preset(cfg.crosstalk);
        settings.theta = {cfg.theta1, cfg.theta2, cfg.theta3, cfg.theta4};
        shown = {{"theta1_rad", cfg.theta1},
                 {"theta2_rad", cfg.theta2},
                 {"theta3_rad", cfg.theta3},
                 {"theta4_rad", cfg.theta4}};
    } else if (cfg.mc.target == "franson") {
        preset = franson_preset(cfg.phi, cfg.psi);
        shown = {{"phi_rad", cfg.phi}, {"psi_rad", cfg.psi}};
    } else if (cfg.mc.target == "ghosh-mandel") {
        preset = ghosh_mandel_preset(cfg.phi, cfg.psi);
        shown = {{"delta1_rad", cfg.phi}, {"delta2_rad", cfg.psi}};
    } else if (cfg.mc.target == "brendel") {
        preset = brendel_preset(cfg.phi, cfg.psi, cfg.mc.s);
        shown = {{"phi_rad", cfg.phi}, {"psi_rad", cfg.psi}, {"s", cfg.mc.s}};
    } else {
        throw config_error("unknown mc target \"" + cfg.mc.target + "\"");
    }

    const McEstimate est = mc_estimate(preset, settings, cfg.mc.trials, cfg.mc.seed);
    const double analytic = ensemble_rate(preset.source, preset.network, settings).raw;

    table.header = {"target"};
    std::vector<Cell> row{str_cell(cfg.mc.target)};
    for (const auto& [name, value] : shown) {
        table.header.push_back(name);
        row.push_back(num_cell(value));
    }
    for (const char* h : {"trials", "seed", "estimate", "std_err", "analytic_raw", "abs_error"})
        table.header.push_back(h);
    row.push_back(int_cell(static_cast<long long>(cfg.mc.trials)));
    row.push_back(int_cell(static_cast<long long>(cfg.mc.seed)));
    row.push_back(num_cell(est.estimate));
    row.push_back(num_cell(est.std_err));
    row.push_back(num_cell(analytic));
    row.push_back(num_cell(std::abs(est.estimate - analytic)));
    table.rows.push_back(std::move(row));
    return table;
}

}  // namespace detail

/// Evaluate one run configuration into its output table. Rows appear in
/// grid order; output bytes are a pure function of the configuration.
inline OutputTable run(const RunConfig& cfg)
{
    switch (cfg.experiment) {
        case ExperimentKind::clauser:
            return detail::run_clauser(cfg);
        case ExperimentKind::ghz:
            return detail::run_ghz(cfg);
        case ExperimentKind::ghz_table:
            return detail::run_ghz_table(cfg);
        case ExperimentKind::ghz_skew:
            return detail::run_ghz_skew(cfg);
        case ExperimentKind::franson:
            return detail::run_interferometer(cfg, false);
        case ExperimentKind::ghosh_mandel:
            return detail::run_interferometer(cfg, true);
        case ExperimentKind::brendel:
            return detail::run_brendel(cfg);
        case ExperimentKind::mc:
            return detail::run_mc(cfg);
    }
    throw config_error("unreachable experiment kind");
}

}  // namespace epb
