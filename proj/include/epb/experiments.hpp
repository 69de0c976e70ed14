// SPDX-License-Identifier: Apache-2.0
//
// Preset builders, reference rates, regime tables, and sweep generators for
// the five coincidence-experiment families.

#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "correlator.hpp"

namespace epb {

enum class ExperimentId {
    clauser_aspect,
    ghz,
    franson,
    ghosh_mandel,
    brendel,
};

enum class SkewMode { same, opposite };

/// A source plus the network wiring it to the detectors. Analyzer settings
/// stay separate so one preset serves a whole sweep.
struct ExperimentPreset {
    ExperimentId id{};
    SourceEnsemble source;
    OpticalNetwork network;
};

/// One sweep point: the swept parameter values, the raw engine rate, and
/// the natural normalized value for that sweep (documented per generator).
struct SweepRow {
    std::vector<double> params;
    double raw = 0.0;
    double value = 0.0;
};

/// Two detectors, one per source channel, each behind its own polarizer.
inline OpticalNetwork pair_network()
{
    OpticalNetwork net;
    net.channel_count = 2;
    net.rule = CombineRule::analyzer_product;
    PairingAlternative alt;
    alt.inputs = {{{{0, mat2_identity()}}}, {{{1, mat2_identity()}}}};
    alt.coherent = true;
    net.alternatives = {alt};
    return net;
}

/// Four-detector network for the double-pair source. Detectors 1 and 4 see
/// the direct signals A1 and B1; detectors 2 and 3 sit behind the two PBS
/// output ports, where A2 and B2 overlap:
///   in2 = P(0) B2 - P(pi/2) A2,   in3 = P(0) A2 - P(pi/2) B2.
/// With cross-talk (pairs overlapping in time) this is one coherent
/// network. Without it the transmit-transmit and reflect-reflect pairings
/// are distinguishable by arrival time and add at rate level.
inline OpticalNetwork ghz_network(bool crosstalk = true)
{
    constexpr std::size_t a1 = 0, a2 = 1, b1 = 2, b2 = 3;
    const Mat2 id = mat2_identity();
    const Mat2 transmit = polarizer(0.0);
    const Mat2 reflect = polarizer(std::numbers::pi / 2.0);

    OpticalNetwork net;
    net.channel_count = 4;
    net.rule = CombineRule::analyzer_product;

    if (crosstalk) {
        PairingAlternative alt;
        alt.inputs = {{{{a1, id}}},
                      {{{b2, transmit}, {a2, -reflect}}},
                      {{{a2, transmit}, {b2, -reflect}}},
                      {{{b1, id}}}};
        alt.coherent = true;
        net.alternatives = {alt};
        return net;
    }

    PairingAlternative tt;  // both PBS detectors fed by transmission
    tt.inputs = {{{{a1, id}}}, {{{b2, transmit}}}, {{{a2, transmit}}}, {{{b1, id}}}};
    tt.coherent = false;
    PairingAlternative rr;  // both fed by reflection
    rr.inputs = {{{{a1, id}}}, {{{a2, -reflect}}}, {{{b2, -reflect}}}, {{{b1, id}}}};
    rr.coherent = false;
    net.alternatives = {tt, rr};
    return net;
}

/// Two interferometer arms compared by conjugate inner product.
inline OpticalNetwork interferometer_network()
{
    OpticalNetwork net;
    net.channel_count = 2;
    net.rule = CombineRule::arm_inner_product;
    PairingAlternative alt;
    alt.inputs = {{{{0, mat2_identity()}}}, {{{1, mat2_identity()}}}};
    alt.coherent = true;
    net.alternatives = {alt};
    return net;
}

inline ExperimentPreset clauser_preset()
{
    return {ExperimentId::clauser_aspect, clauser_aspect_source(), pair_network()};
}

inline ExperimentPreset ghz_preset(bool crosstalk = true)
{
    return {ExperimentId::ghz, ghz_source(), ghz_network(crosstalk)};
}

inline ExperimentPreset franson_preset(double phi, double psi)
{
    return {ExperimentId::franson, franson_source(phi, psi), interferometer_network()};
}

inline ExperimentPreset ghosh_mandel_preset(double delta1, double delta2)
{
    return {ExperimentId::ghosh_mandel, ghosh_mandel_source(delta1, delta2),
            interferometer_network()};
}

inline ExperimentPreset brendel_preset(double phi, double psi, double s)
{
    return {ExperimentId::brendel, brendel_source(phi, psi, s), interferometer_network()};
}

/// Two-detector coincidence rate behind polarizers at theta1 and theta2.
/// raw = sin^2(theta1 - theta2)/4 in engine units; `value` carries the
/// denominator-normalized rate sin^2(theta1 - theta2).
inline CoincidenceResult clauser_aspect(double theta1, double theta2)
{
    const ExperimentPreset preset = clauser_preset();
    CoincidenceResult res = ensemble_rate(preset.source, preset.network,
                                          AnalyzerSettings{{theta1, theta2}});
    res.normalization = Normalization::denominator;
    res.value = res.raw / res.denominator;
    return res;
}

/// Four-fold coincidence rate at the given polarizer angles.
inline CoincidenceResult ghz_rate(const std::array<double, 4>& theta, bool crosstalk = true)
{
    const ExperimentPreset preset = ghz_preset(crosstalk);
    CoincidenceResult res = ensemble_rate(preset.source, preset.network,
                                          AnalyzerSettings{{theta[0], theta[1], theta[2], theta[3]}});
    res.normalization = Normalization::denominator;
    res.value = res.raw / res.denominator;
    return res;
}

/// The maximal four-fold rate: raw rate at {0, pi/2, pi/2, 0} with
/// cross-talk. All regime and skew outputs are quoted as ratios to this.
inline double ghz_reference_rate()
{
    constexpr double half_pi = std::numbers::pi / 2.0;
    return ghz_rate({0.0, half_pi, half_pi, 0.0}, true).raw;
}

/// All 16 regimes with each polarizer at 0 or pi/2, in lexicographic order
/// (theta1 most significant; 0 before pi/2). `value` is the ratio to the
/// maximal rate C. Exactly {0, pi/2, pi/2, 0} and {pi/2, 0, 0, pi/2} are
/// nonzero.
inline std::vector<SweepRow> ghz_regime_table()
{
    constexpr double half_pi = std::numbers::pi / 2.0;
    const double c_rate = ghz_reference_rate();
    std::vector<SweepRow> rows;
    rows.reserve(16);
    for (int i = 0; i < 16; ++i) {
        std::array<double, 4> theta{};
        for (int d = 0; d < 4; ++d) theta[d] = ((i >> (3 - d)) & 1) ? half_pi : 0.0;
        const double raw = ghz_rate(theta, true).raw;
        rows.push_back({{theta[0], theta[1], theta[2], theta[3]}, raw, raw / c_rate});
    }
    return rows;
}

/// Polarizer angles skewed by epsilon away from {pi/2, 0, 0, pi/2}: `same`
/// rotates all four polarizers by epsilon, `opposite` rotates the last one
/// by -epsilon instead.
inline std::array<double, 4> ghz_skewed_settings(SkewMode mode, double epsilon)
{
    constexpr double half_pi = std::numbers::pi / 2.0;
    const double last = (mode == SkewMode::same) ? half_pi + epsilon : half_pi - epsilon;
    return {half_pi + epsilon, epsilon, epsilon, last};
}

/// Rate vs polarizer skew epsilon, starting from {pi/2, 0, 0, pi/2}.
/// `value` is the ratio to C.
inline std::vector<SweepRow> ghz_skew_sweep(SkewMode mode, bool crosstalk,
                                            std::span<const double> epsilon_grid)
{
    if (epsilon_grid.empty())
        throw std::invalid_argument("ghz_skew_sweep: empty grid");
    const double c_rate = ghz_reference_rate();
    std::vector<SweepRow> rows;
    rows.reserve(epsilon_grid.size());
    for (const double eps : epsilon_grid) {
        const double raw = ghz_rate(ghz_skewed_settings(mode, eps), crosstalk).raw;
        rows.push_back({{eps}, raw, raw / c_rate});
    }
    return rows;
}

/// Interferometer fringe (1 + cos(phi - psi))/2: full-visibility
/// oscillation in the long-path phase difference.
inline CoincidenceResult franson(double phi, double psi)
{
    return franson_rate(franson_source(phi, psi));
}

/// Same formulas as franson(); offsets are path-length differences.
inline CoincidenceResult ghosh_mandel(double delta1, double delta2)
{
    return franson(delta1, delta2);
}

/// Dispersive fringe at one phase point: the Franson rate averaged over the
/// frequency spread. For psi = 0 the fringe follows
/// (1 + cos(phi) sinc(phi s_max))/2.
inline CoincidenceResult brendel_rate(double phi, double psi, const SpreadSpec& spec)
{
    return spread_average(
        [](double f, double p, double s) { return franson_rate(brendel_source(f, p, s)).raw; },
        phi, psi, spec);
}

/// Dispersive fringe over a phase grid; `value` repeats the raw rate (the
/// spread-averaged Franson rate is already normalized to peak 1).
inline std::vector<SweepRow> brendel_sweep(std::span<const double> phi_grid, double psi,
                                           const SpreadSpec& spec)
{
    if (phi_grid.empty())
        throw std::invalid_argument("brendel_sweep: empty grid");
    std::vector<SweepRow> rows;
    rows.reserve(phi_grid.size());
    for (const double phi : phi_grid) {
        const double raw = brendel_rate(phi, psi, spec).raw;
        rows.push_back({{phi}, raw, raw});
    }
    return rows;
}

/// Executable witness that nothing measured at one detector depends on the
/// order the detectors are evaluated in: recompute the rate with detectors
/// visited in permuted order and compare. Always true for this engine.
inline bool detection_order_invariance(const ExperimentPreset& preset,
                                       const AnalyzerSettings& set,
                                       std::span<const std::size_t> permutation)
{
    const std::size_t det = preset.network.detector_count();
    if (permutation.size() != det)
        throw std::invalid_argument("detection_order_invariance: permutation size mismatch");
    std::vector<bool> seen(det, false);
    for (const std::size_t p : permutation) {
        if (p >= det || seen[p])
            throw std::invalid_argument("detection_order_invariance: not a permutation");
        seen[p] = true;
    }

    OpticalNetwork permuted = preset.network;
    for (std::size_t a = 0; a < permuted.alternatives.size(); ++a)
        for (std::size_t d = 0; d < det; ++d)
            permuted.alternatives[a].inputs[d] =
                preset.network.alternatives[a].inputs[permutation[d]];
    AnalyzerSettings permuted_set;
    if (!set.theta.empty()) {
        permuted_set.theta.resize(det);
        for (std::size_t d = 0; d < det; ++d) permuted_set.theta[d] = set.theta[permutation[d]];
    }

    const double base = ensemble_rate(preset.source, preset.network, set).raw;
    const double permuted_rate = ensemble_rate(preset.source, permuted, permuted_set).raw;
    return std::abs(base - permuted_rate) <= 1e-12;
}

}  // namespace epb
