// SPDX-License-Identifier: Apache-2.0
//
// Coincidence-rate engine. The normative semantics: a coincidence amplitude
// is the product of scalar analyzer-output amplitudes (or the conjugate
// inner product of the two arm fields); the ensemble average is taken at
// amplitude level over the realizations of each pairing alternative; the
// modulus squared is taken last; distinguishable alternatives add at rate
// level.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "network.hpp"
#include "sources.hpp"

namespace epb {

/// A computation collapsed to something unnormalizable: an all-zero sweep,
/// a zero-norm arm field.
class degenerate_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Normalization {
    raw,           ///< value = raw rate, engine units
    max_of_sweep,  ///< value = raw / max(raw over the sweep)
    denominator,   ///< value = raw / product of mean detector intensities
};

struct CoincidenceResult {
    double raw = 0.0;
    /// Product of ensemble-mean detector intensities (the constant the raw
    /// rate is divided by under Normalization::denominator).
    double denominator = 1.0;
    Normalization normalization = Normalization::raw;
    double value = 0.0;
};

namespace detail {

inline void check_arity(const SourceEnsemble& ens, const OpticalNetwork& net,
                        const AnalyzerSettings& set)
{
    net.validate();
    for (const auto& r : ens.realizations)
        if (r.channels.size() != net.channel_count)
            throw std::invalid_argument("ensemble/network arity mismatch: channel counts differ");
    if (net.rule == CombineRule::analyzer_product && set.theta.size() != net.detector_count())
        throw std::invalid_argument("analyzer settings do not match detector count");
}

}  // namespace detail

/// Field arriving at `detector` for one alternative and one realization.
inline FieldVec2 detector_input_field(const PairingAlternative& alt, std::size_t detector,
                                      const EmissionRealization& r)
{
    FieldVec2 field{};
    for (const auto& term : alt.inputs[detector].terms)
        field = field + apply(term.transfer, r.channels[term.channel]);
    return field;
}

/// Joint amplitude of one realization through one pairing alternative:
/// the product over detectors of project(input field, theta_i), or the
/// conjugate inner product of the two arms.
inline Cplx coincidence_amplitude(const EmissionRealization& r, const PairingAlternative& alt,
                                  const AnalyzerSettings& set, CombineRule rule)
{
    if (rule == CombineRule::arm_inner_product)
        return inner_conj(detector_input_field(alt, 0, r), detector_input_field(alt, 1, r));
    Cplx amp{1.0};
    for (std::size_t d = 0; d < alt.inputs.size(); ++d)
        amp *= project(detector_input_field(alt, d, r), set.theta[d]);
    return amp;
}

/// Convenience overload for fully coherent networks: the amplitude summed
/// over all (coherent) alternatives.
inline Cplx coincidence_amplitude(const EmissionRealization& r, const OpticalNetwork& net,
                                  const AnalyzerSettings& set)
{
    if (r.channels.size() != net.channel_count)
        throw std::invalid_argument("realization/network arity mismatch");
    Cplx amp{};
    for (const auto& alt : net.alternatives) {
        if (!alt.coherent)
            throw std::invalid_argument("coincidence_amplitude: network has incoherent alternatives;"
                                        " evaluate them separately");
        amp += coincidence_amplitude(r, alt, set, net.rule);
    }
    return amp;
}

namespace detail {

/// Product over detectors of the ensemble-mean intensity at each detector
/// (summed over alternatives). For inner-product networks this is the
/// product of the two mean arm intensities.
inline double mean_intensity_product(const SourceEnsemble& ens, const OpticalNetwork& net,
                                     const AnalyzerSettings& set)
{
    const std::size_t det = net.detector_count();
    double prod = 1.0;
    for (std::size_t d = 0; d < det; ++d) {
        double mean = 0.0;
        for (const auto& alt : net.alternatives)
            for (const auto& r : ens.realizations) {
                const FieldVec2 field = detector_input_field(alt, d, r);
                mean += r.weight * (net.rule == CombineRule::arm_inner_product
                                        ? norm2(field)
                                        : std::norm(project(field, set.theta[d])));
            }
        prod *= mean;
    }
    return prod;
}

}  // namespace detail

/// Ensemble-averaged coincidence rate. Coherent alternatives pool their
/// weighted amplitudes into one sum that is squared once; each incoherent
/// alternative contributes its own squared amplitude sum.
inline CoincidenceResult ensemble_rate(const SourceEnsemble& ens, const OpticalNetwork& net,
                                       const AnalyzerSettings& set)
{
    detail::check_arity(ens, net, set);
    if (std::abs(total_weight(ens) - 1.0) > 1e-9)
        throw std::invalid_argument("ensemble weights must sum to 1");

    Cplx coherent_sum{};
    double raw = 0.0;
    for (const auto& alt : net.alternatives) {
        Cplx amp{};
        for (const auto& r : ens.realizations)
            amp += r.weight * coincidence_amplitude(r, alt, set, net.rule);
        if (alt.coherent)
            coherent_sum += amp;
        else
            raw += std::norm(amp);
    }
    raw += std::norm(coherent_sum);

    CoincidenceResult res;
    res.raw = raw;
    res.denominator = detail::mean_intensity_product(ens, net, set);
    res.normalization = Normalization::raw;
    res.value = raw;
    return res;
}

/// Interferometer coincidence rate, denominator included:
/// |conj(E_l).E_r|^2 / (|E_l|^2 |E_r|^2) for the ensemble's single
/// two-channel realization. Equals 1 at equal arm phases.
inline CoincidenceResult franson_rate(const SourceEnsemble& ens)
{
    if (ens.realizations.size() != 1 || ens.realizations.front().channels.size() != 2)
        throw std::invalid_argument("franson_rate: expects a single two-channel realization");
    const auto& ch = ens.realizations.front().channels;
    const double nl = norm2(ch[0]);
    const double nr = norm2(ch[1]);
    if (nl <= 0.0 || nr <= 0.0)
        throw degenerate_error("franson_rate: zero-norm arm field");

    CoincidenceResult res;
    res.raw = std::norm(inner_conj(ch[0], ch[1])) / (nl * nr);
    res.denominator = 1.0;
    res.normalization = Normalization::raw;
    res.value = res.raw;
    return res;
}

/// Mean of rate(phi, psi, s) over the uniform spread s in [-s_max, s_max],
/// by composite Simpson quadrature on spec.nodes points.
template <class RateFn>
inline CoincidenceResult spread_average(RateFn&& rate, double phi, double psi,
                                        const SpreadSpec& spec)
{
    spec.validate();
    const int intervals = spec.nodes - 1;
    const double a = -spec.s_max;
    const double h = 2.0 * spec.s_max / intervals;

    double sum = rate(phi, psi, a) + rate(phi, psi, a + intervals * h);
    for (int i = 1; i < intervals; ++i)
        sum += rate(phi, psi, a + i * h) * ((i % 2 != 0) ? 4.0 : 2.0);
    const double integral = sum * h / 3.0;

    CoincidenceResult res;
    res.raw = integral / (2.0 * spec.s_max);
    res.denominator = 1.0;
    res.normalization = Normalization::raw;
    res.value = res.raw;
    return res;
}

/// Apply a normalization mode to a sweep's results. Raw rates are never
/// modified; only `value` and the mode tag change.
inline std::vector<CoincidenceResult> normalize(std::vector<CoincidenceResult> results,
                                                Normalization mode)
{
    switch (mode) {
        case Normalization::raw:
            for (auto& r : results) {
                r.value = r.raw;
                r.normalization = mode;
            }
            break;
        case Normalization::max_of_sweep: {
            double max_raw = 0.0;
            for (const auto& r : results) max_raw = std::max(max_raw, r.raw);
            if (!(max_raw > 0.0))
                throw degenerate_error("normalize: all-zero sweep under max-of-sweep");
            for (auto& r : results) {
                r.value = r.raw / max_raw;
                r.normalization = mode;
            }
            break;
        }
        case Normalization::denominator:
            for (auto& r : results) {
                if (!(r.denominator > 0.0))
                    throw degenerate_error("normalize: zero denominator");
                r.value = r.raw / r.denominator;
                r.normalization = mode;
            }
            break;
    }
    return results;
}

}  // namespace epb
