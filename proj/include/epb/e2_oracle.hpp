// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference for ensemble_rate, used by the test suites. The
// conjugated and unconjugated amplitude sums are expanded literally, term
// by term over realizations and network terms, with no algebraic
// simplification and none of the correlator's evaluation helpers. Small
// instances only (<= 4 detectors, <= 8 realizations).

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "network.hpp"
#include "sources.hpp"

namespace epb {

namespace oracle_detail {

// One realization's amplitude through one alternative, kept as the flat
// list of unsimplified product terms whose sum is the amplitude.
inline std::vector<Cplx> amplitude_terms(const EmissionRealization& r,
                                         const PairingAlternative& alt,
                                         const AnalyzerSettings& set, CombineRule rule)
{
    const std::size_t det = alt.inputs.size();

    // transfer * channel, spelled out
    auto routed = [&r](const NetworkTerm& t) {
        const FieldVec2& ch = r.channels[t.channel];
        return FieldVec2{t.transfer.m00 * ch.c0 + t.transfer.m01 * ch.c1,
                         t.transfer.m10 * ch.c0 + t.transfer.m11 * ch.c1};
    };

    if (rule == CombineRule::arm_inner_product) {
        // conj(left) . right expanded over both arms' term lists and both
        // vector components
        std::vector<Cplx> terms;
        for (const auto& lt : alt.inputs[0].terms) {
            const FieldVec2 l = routed(lt);
            for (const auto& rt : alt.inputs[1].terms) {
                const FieldVec2 rv = routed(rt);
                terms.push_back(std::conj(l.c0) * rv.c0);
                terms.push_back(std::conj(l.c1) * rv.c1);
            }
        }
        return terms;
    }

    // Analyzer product: expand the product over detectors of
    // sum-over-network-terms of projected amplitudes, one product term per
    // combination of network terms (odometer enumeration).
    std::vector<std::size_t> pick(det, 0);
    std::vector<Cplx> terms;
    for (;;) {
        Cplx prod{1.0};
        for (std::size_t d = 0; d < det; ++d) {
            const FieldVec2 f = routed(alt.inputs[d].terms[pick[d]]);
            prod *= f.c0 * std::cos(set.theta[d]) + f.c1 * std::sin(set.theta[d]);
        }
        terms.push_back(prod);

        std::size_t d = 0;
        while (d < det && ++pick[d] == alt.inputs[d].terms.size()) pick[d++] = 0;
        if (d == det) break;
    }
    return terms;
}

// Full double sum over weighted amplitude terms: sum_{i,j} conj(a_i) a_j.
inline double expanded_square(const std::vector<Cplx>& weighted_terms)
{
    Cplx total{};
    for (const Cplx& a : weighted_terms)
        for (const Cplx& b : weighted_terms) total += std::conj(a) * b;
    return std::real(total);
}

}  // namespace oracle_detail

/// Reference coincidence rate: equals ensemble_rate(...).raw within 1e-12.
inline double e2_direct_oracle(const SourceEnsemble& ens, const OpticalNetwork& net,
                               const AnalyzerSettings& set)
{
    std::vector<Cplx> coherent_terms;
    double rate = 0.0;
    for (const auto& alt : net.alternatives) {
        std::vector<Cplx> alt_terms;
        for (const auto& r : ens.realizations)
            for (const Cplx& t : oracle_detail::amplitude_terms(r, alt, set, net.rule))
                alt_terms.push_back(r.weight * t);
        if (alt.coherent)
            coherent_terms.insert(coherent_terms.end(), alt_terms.begin(), alt_terms.end());
        else
            rate += oracle_detail::expanded_square(alt_terms);
    }
    rate += oracle_detail::expanded_square(coherent_terms);
    return rate;
}

}  // namespace epb
