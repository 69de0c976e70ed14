// SPDX-License-Identifier: Apache-2.0
//
// Optical network description: how source channels combine into the field
// arriving at each detector, and how per-detector amplitudes combine into a
// coincidence amplitude.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fields.hpp"

namespace epb {

/// Polarizer angles, one per detector. Interferometric (inner-product)
/// networks carry their phases in the source fields and take no analyzer
/// angles; leave the list empty for those.
struct AnalyzerSettings {
    std::vector<double> theta;
};

/// One additive contribution to a detector input: `transfer` applied to one
/// source channel. PBS ports are expressed as polarizer(0) (transmission)
/// and polarizer(pi/2) (reflection, negated in the combining input).
struct NetworkTerm {
    std::size_t channel = 0;
    Mat2 transfer{};
};

/// The field arriving at one detector: a linear combination of channels.
struct DetectorInput {
    std::vector<NetworkTerm> terms;
};

/// How per-detector fields reduce to a single coincidence amplitude.
enum class CombineRule {
    /// Product over detectors of the scalar analyzer-output amplitudes.
    analyzer_product,
    /// Conjugate inner product of the two arm fields; used by the
    /// interferometer families, where path orthogonality stands in for
    /// polarization orthogonality.
    arm_inner_product,
};

/// One signal pairing. Source realizations always combine at amplitude
/// level inside an alternative; `coherent` controls whether the alternative
/// itself joins the others at amplitude level or at rate level
/// (indistinguishable vs time-separated pairings).
struct PairingAlternative {
    std::vector<DetectorInput> inputs;
    bool coherent = true;
};

struct OpticalNetwork {
    std::size_t channel_count = 0;
    CombineRule rule = CombineRule::analyzer_product;
    std::vector<PairingAlternative> alternatives;

    std::size_t detector_count() const
    {
        return alternatives.empty() ? 0 : alternatives.front().inputs.size();
    }

    void validate() const
    {
        if (alternatives.empty())
            throw std::invalid_argument("OpticalNetwork: at least one pairing alternative required");
        const std::size_t det = alternatives.front().inputs.size();
        for (const auto& alt : alternatives) {
            if (alt.inputs.size() != det)
                throw std::invalid_argument("OpticalNetwork: alternatives disagree on detector count");
            for (const auto& input : alt.inputs)
                for (const auto& term : input.terms)
                    if (term.channel >= channel_count)
                        throw std::invalid_argument("OpticalNetwork: term references undeclared channel");
        }
        if (rule == CombineRule::arm_inner_product && det != 2)
            throw std::invalid_argument("OpticalNetwork: inner-product rule requires exactly two arms");
    }
};

}  // namespace epb
