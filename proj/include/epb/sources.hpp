// SPDX-License-Identifier: Apache-2.0
//
// Emission models: weighted ensembles of discrete source realizations for
// each coincidence-experiment family.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fields.hpp"

namespace epb {

/// Uniform fractional-frequency spread of a phase-matched pulse pair
/// (one member up by s, the other down by s) and the quadrature resolution
/// used when averaging over it.
struct SpreadSpec {
    double s_max = 0.05;
    int nodes = 201;

    void validate() const
    {
        if (!(s_max > 0.0 && s_max < 1.0))
            throw std::invalid_argument("SpreadSpec: s_max must lie in (0, 1)");
        if (nodes < 3 || nodes % 2 == 0)
            throw std::invalid_argument("SpreadSpec: quadrature node count must be odd and >= 3");
    }
};

/// One discrete source configuration: the emitted field per source channel,
/// its probability weight, and the discrete mode indices where applicable.
struct EmissionRealization {
    std::vector<FieldVec2> channels;
    double weight = 1.0;
    int mode_n = 0;
    int mode_m = 0;
};

/// Weighted set of realizations a source can emit; weights sum to 1.
struct SourceEnsemble {
    std::vector<EmissionRealization> realizations;
    std::optional<SpreadSpec> spread;
};

/// Sum of realization weights (1 within 1e-12 for every builder below).
inline double total_weight(const SourceEnsemble& ens)
{
    double w = 0.0;
    for (const auto& r : ens.realizations) w += r.weight;
    return w;
}

/// Cascade-transition pair source: two anticorrelated signals confined to
/// the x/y polarization modes. The binary mode n selects which member is
/// vertical; both values occur with weight 1/2.
///   n=0: S1=(1,0), S2=(0,-1)      n=1: S1=(0,1), S2=(1,0)
inline SourceEnsemble clauser_aspect_source()
{
    SourceEnsemble ens;
    ens.realizations = {
        {{FieldVec2{{1.0}, {0.0}}, FieldVec2{{0.0}, {-1.0}}}, 0.5, 0, 0},
        {{FieldVec2{{0.0}, {1.0}}, FieldVec2{{1.0}, {0.0}}}, 0.5, 1, 0},
    };
    return ens;
}

/// Double-pass down-conversion source for four-fold coincidences: two
/// independent anticorrelated pairs (A1, A2) and (B1, B2), with independent
/// binary modes n and m. Channel order: A1, A2, B1, B2; weight 1/4 each.
inline SourceEnsemble ghz_source()
{
    const FieldVec2 x{{1.0}, {0.0}};
    const FieldVec2 y{{0.0}, {1.0}};
    const FieldVec2 minus_y{{0.0}, {-1.0}};

    SourceEnsemble ens;
    for (int n = 0; n < 2; ++n) {
        for (int m = 0; m < 2; ++m) {
            EmissionRealization r;
            r.channels = {n == 0 ? x : y, n == 0 ? minus_y : x,
                          m == 0 ? x : y, m == 0 ? minus_y : x};
            r.weight = 0.25;
            r.mode_n = n;
            r.mode_m = m;
            ens.realizations.push_back(std::move(r));
        }
    }
    return ens;
}

/// Twin-interferometer source: two identical pulses split between a short
/// and a long path, the long paths carrying adjustable phases phi (left)
/// and psi (right). Single unit-weight realization with channels
/// (E_l, E_r) = (phase_arm(phi), phase_arm(psi)); the right arm enters the
/// correlator through the conjugated side of the inner product.
inline SourceEnsemble franson_source(double phi, double psi)
{
    SourceEnsemble ens;
    ens.realizations = {{{phase_arm(phi), phase_arm(psi)}, 1.0, 0, 0}};
    return ens;
}

/// Dispersive variant of franson_source: phase matching shifts the pair
/// members' frequencies by +-s, scaling the accumulated arm phases to
/// phi(1-s) on the left and psi(1+s) on the right. s=0 reproduces
/// franson_source exactly.
inline SourceEnsemble brendel_source(double phi, double psi, double s)
{
    if (!(std::abs(s) < 1.0))
        throw std::invalid_argument("brendel_source: |s| must be < 1");
    return franson_source(phi * (1.0 - s), psi * (1.0 + s));
}

/// Path-length-difference variant: the offsets are geometric rather than
/// temporal, so the field construction is the same as franson_source.
inline SourceEnsemble ghosh_mandel_source(double delta1, double delta2)
{
    return franson_source(delta1, delta2);
}

}  // namespace epb
