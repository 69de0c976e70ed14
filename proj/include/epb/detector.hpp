// SPDX-License-Identifier: Apache-2.0
//
// Stochastic photodetection layer: Poisson event streams proportional to
// intensity, coincidence-window counting, and a Monte Carlo estimator that
// converges to the analytic coincidence rate.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "experiments.hpp"

namespace epb {

/// Counter-based generator: the draw at counter i is a pure function of
/// (seed, stream, i), so results are independent of evaluation order and
/// thread count. The mixing function is the splitmix64 finalizer.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed + kGolden * (stream + 1)))
    {
    }

    std::uint64_t u64_at(std::uint64_t counter) const { return mix(key_ + kGolden * (counter + 1)); }

    /// Uniform double strictly inside (0, 1).
    double unit_at(std::uint64_t counter) const
    {
        return (static_cast<double>(u64_at(counter) >> 11) + 0.5) * 0x1p-53;
    }

    std::uint64_t next_u64() { return u64_at(counter_++); }
    double next_unit() { return unit_at(counter_++); }

  private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Detection events of one detector over [0, duration], strictly inside,
/// ascending. Time units are abstract: only the products rate*duration and
/// rate*window matter.
struct EventStream {
    int detector = 0;
    std::vector<double> times;
    double duration = 0.0;
};

/// Maximum pairwise separation for events to count as one joint detection.
struct CoincidenceWindow {
    double tau = 0.0;
};

/// Homogeneous Poisson process with the given rate: photocurrent pulses at
/// random times in proportion to the intensity.
inline EventStream poisson_stream(double intensity, double duration, std::uint64_t seed,
                                  int detector = 0)
{
    if (!(intensity >= 0.0))
        throw std::domain_error("poisson_stream: intensity must be nonnegative");
    if (!(duration > 0.0))
        throw std::domain_error("poisson_stream: duration must be positive");

    EventStream stream{detector, {}, duration};
    if (intensity == 0.0) return stream;

    CounterRng rng(seed, static_cast<std::uint64_t>(static_cast<std::uint32_t>(detector)));
    double t = 0.0;
    for (;;) {
        t += -std::log(rng.next_unit()) / intensity;
        if (t >= duration) break;
        stream.times.push_back(t);
    }
    return stream;
}

/// Count k-fold coincidences: tuples with one event per stream whose max
/// pairwise separation is at most tau, matched greedily in time order with
/// each event used at most once (hardware-like one-shot circuitry).
inline std::size_t coincidence_count(std::span<const EventStream> streams,
                                     const CoincidenceWindow& window)
{
    if (streams.size() < 2)
        throw std::invalid_argument("coincidence_count: need at least two streams");
    if (!(window.tau > 0.0))
        throw std::invalid_argument("coincidence_count: window width must be positive");
    for (const auto& s : streams)
        if (s.duration != streams.front().duration)
            throw std::domain_error("coincidence_count: stream durations differ");

    const std::size_t k = streams.size();
    std::vector<std::size_t> pos(k, 0);
    std::size_t count = 0;
    for (;;) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        std::size_t lo_stream = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (pos[i] >= streams[i].times.size()) return count;
            const double t = streams[i].times[pos[i]];
            if (t < lo) {
                lo = t;
                lo_stream = i;
            }
            hi = std::max(hi, t);
        }
        if (hi - lo <= window.tau) {
            ++count;
            for (auto& p : pos) ++p;
        } else {
            ++pos[lo_stream];  // earliest event can never pair with hi
        }
    }
}

struct McEstimate {
    double estimate = 0.0;
    double std_err = 0.0;
    std::uint64_t trials = 0;
};

/// Monte Carlo counterpart of ensemble_rate: per trial one realization is
/// drawn by weight; the per-trial joint amplitudes are averaged over trials
/// (coherent alternatives pooled) and squared last, mirroring the analytic
/// engine. The reported standard error comes from the delta method applied
/// to the squared amplitude means; it scales as 1/sqrt(trials).
inline McEstimate mc_estimate(const SourceEnsemble& ens, const OpticalNetwork& net,
                              const AnalyzerSettings& set, std::uint64_t trials,
                              std::uint64_t seed)
{
    detail::check_arity(ens, net, set);
    if (trials < 1) throw std::invalid_argument("mc_estimate: trials must be >= 1");

    const std::size_t n_real = ens.realizations.size();

    // Channel 0 pools the coherent alternatives; each incoherent
    // alternative gets its own channel.
    std::size_t n_chan = 1;
    for (const auto& alt : net.alternatives)
        if (!alt.coherent) ++n_chan;

    // Amplitudes depend only on the drawn realization; tabulate once.
    std::vector<std::vector<Cplx>> amp(n_chan, std::vector<Cplx>(n_real));
    for (std::size_t r = 0; r < n_real; ++r) {
        std::size_t chan = 1;
        for (const auto& alt : net.alternatives) {
            const Cplx a = coincidence_amplitude(ens.realizations[r], alt, set, net.rule);
            if (alt.coherent)
                amp[0][r] += a;
            else
                amp[chan++][r] = a;
        }
    }

    std::vector<double> cumulative(n_real);
    double acc = 0.0;
    for (std::size_t r = 0; r < n_real; ++r) {
        acc += ens.realizations[r].weight;
        cumulative[r] = acc;
    }

    CounterRng rng(seed);
    std::vector<std::uint64_t> counts(n_real, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double u = rng.unit_at(t) * acc;
        const std::size_t r = static_cast<std::size_t>(
            std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        ++counts[std::min(r, n_real - 1)];
    }

    const double inv_n = 1.0 / static_cast<double>(trials);
    std::vector<Cplx> mean_amp(n_chan);
    for (std::size_t c = 0; c < n_chan; ++c)
        for (std::size_t r = 0; r < n_real; ++r)
            mean_amp[c] += (static_cast<double>(counts[r]) * inv_n) * amp[c][r];

    double estimate = 0.0;
    for (const auto& m : mean_amp) estimate += std::norm(m);

    // Influence of realization r on the estimate, for the delta-method
    // variance of |mean amplitude|^2 sums.
    std::vector<double> influence(n_real, 0.0);
    for (std::size_t r = 0; r < n_real; ++r)
        for (std::size_t c = 0; c < n_chan; ++c)
            influence[r] += 2.0 * std::real(std::conj(mean_amp[c]) * amp[c][r]);

    double mean_g = 0.0;
    for (std::size_t r = 0; r < n_real; ++r)
        mean_g += static_cast<double>(counts[r]) * inv_n * influence[r];
    double var_g = 0.0;
    for (std::size_t r = 0; r < n_real; ++r) {
        const double d = influence[r] - mean_g;
        var_g += static_cast<double>(counts[r]) * inv_n * d * d;
    }
    if (trials > 1) var_g *= static_cast<double>(trials) / static_cast<double>(trials - 1);

    McEstimate out;
    out.estimate = estimate;
    out.std_err = std::sqrt(var_g * inv_n);
    out.trials = trials;
    return out;
}

inline McEstimate mc_estimate(const ExperimentPreset& preset, const AnalyzerSettings& set,
                              std::uint64_t trials, std::uint64_t seed)
{
    return mc_estimate(preset.source, preset.network, set, trials, seed);
}

}  // namespace epb
