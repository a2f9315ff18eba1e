#pragma once

#include <cstdint>
#include <string>

#include "ftn/pulse.hpp"
#include "ftn/types.hpp"

namespace ftn {

/// Tap-delay-line channel c(t) = sum_k gains[k] * delta(t - delays[k]).
/// Delays are strictly increasing and non-negative.
struct TapDelayLine {
  rvec delays; // seconds
  cvec gains;

  double t_min() const { return delays.front(); }
  double t_max() const { return delays.back(); }
  void validate() const;
};

/// Symbol-rate equivalent channel q[n] = q(nT) on n in [n_min, n_max].
struct DiscreteChannel {
  cvec taps;
  int n_min = 0;
  int n_max = 0;
  double t = 1.0; // sampling period T = gamma * t0

  int span() const { return n_max - n_min + 1; }
  cplx tap(int n) const {
    return (n < n_min || n > n_max) ? cplx(0.0) : taps[n - n_min];
  }
};

/// Single tap of unit gain at delay zero (the AWGN case).
TapDelayLine identity_channel();

/// Rayleigh fading channel: num_taps uniformly spaced delays over
/// [0, span] seconds, i.i.d. CN(0, 1/num_taps) gains, so the average
/// total energy is 1. Deterministic per seed.
TapDelayLine rayleigh_channel(int num_taps, double span, uint64_t rng_seed);

/// Composite pulse/channel response q(t) = sum_k c_k * g(t - tau_k),
/// evaluated exactly (no truncation).
cplx combined_response(const PulseSpec& spec, const TapDelayLine& ch, double t);

/// Samples q(t) at T = gamma*t0 over the index bounds
/// n_min = -nu + ceil(t_min/T), n_max = nu + floor(t_max/T).
/// Terms with |t - tau_k| > nu*T contribute zero (truncated tails).
DiscreteChannel discretize(const PulseSpec& spec, const TapDelayLine& ch,
                           double gamma);

/// JSON round trip: {"delays_s": [...], "gains_re": [...], "gains_im": [...]}.
std::string channel_to_json(const TapDelayLine& ch);
TapDelayLine channel_from_json(const std::string& text);

} // namespace ftn
