#pragma once

#include <cstdint>

#include "ftn/channel.hpp"
#include "ftn/pulse.hpp"
#include "ftn/types.hpp"

namespace ftn {

/// Zero-mean uncorrelated transmit symbols s[n] with power sigma2.
struct SymbolStream {
  cvec symbols;
  double sigma2 = 1.0;
};

/// BPSK mapping: bit 0 -> +sqrt(sigma2), bit 1 -> -sqrt(sigma2).
SymbolStream modulate_bpsk(const std::vector<uint8_t>& bits, double sigma2);

std::vector<uint8_t> random_bits(size_t count, uint64_t rng_seed);

/// Matched-filter noise statistics: eta[n] is zero-mean circularly
/// symmetric with E{eta[n] eta*[m]} = n0 * g((n-m)T). cov_lags holds
/// n0 * g(d*T) for d = 0..nu; lags beyond the truncation width are zero.
struct NoiseModel {
  double n0 = 0.0;
  rvec cov_lags;

  static NoiseModel make(const PulseSpec& spec, double gamma, double n0);
  double lag(long d) const {
    const size_t a = static_cast<size_t>(d < 0 ? -d : d);
    return a < cov_lags.size() ? cov_lags[a] : 0.0;
  }
};

/// Dense-factorization colored noise draw: builds the length x length
/// Toeplitz covariance, takes its symmetric square root with eigenvalues
/// clipped to zero when slightly negative, and colors a white draw.
/// Throws if an eigenvalue falls below -1e-8 * n0.
cvec colored_noise(const NoiseModel& model, size_t length, uint64_t rng_seed);

/// Reusable factorization for repeated same-length draws.
class ColoredNoiseFactor {
public:
  ColoredNoiseFactor(const NoiseModel& model, size_t length);
  ~ColoredNoiseFactor();
  ColoredNoiseFactor(ColoredNoiseFactor&&) noexcept;
  ColoredNoiseFactor(const ColoredNoiseFactor&) = delete;
  ColoredNoiseFactor& operator=(const ColoredNoiseFactor&) = delete;

  size_t length() const { return length_; }
  cvec draw(uint64_t rng_seed) const;

private:
  struct Impl;
  Impl* impl_;
  size_t length_;
};

/// Stationary colored stream of arbitrary length via circulant
/// embedding of the banded Toeplitz covariance: one spectral
/// factorization, exact target covariance on the returned samples.
/// This is the generator the experiment drivers use.
cvec colored_noise_stream(const NoiseModel& model, size_t length,
                          uint64_t rng_seed);

/// Received samples r[n] = sum_l q[l] s[n-l] + eta[n] for
/// n in [first_out, first_out + out_len). Symbols outside the stream
/// are taken as zero (finite transmission); the noise realization is
/// a colored draw aligned to the output vector, independent of s.
cvec synthesize_received(const SymbolStream& sym, const DiscreteChannel& dch,
                         const NoiseModel& model, uint64_t rng_seed,
                         long first_out, size_t out_len);

/// Full convolution span [n_min, K-1+n_max] for K symbols.
cvec synthesize_full(const SymbolStream& sym, const DiscreteChannel& dch,
                     const NoiseModel& model, uint64_t rng_seed);

/// Fully-supported span [n_max, K-1+n_min]; throws if the stream is
/// shorter than the channel memory (K < span).
cvec synthesize_interior(const SymbolStream& sym, const DiscreteChannel& dch,
                         const NoiseModel& model, uint64_t rng_seed);

/// Rational FTN factor gamma = num/den for the oversampled oracle.
struct GammaRatio {
  int num = 1;
  int den = 1;
  double value() const { return static_cast<double>(num) / den; }
};

/// Independent continuous-time oracle: shapes impulses with h on a fine
/// grid (oversample*den samples per t0), convolves with the tap-delay
/// line, adds white noise of variance n0 per unit time, matched-filters
/// with h and samples at t = nT. Output aligned with
/// synthesize_received(first_out, out_len). Rejects den > 64.
cvec waveform_oracle(const SymbolStream& sym, const PulseSpec& spec,
                     const TapDelayLine& ch, GammaRatio gamma, double n0,
                     uint64_t rng_seed, long first_out, size_t out_len,
                     int oversample = 16);

} // namespace ftn
