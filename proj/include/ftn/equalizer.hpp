#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "ftn/channel.hpp"
#include "ftn/link.hpp"
#include "ftn/pulse.hpp"
#include "ftn/types.hpp"

namespace ftn {

/// Overlap-FDE block geometry: window size n, p head and q_discard tail
/// outputs dropped, stride m = n - p - q_discard.
struct BlockConfig {
  int n = 512;
  int p = 0;
  int q_discard = 0;

  int m() const { return n - p - q_discard; }
  void validate(int channel_span) const;
};

/// Eigenvalues of the circulant channel matrix Q under the DFT
/// (unnormalized forward DFT of Q's first column).
struct CirculantSpectrum {
  cvec lambda;
  int size() const { return static_cast<int>(lambda.size()); }
};

/// lambda_k = sum_l q[l] exp(+j 2 pi k (n_max - l) / n).
CirculantSpectrum build_spectrum(const DiscreteChannel& dch, int n);

/// DFT-domain noise power spectral density:
/// phi[k] = (n0/n) sum_{|d|<n} (n-|d|) g(dT) exp(-j 2 pi d k / n),
/// real by symmetry, tiny negatives clipped at zero. g is truncated at
/// the spec's nu, matching the block model and the noise generator.
rvec noise_psd(const PulseSpec& spec, double gamma, double n0, int n);

enum class WeightKind { white, colored_diag, colored_full };

const char* to_string(WeightKind kind);
WeightKind weight_kind_from_string(const std::string& name);

/// FDE weight in the DFT domain. Diagonal kinds use `diag`; the full
/// colored-noise MMSE weight uses the dense matrix. `psd` caches the
/// noise PSD the weight was built against (n0 itself for white).
/// `regularized` flags near-singular bins that hit the epsilon floor.
struct WeightSet {
  WeightKind kind = WeightKind::white;
  cvec diag;
  Eigen::MatrixXcd full;
  rvec psd;
  bool regularized = false;
};

/// w_k = conj(lambda_k) / (|lambda_k|^2 + n0/sigma2).
WeightSet weight_white(const CirculantSpectrum& spectrum, double n0,
                       double sigma2);

/// w_k = conj(lambda_k) / (|lambda_k|^2 + psd[k]/sigma2), the one-tap
/// approximation of the colored-noise MMSE weight.
WeightSet weight_colored_diag(const CirculantSpectrum& spectrum,
                              std::span<const double> psd, double sigma2);

/// Exact colored-noise MMSE weight
/// W = Lambda^H (Lambda Lambda^H + (1/sigma2) D C D^H)^{-1}
/// with C[n,m] = n0 g((n-m)T) and D the unitary DFT. O(n^3); intended
/// for n <= 1024 validation runs.
WeightSet weight_colored_full(const CirculantSpectrum& spectrum,
                              const PulseSpec& spec, double gamma, double n0,
                              double sigma2, int n);

struct Equalized {
  cvec estimates;
  long first_symbol; // estimates[i] targets s[first_symbol + i]
};

/// CP-free overlap FDE: windows of n samples advancing by m, composite
/// D^H W D per window, keep outputs [p, p+m). Window starting at
/// received index k yields estimates of s[k - n_max + p .. +m).
/// r_first is the received index of r[0].
Equalized overlap_fde(std::span<const cplx> r, long r_first,
                      const BlockConfig& cfg, const WeightSet& w,
                      const DiscreteChannel& dch);

/// Baseline chain with a symbol-level cyclic prefix: per block of n
/// symbols the last cp_len are prepended, the receiver drops the prefix
/// samples and applies FDE over one n-sample window. Returns estimates
/// aligned with the input symbols (size truncated to whole blocks).
struct CpConfig {
  int n = 512;
  int cp_len = 20;
};

cvec cp_fde_chain(const SymbolStream& sym, const DiscreteChannel& dch,
                  const CpConfig& cfg, const WeightSet& w,
                  const NoiseModel& model, uint64_t rng_seed);

/// Hard BPSK decisions: bit = 0 if Re >= 0 else 1 (ties map to 0).
std::vector<uint8_t> detect_bpsk(std::span<const cplx> estimates);

} // namespace ftn
