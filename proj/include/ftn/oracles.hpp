#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ftn/equalizer.hpp"

namespace ftn::oracle {

/// Dense banded block-model matrices assembled entry by entry:
/// q0(i, j) = q[n_max - (j - i)] on the upper band, q1(i, j) =
/// q[n_max - n + i - j] in the lower-left corner. q0 + q1 is circulant.
Eigen::MatrixXcd q0_matrix(const DiscreteChannel& dch, int n);
Eigen::MatrixXcd q1_matrix(const DiscreteChannel& dch, int n);

/// Unitary DFT matrix D with D(a, b) = exp(-j 2 pi a b / n) / sqrt(n).
Eigen::MatrixXcd unitary_dft(int n);

/// D^H diag(lambda) D, the circulant implied by a spectrum.
Eigen::MatrixXcd circulant_from_spectrum(const CirculantSpectrum& spectrum);

/// Literal double-sum noise PSD (the reduction oracle):
/// phi[k] = (n0/n) sum_l sum_m g((l-m)T) exp(-j 2 pi (l-m) k / n).
rvec noise_psd_double_sum(const PulseSpec& spec, double gamma, double n0,
                          int n);

/// Time-domain MMSE matrix sigma2 Q^H (sigma2 Q Q^H + C)^{-1} with
/// C[a, b] = n0 g((a-b)T), Q = q0 + q1.
Eigen::MatrixXcd time_domain_mmse(const DiscreteChannel& dch,
                                  const PulseSpec& spec, double gamma,
                                  double n0, double sigma2, int n);

struct CheckResult {
  std::string name;
  double error;
  double tolerance;
  bool pass() const { return error <= tolerance; }
};

/// Small-N deterministic oracle suite (circulant reconstruction, MMSE
/// frequency/time equivalence, PSD double-sum reduction, discrete model
/// vs oversampled waveform chain).
std::vector<CheckResult> run_selfcheck();

} // namespace ftn::oracle
