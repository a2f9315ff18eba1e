#include "ftn/oracles.hpp"

#include <cmath>

#include "ftn/link.hpp"
#include "ftn/rng.hpp"

namespace ftn::oracle {

Eigen::MatrixXcd q0_matrix(const DiscreteChannel& dch, int n) {
  Eigen::MatrixXcd q0 = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < std::min(n, i + dch.span()); ++j)
      q0(i, j) = dch.tap(dch.n_max - (j - i));
  return q0;
}

Eigen::MatrixXcd q1_matrix(const DiscreteChannel& dch, int n) {
  Eigen::MatrixXcd q1 = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int idx = dch.n_max - n + i - j;
      if (idx >= dch.n_min && idx <= dch.n_max)
        q1(i, j) = dch.tap(idx);
    }
  return q1;
}

Eigen::MatrixXcd unitary_dft(int n) {
  Eigen::MatrixXcd dft(n, n);
  const double root = 1.0 / std::sqrt(static_cast<double>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double ang = -2.0 * M_PI * a * b / n;
      dft(a, b) = root * cplx(std::cos(ang), std::sin(ang));
    }
  return dft;
}

Eigen::MatrixXcd circulant_from_spectrum(const CirculantSpectrum& spectrum) {
  const int n = spectrum.size();
  const Eigen::MatrixXcd dft = unitary_dft(n);
  Eigen::VectorXcd lam(n);
  for (int k = 0; k < n; ++k)
    lam(k) = spectrum.lambda[k];
  return dft.adjoint() * lam.asDiagonal() * dft;
}

rvec noise_psd_double_sum(const PulseSpec& spec, double gamma, double n0,
                          int n) {
  const double t = gamma * spec.t0;
  rvec phi(n);
  for (int k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) {
        const int d = l - m;
        if (std::abs(d) > spec.nu)
          continue;
        const double ang = -2.0 * M_PI * d * k / n;
        acc += nyquist_autocorr(spec, d * t) * cplx(std::cos(ang), std::sin(ang));
      }
    phi[k] = n0 * acc.real() / n;
  }
  return phi;
}

Eigen::MatrixXcd time_domain_mmse(const DiscreteChannel& dch,
                                  const PulseSpec& spec, double gamma,
                                  double n0, double sigma2, int n) {
  const Eigen::MatrixXcd q = q0_matrix(dch, n) + q1_matrix(dch, n);
  const NoiseModel model = NoiseModel::make(spec, gamma, n0);
  Eigen::MatrixXcd cov(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      cov(a, b) = model.lag(a - b);
  const Eigen::MatrixXcd sys = sigma2 * q * q.adjoint() + cov;
  return sigma2 * q.adjoint() * sys.partialPivLu().inverse();
}

namespace {

double max_abs(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

DiscreteChannel random_channel(const PulseSpec& spec, double gamma,
                               std::initializer_list<double> delays,
                               uint64_t seed) {
  auto eng = make_engine(seed);
  TapDelayLine ch;
  ch.delays = delays;
  ch.gains.resize(ch.delays.size());
  for (auto& g : ch.gains)
    g = complex_gaussian(eng, 1.0 / ch.delays.size());
  return discretize(spec, ch, gamma);
}

} // namespace

std::vector<CheckResult> run_selfcheck() {
  std::vector<CheckResult> results;
  const PulseSpec spec{0.5, 1.0, 10};

  {
    // Circulant reconstruction at small n for random dispersive channels.
    // A small truncation width keeps the channel span below n.
    const PulseSpec narrow{0.5, 1.0, 3};
    double worst = 0.0;
    for (int n : {8, 16, 32}) {
      const DiscreteChannel dch =
          n <= 16 ? random_channel(narrow, 0.8, {0.0, 0.4}, 17 + n)
                  : random_channel(spec, 0.8, {0.0, 1.3, 2.7}, 17 + n);
      const CirculantSpectrum spectrum = build_spectrum(dch, n);
      const Eigen::MatrixXcd q =
          q0_matrix(dch, n) + q1_matrix(dch, n);
      worst = std::max(worst,
                       max_abs(circulant_from_spectrum(spectrum) - q));
    }
    results.push_back({"circulant reconstruction (Q0+Q1 vs D^H Lambda D)",
                       worst, 1e-10});
  }

  {
    // Frequency-domain colored MMSE equals the time-domain solution.
    const PulseSpec narrow{0.5, 1.0, 4};
    double worst = 0.0;
    for (int n : {16, 32}) {
      const DiscreteChannel dch =
          random_channel(narrow, 0.8, {0.0, 0.9, 2.3}, 41 + n);
      const CirculantSpectrum spectrum = build_spectrum(dch, n);
      const WeightSet w =
          weight_colored_full(spectrum, narrow, 0.8, 0.37, 1.0, n);
      const Eigen::MatrixXcd dft = unitary_dft(n);
      const Eigen::MatrixXcd freq = dft.adjoint() * w.full * dft;
      const Eigen::MatrixXcd time =
          time_domain_mmse(dch, narrow, 0.8, 0.37, 1.0, n);
      worst = std::max(worst, max_abs(freq - time));
    }
    results.push_back({"colored MMSE weight (frequency vs time domain)",
                       worst, 1e-9});
  }

  {
    // Single-sum PSD reduction against the literal double sum.
    double worst = 0.0;
    for (int n : {16, 64, 128}) {
      const rvec fast = noise_psd(spec, 0.8, 0.5, n);
      const rvec slow = noise_psd_double_sum(spec, 0.8, 0.5, n);
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(fast[k] - slow[k]));
    }
    results.push_back({"noise PSD single-sum vs double-sum", worst, 1e-10});
  }

  {
    // Discrete symbol-rate model vs the oversampled waveform chain.
    double worst = 0.0;
    const TapDelayLine flat = identity_channel();
    const std::vector<GammaRatio> ratios{{1, 1}, {10, 11}, {5, 6},
                                         {4, 5}, {13, 17}, {5, 7}};
    for (const auto& ratio : ratios) {
      const auto bits = random_bits(48, 7 + ratio.den);
      const SymbolStream sym = modulate_bpsk(bits, 1.0);
      const DiscreteChannel dch = discretize(spec, flat, ratio.value());
      const NoiseModel quiet = NoiseModel::make(spec, ratio.value(), 0.0);
      const long first = dch.n_max;
      const size_t len = sym.symbols.size() - dch.span() + 1;
      const cvec model = synthesize_received(sym, dch, quiet, 0, first, len);
      const cvec wave =
          waveform_oracle(sym, spec, flat, ratio, 0.0, 0, first, len);
      for (size_t i = 0; i < len; ++i)
        worst = std::max(worst, std::abs(model[i] - wave[i]));
    }
    results.push_back({"discrete model vs waveform oracle", worst, 1e-3});
  }

  return results;
}

} // namespace ftn::oracle
