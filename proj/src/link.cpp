#include "ftn/link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "ftn/fft.hpp"
#include "ftn/rng.hpp"

namespace ftn {

SymbolStream modulate_bpsk(const std::vector<uint8_t>& bits, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("modulate_bpsk: sigma2 must be positive");
  const double amp = std::sqrt(sigma2);
  SymbolStream s;
  s.sigma2 = sigma2;
  s.symbols.resize(bits.size());
  for (size_t i = 0; i < bits.size(); ++i)
    s.symbols[i] = bits[i] ? cplx(-amp, 0.0) : cplx(amp, 0.0);
  return s;
}

std::vector<uint8_t> random_bits(size_t count, uint64_t rng_seed) {
  auto eng = make_engine(rng_seed);
  std::vector<uint8_t> bits(count);
  for (auto& b : bits)
    b = static_cast<uint8_t>(eng() & 1u);
  return bits;
}

NoiseModel NoiseModel::make(const PulseSpec& spec, double gamma, double n0) {
  spec.validate();
  if (n0 < 0.0)
    throw std::invalid_argument("NoiseModel: n0 must be >= 0");
  NoiseModel m;
  m.n0 = n0;
  m.cov_lags.resize(spec.nu + 1);
  const double t = gamma * spec.t0;
  for (int d = 0; d <= spec.nu; ++d)
    m.cov_lags[d] = n0 * nyquist_autocorr(spec, d * t);
  return m;
}

struct ColoredNoiseFactor::Impl {
  Eigen::MatrixXd sqrt_cov; // symmetric square root, eigenvalues clipped at 0
};

ColoredNoiseFactor::ColoredNoiseFactor(const NoiseModel& model, size_t length)
    : impl_(new Impl), length_(length) {
  if (length < 1)
    throw std::invalid_argument("ColoredNoiseFactor: length must be >= 1");
  const int n = static_cast<int>(length);
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cov(i, j) = model.lag(i - j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  Eigen::VectorXd ev = es.eigenvalues();
  const double floor = -1e-8 * model.n0;
  for (int i = 0; i < n; ++i) {
    if (ev(i) < floor)
      throw std::runtime_error(
          "colored noise covariance has a significantly negative eigenvalue; "
          "check g or the sampling period");
    if (ev(i) < 0.0)
      ev(i) = 0.0;
  }
  impl_->sqrt_cov =
      es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

ColoredNoiseFactor::~ColoredNoiseFactor() { delete impl_; }

ColoredNoiseFactor::ColoredNoiseFactor(ColoredNoiseFactor&& other) noexcept
    : impl_(other.impl_), length_(other.length_) {
  other.impl_ = nullptr;
}

cvec ColoredNoiseFactor::draw(uint64_t rng_seed) const {
  const int n = static_cast<int>(length_);
  auto eng = make_engine(rng_seed);
  Eigen::VectorXd wr(n), wi(n);
  for (int i = 0; i < n; ++i) {
    const cplx w = complex_gaussian(eng, 1.0);
    wr(i) = w.real();
    wi(i) = w.imag();
  }
  const Eigen::VectorXd yr = impl_->sqrt_cov * wr;
  const Eigen::VectorXd yi = impl_->sqrt_cov * wi;
  cvec out(length_);
  for (int i = 0; i < n; ++i)
    out[i] = cplx(yr(i), yi(i));
  return out;
}

cvec colored_noise(const NoiseModel& model, size_t length, uint64_t rng_seed) {
  if (model.n0 == 0.0)
    return cvec(length, cplx(0.0));
  ColoredNoiseFactor factor(model, length);
  return factor.draw(rng_seed);
}

cvec colored_noise_stream(const NoiseModel& model, size_t length,
                          uint64_t rng_seed) {
  if (length < 1)
    throw std::invalid_argument("colored_noise_stream: length must be >= 1");
  if (model.n0 == 0.0)
    return cvec(length, cplx(0.0));

  const size_t bw = model.cov_lags.size() - 1;
  size_t f = 1;
  while (f < length + bw || f < 2 * bw + 1)
    f <<= 1;

  cvec first_row(f, cplx(0.0));
  first_row[0] = model.cov_lags[0];
  for (size_t d = 1; d <= bw; ++d) {
    first_row[d] = model.cov_lags[d];
    first_row[f - d] = model.cov_lags[d];
  }

  Fft fft(static_cast<int>(f));
  cvec spectrum = fft.forward(first_row);
  double max_ev = 0.0;
  for (const auto& v : spectrum)
    max_ev = std::max(max_ev, v.real());
  const double floor = -1e-8 * std::max(model.n0, max_ev);

  auto eng = make_engine(rng_seed);
  cvec shaped(f);
  for (size_t k = 0; k < f; ++k) {
    double ev = spectrum[k].real();
    if (ev < floor)
      throw std::runtime_error(
          "colored noise spectrum has a significantly negative value; "
          "check g or the sampling period");
    if (ev < 0.0)
      ev = 0.0;
    shaped[k] = std::sqrt(ev) * complex_gaussian(eng, 1.0);
  }

  cvec time = fft.inverse(shaped);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f));
  cvec out(length);
  for (size_t i = 0; i < length; ++i)
    out[i] = time[i] * scale;
  return out;
}

namespace {

cvec convolve_span(const SymbolStream& sym, const DiscreteChannel& dch,
                   long first_out, size_t out_len) {
  const long k = static_cast<long>(sym.symbols.size());
  cvec out(out_len, cplx(0.0));
  for (size_t i = 0; i < out_len; ++i) {
    const long n = first_out + static_cast<long>(i);
    cplx acc = 0.0;
    const long m_lo = std::max<long>(0, n - dch.n_max);
    const long m_hi = std::min<long>(k - 1, n - dch.n_min);
    for (long m = m_lo; m <= m_hi; ++m)
      acc += dch.tap(static_cast<int>(n - m)) * sym.symbols[m];
    out[i] = acc;
  }
  return out;
}

} // namespace

cvec synthesize_received(const SymbolStream& sym, const DiscreteChannel& dch,
                         const NoiseModel& model, uint64_t rng_seed,
                         long first_out, size_t out_len) {
  if (sym.symbols.empty())
    throw std::invalid_argument("synthesize_received: empty symbol stream");
  if (out_len < 1)
    throw std::invalid_argument("synthesize_received: empty output span");
  cvec out = convolve_span(sym, dch, first_out, out_len);
  if (model.n0 > 0.0) {
    const cvec eta = colored_noise_stream(model, out_len, rng_seed);
    for (size_t i = 0; i < out_len; ++i)
      out[i] += eta[i];
  }
  return out;
}

cvec synthesize_full(const SymbolStream& sym, const DiscreteChannel& dch,
                     const NoiseModel& model, uint64_t rng_seed) {
  const long k = static_cast<long>(sym.symbols.size());
  return synthesize_received(sym, dch, model, rng_seed, dch.n_min,
                             static_cast<size_t>(k - 1 + dch.span()));
}

cvec synthesize_interior(const SymbolStream& sym, const DiscreteChannel& dch,
                         const NoiseModel& model, uint64_t rng_seed) {
  const long k = static_cast<long>(sym.symbols.size());
  if (k < dch.span())
    throw std::invalid_argument(
        "synthesize_interior: symbol stream shorter than the channel memory");
  return synthesize_received(sym, dch, model, rng_seed, dch.n_max,
                             static_cast<size_t>(k - dch.span() + 1));
}

cvec waveform_oracle(const SymbolStream& sym, const PulseSpec& spec,
                     const TapDelayLine& ch, GammaRatio gamma, double n0,
                     uint64_t rng_seed, long first_out, size_t out_len,
                     int oversample) {
  spec.validate();
  ch.validate();
  if (gamma.num < 1 || gamma.den < 1 || gamma.num > gamma.den)
    throw std::invalid_argument("waveform_oracle: gamma must be in (0, 1]");
  if (gamma.den > 64)
    throw std::invalid_argument(
        "waveform_oracle: gamma denominator too large (> 64)");
  if (oversample < 2)
    throw std::invalid_argument("waveform_oracle: oversample must be >= 2");

  const double delta = spec.t0 / (oversample * gamma.den); // fine grid step
  const long step = static_cast<long>(gamma.num) * oversample; // T / delta
  const long half = static_cast<long>(std::llround(spec.nu * spec.t0 / delta));

  // Pulse table on the fine grid, truncated at +-nu*t0.
  rvec hs(2 * half + 1);
  for (long j = -half; j <= half; ++j)
    hs[j + half] = rrc_impulse(spec, j * delta);

  // Fine-grid span needed to matched-filter every requested output.
  const long i_lo = first_out * step - half;
  const long i_hi = (first_out + static_cast<long>(out_len) - 1) * step + half;
  const size_t fine_len = static_cast<size_t>(i_hi - i_lo + 1);

  // Transmit waveform through the tap-delay line (delays rounded to
  // the fine grid), plus white noise of variance n0/delta per sample.
  cvec fine(fine_len, cplx(0.0));
  const long k = static_cast<long>(sym.symbols.size());
  for (size_t tap = 0; tap < ch.delays.size(); ++tap) {
    const long dly = std::llround(ch.delays[tap] / delta);
    const cplx gain = ch.gains[tap];
    for (long m = 0; m < k; ++m) {
      const cplx amp = gain * sym.symbols[m];
      const long center = m * step + dly;
      const long j_lo = std::max(center - half, i_lo);
      const long j_hi = std::min(center + half, i_hi);
      for (long j = j_lo; j <= j_hi; ++j)
        fine[j - i_lo] += amp * hs[j - center + half];
    }
  }
  if (n0 > 0.0) {
    auto eng = make_engine(rng_seed);
    const double var = n0 / delta;
    for (auto& v : fine)
      v += complex_gaussian(eng, var);
  }

  // Matched filter h*(-t) evaluated at t = nT (h real and even),
  // discretized as delta * sum_i fine[i] h(i*delta - n*T).
  cvec out(out_len, cplx(0.0));
  for (size_t idx = 0; idx < out_len; ++idx) {
    const long n = first_out + static_cast<long>(idx);
    const long center = n * step;
    cplx acc = 0.0;
    for (long j = center - half; j <= center + half; ++j)
      acc += fine[j - i_lo] * hs[j - center + half];
    out[idx] = acc * delta;
  }
  return out;
}

} // namespace ftn
