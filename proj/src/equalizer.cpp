#include "ftn/equalizer.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "ftn/fft.hpp"

namespace ftn {

void BlockConfig::validate(int channel_span) const {
  if (n < 1 || p < 0 || q_discard < 0)
    throw std::invalid_argument("BlockConfig: n >= 1 and p, q >= 0 required");
  if (m() < 1)
    throw std::invalid_argument("BlockConfig: stride m = n - p - q must be >= 1");
  if (n < channel_span)
    throw std::invalid_argument("BlockConfig: n smaller than the channel span");
}

CirculantSpectrum build_spectrum(const DiscreteChannel& dch, int n) {
  if (n < dch.span())
    throw std::invalid_argument("build_spectrum: n smaller than the channel span");
  cvec col(n, cplx(0.0));
  col[0] = dch.tap(dch.n_max);
  for (int d = 1; d < dch.span(); ++d)
    col[n - d] = dch.tap(dch.n_max - d);
  return CirculantSpectrum{dft_forward(col)};
}

rvec noise_psd(const PulseSpec& spec, double gamma, double n0, int n) {
  spec.validate();
  if (n < 1)
    throw std::invalid_argument("noise_psd: n must be >= 1");
  const double t = gamma * spec.t0;
  const int d_max = std::min(spec.nu, n - 1);
  rvec lags(d_max + 1);
  for (int d = 0; d <= d_max; ++d)
    lags[d] = nyquist_autocorr(spec, d * t);

  rvec phi(n);
  for (int k = 0; k < n; ++k) {
    double acc = n * lags[0];
    for (int d = 1; d <= d_max; ++d)
      acc += 2.0 * (n - d) * lags[d] * std::cos(2.0 * M_PI * d * k / n);
    phi[k] = std::max(0.0, n0 * acc / n);
  }
  return phi;
}

const char* to_string(WeightKind kind) {
  switch (kind) {
  case WeightKind::white:
    return "white";
  case WeightKind::colored_diag:
    return "colored_diag";
  case WeightKind::colored_full:
    return "colored_full";
  }
  return "?";
}

WeightKind weight_kind_from_string(const std::string& name) {
  if (name == "white")
    return WeightKind::white;
  if (name == "colored_diag")
    return WeightKind::colored_diag;
  if (name == "colored_full")
    return WeightKind::colored_full;
  throw std::invalid_argument("unknown weight_kind: " + name);
}

namespace {

constexpr double kSingularEps = 1e-12;

cvec diag_weight(const cvec& lambda, const rvec& noise_over_sigma2,
                 bool* regularized) {
  const size_t n = lambda.size();
  double scale = 0.0;
  for (const auto& l : lambda)
    scale = std::max(scale, std::norm(l));
  if (scale == 0.0)
    throw std::runtime_error("FDE weight: spectral null at zero noise");

  cvec w(n);
  bool warned = false;
  for (size_t k = 0; k < n; ++k) {
    double den = std::norm(lambda[k]) + noise_over_sigma2[k];
    if (den == 0.0)
      throw std::runtime_error("FDE weight: spectral null at zero noise");
    if (den < kSingularEps * scale) {
      den += kSingularEps * scale;
      if (!warned) {
        std::cerr << "warning: near-singular FDE bin regularized (eps floor)\n";
        warned = true;
      }
      *regularized = true;
    }
    w[k] = std::conj(lambda[k]) / den;
  }
  return w;
}

} // namespace

WeightSet weight_white(const CirculantSpectrum& spectrum, double n0,
                       double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("weight_white: sigma2 must be positive");
  WeightSet w;
  w.kind = WeightKind::white;
  w.psd.assign(spectrum.lambda.size(), n0);
  rvec over(spectrum.lambda.size(), n0 / sigma2);
  w.diag = diag_weight(spectrum.lambda, over, &w.regularized);
  return w;
}

WeightSet weight_colored_diag(const CirculantSpectrum& spectrum,
                              std::span<const double> psd, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("weight_colored_diag: sigma2 must be positive");
  if (psd.size() != spectrum.lambda.size())
    throw std::invalid_argument("weight_colored_diag: psd size mismatch");
  WeightSet w;
  w.kind = WeightKind::colored_diag;
  w.psd.assign(psd.begin(), psd.end());
  rvec over(psd.size());
  for (size_t k = 0; k < psd.size(); ++k)
    over[k] = psd[k] / sigma2;
  w.diag = diag_weight(spectrum.lambda, over, &w.regularized);
  return w;
}

WeightSet weight_colored_full(const CirculantSpectrum& spectrum,
                              const PulseSpec& spec, double gamma, double n0,
                              double sigma2, int n) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("weight_colored_full: sigma2 must be positive");
  if (n != spectrum.size())
    throw std::invalid_argument("weight_colored_full: n/spectrum size mismatch");

  const NoiseModel model = NoiseModel::make(spec, gamma, n0);
  Eigen::MatrixXcd cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cov(i, j) = model.lag(i - j);

  Eigen::MatrixXcd dft(n, n);
  const double root = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double ang = -2.0 * M_PI * i * j / n;
      dft(i, j) = root * cplx(std::cos(ang), std::sin(ang));
    }

  Eigen::MatrixXcd g = dft * cov * dft.adjoint() / sigma2;
  for (int k = 0; k < n; ++k)
    g(k, k) += std::norm(spectrum.lambda[k]);

  Eigen::VectorXcd lam_h(n);
  for (int k = 0; k < n; ++k)
    lam_h(k) = std::conj(spectrum.lambda[k]);

  WeightSet w;
  w.kind = WeightKind::colored_full;
  w.full = lam_h.asDiagonal() * g.partialPivLu().inverse();
  if (!w.full.allFinite())
    throw std::runtime_error(
        "weight_colored_full: singular system (spectral null at zero noise)");
  w.psd.resize(n);
  for (int k = 0; k < n; ++k)
    w.psd[k] = std::max(0.0, (sigma2 * g(k, k) - sigma2 * std::norm(spectrum.lambda[k])).real());
  return w;
}

namespace {

void apply_weight(const WeightSet& w, const cvec& freq, cvec& out) {
  const size_t n = freq.size();
  if (w.kind == WeightKind::colored_full) {
    Eigen::Map<const Eigen::VectorXcd> x(freq.data(), n);
    Eigen::Map<Eigen::VectorXcd> y(out.data(), n);
    y = w.full * x;
  } else {
    for (size_t k = 0; k < n; ++k)
      out[k] = w.diag[k] * freq[k];
  }
}

size_t weight_size(const WeightSet& w) {
  return w.kind == WeightKind::colored_full
             ? static_cast<size_t>(w.full.rows())
             : w.diag.size();
}

} // namespace

Equalized overlap_fde(std::span<const cplx> r, long r_first,
                      const BlockConfig& cfg, const WeightSet& w,
                      const DiscreteChannel& dch) {
  cfg.validate(dch.span());
  if (weight_size(w) != static_cast<size_t>(cfg.n))
    throw std::invalid_argument("overlap_fde: weight size does not match n");
  if (r.size() < static_cast<size_t>(cfg.n))
    throw std::invalid_argument("overlap_fde: insufficient samples for one block");

  const int n = cfg.n;
  const int m = cfg.m();
  const size_t blocks = 1 + (r.size() - n) / m;

  Fft fft(n);
  cvec shaped(n);
  Equalized out;
  out.first_symbol = r_first - dch.n_max + cfg.p;
  out.estimates.reserve(blocks * m);

  for (size_t b = 0; b < blocks; ++b) {
    const cvec freq = fft.forward(r.subspan(b * m, n));
    apply_weight(w, freq, shaped);
    const cvec y = fft.inverse(shaped);
    const double inv_n = 1.0 / n;
    for (int i = 0; i < m; ++i)
      out.estimates.push_back(y[cfg.p + i] * inv_n);
  }
  return out;
}

cvec cp_fde_chain(const SymbolStream& sym, const DiscreteChannel& dch,
                  const CpConfig& cfg, const WeightSet& w,
                  const NoiseModel& model, uint64_t rng_seed) {
  const int n = cfg.n;
  const int cp = cfg.cp_len;
  if (n < dch.span())
    throw std::invalid_argument("cp_fde_chain: n smaller than the channel span");
  if (cp < 0 || cp > n)
    throw std::invalid_argument("cp_fde_chain: cp_len must be in [0, n]");
  if (weight_size(w) != static_cast<size_t>(n))
    throw std::invalid_argument("cp_fde_chain: weight size does not match n");
  const size_t blocks = sym.symbols.size() / n;
  if (blocks == 0)
    throw std::invalid_argument("cp_fde_chain: need at least one full block");

  // Symbol-level cyclic extension before pulse shaping.
  SymbolStream tx;
  tx.sigma2 = sym.sigma2;
  tx.symbols.reserve(blocks * (n + cp));
  for (size_t b = 0; b < blocks; ++b) {
    const cplx* blk = sym.symbols.data() + b * n;
    for (int i = n - cp; i < n; ++i)
      tx.symbols.push_back(blk[i]);
    for (int i = 0; i < n; ++i)
      tx.symbols.push_back(blk[i]);
  }

  // One contiguous received span covering every block window; the
  // prefix samples are simply never read back.
  const long lo = dch.n_max;
  const long hi = static_cast<long>(blocks - 1) * (n + cp) + dch.n_max + n - 1;
  const cvec r = synthesize_received(tx, dch, model, rng_seed, lo,
                                     static_cast<size_t>(hi - lo + 1));

  Fft fft(n);
  cvec shaped(n);
  cvec estimates(blocks * n);
  for (size_t b = 0; b < blocks; ++b) {
    const size_t off = b * (n + cp);
    const cvec freq = fft.forward(std::span<const cplx>(r).subspan(off, n));
    apply_weight(w, freq, shaped);
    const cvec y = fft.inverse(shaped);
    const double inv_n = 1.0 / n;
    // The window starts n_max samples into the block, so the circular
    // estimate comes out rotated by cp.
    for (int i = 0; i < n; ++i)
      estimates[b * n + i] = y[(i + cp) % n] * inv_n;
  }
  return estimates;
}

std::vector<uint8_t> detect_bpsk(std::span<const cplx> estimates) {
  std::vector<uint8_t> bits(estimates.size());
  for (size_t i = 0; i < estimates.size(); ++i)
    bits[i] = estimates[i].real() >= 0.0 ? 0 : 1;
  return bits;
}

} // namespace ftn
