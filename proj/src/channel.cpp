#include "ftn/channel.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ftn/rng.hpp"

namespace ftn {

void TapDelayLine::validate() const {
  if (delays.empty() || delays.size() != gains.size())
    throw std::invalid_argument("TapDelayLine: delays/gains size mismatch");
  if (delays.front() < 0.0)
    throw std::invalid_argument("TapDelayLine: delays must be >= 0");
  for (size_t k = 1; k < delays.size(); ++k)
    if (!(delays[k] > delays[k - 1]))
      throw std::invalid_argument("TapDelayLine: delays must be strictly increasing");
}

TapDelayLine identity_channel() {
  return TapDelayLine{{0.0}, {cplx(1.0, 0.0)}};
}

TapDelayLine rayleigh_channel(int num_taps, double span, uint64_t rng_seed) {
  if (num_taps < 2)
    throw std::invalid_argument("rayleigh_channel: num_taps must be >= 2");
  if (!(span > 0.0))
    throw std::invalid_argument("rayleigh_channel: span must be positive");

  TapDelayLine ch;
  ch.delays.resize(num_taps);
  ch.gains.resize(num_taps);
  auto eng = make_engine(rng_seed);
  const double var = 1.0 / num_taps;
  for (int m = 0; m < num_taps; ++m) {
    ch.delays[m] = span * m / (num_taps - 1);
    ch.gains[m] = complex_gaussian(eng, var);
  }
  return ch;
}

cplx combined_response(const PulseSpec& spec, const TapDelayLine& ch, double t) {
  cplx q = 0.0;
  for (size_t k = 0; k < ch.delays.size(); ++k)
    q += ch.gains[k] * nyquist_autocorr(spec, t - ch.delays[k]);
  return q;
}

DiscreteChannel discretize(const PulseSpec& spec, const TapDelayLine& ch,
                           double gamma) {
  spec.validate();
  ch.validate();
  if (!(gamma > 0.0) || !(gamma <= 1.0))
    throw std::invalid_argument("discretize: gamma must be in (0, 1]");

  DiscreteChannel dch;
  dch.t = gamma * spec.t0;
  dch.n_min = -spec.nu + static_cast<int>(std::ceil(ch.t_min() / dch.t));
  dch.n_max = spec.nu + static_cast<int>(std::floor(ch.t_max() / dch.t));
  dch.taps.resize(dch.span());

  const double cutoff = spec.nu * dch.t * (1.0 + 1e-12);
  for (int n = dch.n_min; n <= dch.n_max; ++n) {
    cplx q = 0.0;
    for (size_t k = 0; k < ch.delays.size(); ++k) {
      const double dt = n * dch.t - ch.delays[k];
      if (std::abs(dt) <= cutoff)
        q += ch.gains[k] * nyquist_autocorr(spec, dt);
    }
    dch.taps[n - dch.n_min] = q;
  }
  return dch;
}

std::string channel_to_json(const TapDelayLine& ch) {
  nlohmann::json j;
  j["delays_s"] = ch.delays;
  rvec re(ch.gains.size()), im(ch.gains.size());
  for (size_t k = 0; k < ch.gains.size(); ++k) {
    re[k] = ch.gains[k].real();
    im[k] = ch.gains[k].imag();
  }
  j["gains_re"] = re;
  j["gains_im"] = im;
  return j.dump(2);
}

TapDelayLine channel_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  TapDelayLine ch;
  ch.delays = j.at("delays_s").get<rvec>();
  const auto re = j.at("gains_re").get<rvec>();
  const auto im = j.at("gains_im").get<rvec>();
  if (re.size() != im.size() || re.size() != ch.delays.size())
    throw std::invalid_argument("channel_from_json: array length mismatch");
  ch.gains.resize(re.size());
  for (size_t k = 0; k < re.size(); ++k)
    ch.gains[k] = cplx(re[k], im[k]);
  ch.validate();
  return ch;
}

} // namespace ftn
