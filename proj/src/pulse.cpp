#include "ftn/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace ftn {

namespace {
constexpr double kSingularTol = 1e-8;
}

void PulseSpec::validate() const {
  if (!(rolloff > 0.0) || !(rolloff <= 1.0))
    throw std::invalid_argument("PulseSpec: rolloff must be in (0, 1]");
  if (!(t0 > 0.0))
    throw std::invalid_argument("PulseSpec: t0 must be positive");
  if (nu < 1)
    throw std::invalid_argument("PulseSpec: nu must be >= 1");
}

double rrc_impulse(const PulseSpec& spec, double t) {
  const double b = spec.rolloff;
  const double x = t / spec.t0;
  const double scale = 1.0 / std::sqrt(spec.t0);

  if (std::abs(x) < kSingularTol)
    return scale * (1.0 - b + 4.0 * b / M_PI);

  const double fourbx = 4.0 * b * x;
  if (std::abs(1.0 - fourbx * fourbx) < kSingularTol) {
    const double a = M_PI / (4.0 * b);
    return scale * (b / std::sqrt(2.0)) *
           ((1.0 + 2.0 / M_PI) * std::sin(a) + (1.0 - 2.0 / M_PI) * std::cos(a));
  }

  const double num =
      std::sin(M_PI * x * (1.0 - b)) + fourbx * std::cos(M_PI * x * (1.0 + b));
  const double den = M_PI * x * (1.0 - fourbx * fourbx);
  return scale * num / den;
}

double nyquist_autocorr(const PulseSpec& spec, double t) {
  const double b = spec.rolloff;
  const double x = t / spec.t0;

  double sinc;
  if (std::abs(x) < kSingularTol)
    sinc = 1.0;
  else
    sinc = std::sin(M_PI * x) / (M_PI * x);

  const double twobx = 2.0 * b * x;
  if (std::abs(1.0 - twobx * twobx) < kSingularTol)
    return sinc * M_PI / 4.0;

  return sinc * std::cos(M_PI * b * x) / (1.0 - twobx * twobx);
}

} // namespace ftn
