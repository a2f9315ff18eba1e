#pragma once

#include "ftn/types.hpp"

namespace ftn {

/// Root raised-cosine shaping parameters. t0 is the Nyquist symbol
/// period T0; nu is the truncation half-width, in FTN symbol periods,
/// applied by consumers of the autocorrelation (never here).
struct PulseSpec {
  double rolloff = 0.5; // beta, in (0, 1]
  double t0 = 1.0;      // seconds, > 0
  int nu = 10;          // >= 1

  void validate() const;
};

/// Unit-energy root raised-cosine impulse response h(t), even in t.
/// The removable singularities at t = 0 and |t| = t0/(4*beta) are
/// replaced by their exact limits.
double rrc_impulse(const PulseSpec& spec, double t);

/// Raised-cosine Nyquist autocorrelation g(t) of h, with g(0) = 1 and
/// g(k*t0) = 0 for integer k != 0. sinc convention: sinc(x) =
/// sin(pi*x)/(pi*x). Even, real, untruncated.
double nyquist_autocorr(const PulseSpec& spec, double t);

} // namespace ftn
