#include <doctest.h>

#include <cmath>
#include <random>

#include "ftn/pulse.hpp"

using namespace ftn;

namespace {

// Raised-cosine spectrum normalized so that the integral is 1 (g(0) = 1).
double rc_spectrum(double beta, double t0, double f) {
  const double af = std::abs(f);
  const double lo = (1.0 - beta) / (2.0 * t0);
  const double hi = (1.0 + beta) / (2.0 * t0);
  if (af <= lo)
    return t0;
  if (af > hi)
    return 0.0;
  return 0.5 * t0 * (1.0 + std::cos(M_PI * t0 / beta * (af - lo)));
}

// h(0) from the frequency side: integral of sqrt of the spectrum.
double rrc_peak_from_spectrum(double beta, double t0) {
  const double hi = (1.0 + beta) / (2.0 * t0);
  const int steps = 200000;
  const double df = 2.0 * hi / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double f = -hi + i * df;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    acc += w * std::sqrt(rc_spectrum(beta, t0, f));
  }
  return acc * df;
}

// Numerical autocorrelation of the sampled impulse response.
double autocorr_quadrature(const PulseSpec& spec, double t, int per_t0 = 64,
                           double halfwidth = 14.0) {
  const double dt = spec.t0 / per_t0;
  const long n = static_cast<long>(halfwidth * spec.t0 / dt);
  double acc = 0.0;
  for (long i = -n; i <= n; ++i) {
    const double tau = i * dt;
    acc += rrc_impulse(spec, tau) * rrc_impulse(spec, tau - t);
  }
  return acc * dt;
}

} // namespace

TEST_CASE("rrc peak value matches the spectrum quadrature oracle") {
  const PulseSpec spec{0.5, 1.0, 10};
  const double expect = 1.0 - 0.5 + 4.0 * 0.5 / M_PI; // 1.136620
  CHECK(rrc_impulse(spec, 0.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(rrc_impulse(spec, 0.0) ==
        doctest::Approx(rrc_peak_from_spectrum(0.5, 1.0)).epsilon(1e-6));
  CHECK(rrc_impulse(spec, 0.0) == doctest::Approx(1.136620).epsilon(1e-6));
}

TEST_CASE("rrc amplitude scales as 1/sqrt(t0)") {
  const PulseSpec unit{0.5, 1.0, 10};
  const PulseSpec wide{0.5, 2.0, 10};
  CHECK(rrc_impulse(wide, 0.0) ==
        doctest::Approx(rrc_impulse(unit, 0.0) / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("rrc tails are below 1e-3 beyond 10 t0") {
  const PulseSpec spec{0.5, 1.0, 10};
  for (double t = 10.01; t < 40.0; t += 0.037)
    CHECK(std::abs(rrc_impulse(spec, t)) < 1e-3);
}

TEST_CASE("rrc pulse has unit energy") {
  for (double beta : {0.22, 0.5, 1.0}) {
    const PulseSpec spec{beta, 1.0, 10};
    const double dt = spec.t0 / 64.0;
    const double lim = spec.nu * spec.t0 * 4.0;
    const long n = static_cast<long>(lim / dt);
    double acc = 0.0;
    for (long i = -n; i <= n; ++i) {
      const double h = rrc_impulse(spec, i * dt);
      const double w = (i == -n || i == n) ? 0.5 : 1.0;
      acc += w * h * h;
    }
    CHECK(acc * dt == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("autocorrelation is the closed-form raised cosine") {
  const PulseSpec spec{0.5, 1.0, 10};
  CHECK(nyquist_autocorr(spec, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nyquist_autocorr(spec, 0.8) == doctest::Approx(0.20075).epsilon(5e-4));
  CHECK(nyquist_autocorr(spec, 0.8) ==
        doctest::Approx(autocorr_quadrature(spec, 0.8)).epsilon(1e-4));

  for (double t = -5.0; t <= 5.0; t += 0.25)
    CHECK(std::abs(nyquist_autocorr(spec, t) - autocorr_quadrature(spec, t)) <
          1e-4);
}

TEST_CASE("Nyquist zeros at integer multiples of t0") {
  for (double beta : {0.35, 0.5, 1.0}) {
    const PulseSpec spec{beta, 1.0, 10};
    for (int k = 1; k <= spec.nu; ++k) {
      CHECK(std::abs(nyquist_autocorr(spec, k * spec.t0)) < 1e-12);
      CHECK(std::abs(nyquist_autocorr(spec, -k * spec.t0)) < 1e-12);
    }
  }
}

TEST_CASE("h and g are even functions, bit for bit") {
  const PulseSpec spec{0.5, 1.3, 10};
  std::mt19937_64 eng(12345);
  std::uniform_real_distribution<double> dist(0.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = dist(eng);
    CHECK(rrc_impulse(spec, t) == rrc_impulse(spec, -t));
    CHECK(nyquist_autocorr(spec, t) == nyquist_autocorr(spec, -t));
  }
}

TEST_CASE("removable singularities match two-sided numerical limits") {
  const PulseSpec spec{0.5, 1.0, 10};

  const double th = spec.t0 / (4.0 * spec.rolloff);
  const double h_at = rrc_impulse(spec, th);
  const double h_lim =
      0.5 * (rrc_impulse(spec, th + 1e-5) + rrc_impulse(spec, th - 1e-5));
  CHECK(std::isfinite(h_at));
  CHECK(h_at == doctest::Approx(h_lim).epsilon(1e-9));

  const double tg = spec.t0 / (2.0 * spec.rolloff);
  const double g_at = nyquist_autocorr(spec, tg);
  const double g_lim = 0.5 * (nyquist_autocorr(spec, tg + 1e-5) +
                              nyquist_autocorr(spec, tg - 1e-5));
  CHECK(std::isfinite(g_at));
  CHECK(g_at == doctest::Approx(g_lim).epsilon(1e-9));

  // beta = 1: the g singularity sits at t0/2 where the limit is known.
  const PulseSpec full{1.0, 1.0, 10};
  const double expect = (2.0 / M_PI) * (M_PI / 4.0);
  CHECK(nyquist_autocorr(full, 0.5) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("pulse spec validation") {
  CHECK_THROWS_AS((PulseSpec{0.0, 1.0, 10}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((PulseSpec{1.2, 1.0, 10}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((PulseSpec{0.5, 0.0, 10}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((PulseSpec{0.5, 1.0, 0}).validate(), std::invalid_argument);
  CHECK_NOTHROW((PulseSpec{0.5, 1.0, 10}).validate());
}
