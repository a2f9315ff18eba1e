#include "ftn/fft.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace ftn {

namespace {
// FFTW's planner is not thread safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

Fft::Fft(int n) : n_(n) {
  if (n < 1)
    throw std::invalid_argument("Fft: size must be >= 1");
  buf_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
  auto* fbuf = reinterpret_cast<fftw_complex*>(buf_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_1d(n, fbuf, fbuf, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(n, fbuf, fbuf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_);
}

cvec Fft::run(std::span<const cplx> in, bool fwd) const {
  if (static_cast<int>(in.size()) != n_)
    throw std::invalid_argument("Fft: input size mismatch");
  for (int i = 0; i < n_; ++i)
    buf_[i] = in[i];
  fftw_execute(static_cast<fftw_plan>(fwd ? plan_fwd_ : plan_bwd_));
  return cvec(buf_, buf_ + n_);
}

cvec Fft::forward(std::span<const cplx> in) const { return run(in, true); }
cvec Fft::inverse(std::span<const cplx> in) const { return run(in, false); }

cvec dft_forward(std::span<const cplx> in) {
  Fft fft(static_cast<int>(in.size()));
  return fft.forward(in);
}

cvec dft_inverse(std::span<const cplx> in) {
  Fft fft(static_cast<int>(in.size()));
  return fft.inverse(in);
}

} // namespace ftn
