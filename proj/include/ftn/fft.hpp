#pragma once

#include <span>

#include "ftn/types.hpp"

namespace ftn {

/// Complex 1-D FFT of fixed size backed by FFTW. forward() is the
/// unnormalized DFT (negative exponent); inverse() is unnormalized as
/// well, so inverse(forward(x)) = n * x. Plan creation is serialized
/// internally; a planned instance may be used from one thread at a time.
class Fft {
public:
  explicit Fft(int n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const { return n_; }
  cvec forward(std::span<const cplx> in) const;
  cvec inverse(std::span<const cplx> in) const;

private:
  cvec run(std::span<const cplx> in, bool fwd) const;

  int n_;
  void* plan_fwd_;
  void* plan_bwd_;
  cplx* buf_;
};

/// Unnormalized DFT convenience wrappers (plan per call; fine for
/// one-shot uses, use an Fft instance in loops).
cvec dft_forward(std::span<const cplx> in);
cvec dft_inverse(std::span<const cplx> in);

} // namespace ftn
