#pragma once

#include <complex>
#include <span>
#include <vector>

namespace boussinesq {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

/// Real 2D FFT pair for an n x n periodic grid.
///
/// forward() is normalized so that f(x) = sum_k c_k exp(i k.x); inverse()
/// is the plain synthesis. Plans are created with FFTW_ESTIMATE so results
/// are bit-reproducible. An instance owns scratch buffers and must not be
/// shared between threads; use fft_for() to get the calling thread's copy.
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int n() const noexcept { return n_; }

  void forward(std::span<const double> values, std::span<Complex> coeffs);
  void inverse(std::span<const Complex> coeffs, std::span<double> values);

 private:
  int n_;
  double* real_ = nullptr;
  Complex* spec_ = nullptr;
  void* r2c_ = nullptr;
  void* c2r_ = nullptr;
};

/// Thread-local FFT engine for grid size n (planned once per thread).
Fft& fft_for(int n);

}  // namespace boussinesq
