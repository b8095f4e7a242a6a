#include "boussinesq/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <new>

namespace boussinesq {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Fft::Fft(int n) : n_(n) {
  const std::size_t nreal = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const std::size_t nspec = static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(nreal);
  spec_ = reinterpret_cast<Complex*>(fftw_alloc_complex(nspec));
  if (real_ == nullptr || spec_ == nullptr) throw std::bad_alloc();
  r2c_ = fftw_plan_dft_r2c_2d(n, n, real_, reinterpret_cast<fftw_complex*>(spec_),
                              FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(spec_), real_,
                              FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(c2r_));
  fftw_free(real_);
  fftw_free(spec_);
}

void Fft::forward(std::span<const double> values, std::span<Complex> coeffs) {
  std::copy(values.begin(), values.end(), real_);
  fftw_execute(static_cast<fftw_plan>(r2c_));
  const double scale = 1.0 / (static_cast<double>(n_) * static_cast<double>(n_));
  std::transform(spec_, spec_ + coeffs.size(), coeffs.begin(),
                 [scale](const Complex& c) { return c * scale; });
}

void Fft::inverse(std::span<const Complex> coeffs, std::span<double> values) {
  // c2r overwrites its input, so it always works on the private buffer.
  std::copy(coeffs.begin(), coeffs.end(), spec_);
  fftw_execute(static_cast<fftw_plan>(c2r_));
  std::copy(real_, real_ + values.size(), values.begin());
}

Fft& fft_for(int n) {
  thread_local std::map<int, std::unique_ptr<Fft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft>(n);
  return *slot;
}

}  // namespace boussinesq
