#include <fftw3.h>

#include <memory>
#include <mutex>

#include "exspec/error.hpp"
#include "exspec/kernels.hpp"

namespace exspec::kernels {
namespace {

// FFTW's planner is not reentrant; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

}  // namespace

std::vector<double> power_spectrum_fft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw InputError("power_spectrum_fft: empty input");
  const std::size_t half = n / 2 + 1;

  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> out(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half)));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  // Indexing from t = 1 only multiplies each coefficient by a unit phase.
  std::vector<double> power(n);
  for (std::size_t j = 0; j < half; ++j) {
    const double re = out.get()[j][0];
    const double im = out.get()[j][1];
    power[j] = re * re + im * im;
  }
  for (std::size_t j = half; j < n; ++j) power[j] = power[n - j];
  return power;
}

}  // namespace exspec::kernels
