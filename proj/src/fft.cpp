#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace oscmul::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void dft_inplace(std::vector<std::complex<double>>& data, std::size_t n, int dim, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int fftw_sign = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan;
  {
    // FFTW's planner is not thread-safe; execution is.
    std::lock_guard lock(planner_mutex());
    if (dim == 1)
      plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, fftw_sign, FFTW_ESTIMATE);
    else
      plan = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf, buf, fftw_sign,
                              FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace oscmul::detail
