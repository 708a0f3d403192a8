#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace cyl::detail {

namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan get_plan(int nx, int ny, FftDirection dir) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  const int sign = dir == FftDirection::kForward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::lock_guard lock(plan_mutex());
  auto key = std::make_tuple(nx, ny, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<Complex> scratch(static_cast<std::size_t>(nx) * ny);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_2d(nx, ny, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft2d(std::span<Complex> data, int nx, int ny, FftDirection dir) {
  fftw_plan plan = get_plan(nx, ny, dir);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace cyl::detail
