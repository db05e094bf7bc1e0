#include "tfl/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace tfl {

namespace {

// fftw planning is not thread safe; executing distinct plans is.  Plans are
// created with FFTW_UNALIGNED so they can run on any caller buffer via
// fftw_execute_dft.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mtx_);
    const auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> dummy(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(dummy.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mtx_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_inplace(std::vector<std::complex<double>>& data, int sign) {
  const std::size_t n = data.size();
  if (n == 0) return;
  if ((n & (n - 1)) != 0) throw std::invalid_argument("fft_inplace: length must be a power of two");
  fftw_plan plan = cache().get(n, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

void fft_forward(std::vector<std::complex<double>>& data) { fft_inplace(data, -1); }

void fft_inverse(std::vector<std::complex<double>>& data) {
  fft_inplace(data, +1);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& z : data) z *= scale;
}

}  // namespace tfl
