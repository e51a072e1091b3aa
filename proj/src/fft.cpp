#include "circrmt/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace circrmt {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t N, std::size_t howmany, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(N, howmany, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planning with FFTW_ESTIMATE never touches the buffer and picks the same
    // algorithm on every run, which keeps results bit-reproducible.
    auto* buf = fftw_alloc_complex(N * howmany);
    const int n = static_cast<int>(N);
    fftw_plan plan = fftw_plan_many_dft(1, &n, static_cast<int>(howmany), buf, nullptr, 1, n, buf,
                                        nullptr, 1, n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!plan) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void dft_inplace(std::complex<double>* data, std::size_t N, std::size_t howmany, int sign) {
  if (N == 0 || howmany == 0) return;
  auto plan = cache().get(N, howmany, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x, int sign) {
  std::vector<std::complex<double>> out(x.begin(), x.end());
  dft_inplace(out.data(), out.size(), 1, sign);
  return out;
}

std::size_t next_pow2(std::size_t m) {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

}  // namespace circrmt
