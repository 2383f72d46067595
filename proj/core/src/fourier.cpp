#include "chiralmag/fourier.hpp"

#include "chiralmag/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace chiralmag {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>>& scratch(std::size_t size) {
  thread_local std::vector<std::complex<double>> buffer;
  if (buffer.size() < size) buffer.resize(size);
  return buffer;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

fftw_complex* as_fftw(const CVec3* p) {
  static_assert(sizeof(CVec3) == 3 * sizeof(std::complex<double>));
  return reinterpret_cast<fftw_complex*>(const_cast<CVec3*>(p));
}

}  // namespace

std::shared_ptr<const FourierPlan> FourierPlan::get(int n) {
  if (n < 1 || n % 2 == 0) throw SizeError("grid size must be odd and positive");
  static std::map<int, std::shared_ptr<const FourierPlan>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const FourierPlan> plan(new FourierPlan(n));
  cache.emplace(n, plan);
  return plan;
}

// Called with planner_mutex held.
FourierPlan::FourierPlan(int n) : n_(n) {
  const std::size_t count = 3 * static_cast<std::size_t>(n) * n;
  auto* a = fftw_alloc_complex(count);
  auto* b = fftw_alloc_complex(count);
  const int dims[2] = {n, n};
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
  forward_plan_ = fftw_plan_many_dft(2, dims, 3, a, nullptr, 3, 1, b, nullptr, 3, 1,
                                     FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_many_dft(2, dims, 3, a, nullptr, 3, 1, b, nullptr, 3, 1,
                                      FFTW_BACKWARD, flags);
  fftw_free(a);
  fftw_free(b);
}

FourierPlan::~FourierPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void FourierPlan::forward(const Vec3* in, CVec3* out) const {
  const std::size_t points = static_cast<std::size_t>(n_) * n_;
  auto& buf = scratch(3 * points);
  for (std::size_t p = 0; p < points; ++p) {
    for (int c = 0; c < 3; ++c) buf[3 * p + c] = in[p](c);
  }
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(buf.data()), as_fftw(out));
  const double scale = 1.0 / static_cast<double>(points);
  for (std::size_t p = 0; p < points; ++p) out[p] *= scale;
}

void FourierPlan::forward(const CVec3* in, CVec3* out) const {
  const std::size_t points = static_cast<std::size_t>(n_) * n_;
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(in), as_fftw(out));
  const double scale = 1.0 / static_cast<double>(points);
  for (std::size_t p = 0; p < points; ++p) out[p] *= scale;
}

void FourierPlan::backward(const CVec3* in, Vec3* out) const {
  const std::size_t points = static_cast<std::size_t>(n_) * n_;
  auto& buf = scratch(3 * points);
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(in), as_fftw(buf.data()));
  for (std::size_t p = 0; p < points; ++p) {
    for (int c = 0; c < 3; ++c) out[p](c) = buf[3 * p + c].real();
  }
}

}  // namespace chiralmag
