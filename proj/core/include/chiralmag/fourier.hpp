#pragma once

// Batched 2D discrete Fourier transforms of 3-vector fields on an odd N x N
// collocation grid. The forward transform is normalized so that coefficient k
// is the cell average of m(x) e^{-i v(k).x}.

#include <Eigen/Core>

#include <complex>
#include <memory>

namespace chiralmag {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

class FourierPlan {
 public:
  /// Shared plan for grid size n; creation is serialized, execution is
  /// reentrant.
  static std::shared_ptr<const FourierPlan> get(int n);

  ~FourierPlan();
  FourierPlan(const FourierPlan&) = delete;
  FourierPlan& operator=(const FourierPlan&) = delete;

  int n() const { return n_; }

  /// out[k] = (1/n^2) sum_x in[x] e^{-2 pi i k.y}; arrays hold n*n entries.
  void forward(const Vec3* in, CVec3* out) const;
  void forward(const CVec3* in, CVec3* out) const;
  /// out[x] = Re sum_k in[k] e^{2 pi i k.y}.
  void backward(const CVec3* in, Vec3* out) const;

 private:
  explicit FourierPlan(int n);

  int n_;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

}  // namespace chiralmag
