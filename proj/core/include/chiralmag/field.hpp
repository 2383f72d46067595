#pragma once

// Magnetization fields on the N x N collocation grid x_ij = 2 pi A (i/N, j/N),
// their Fourier coefficients, the linear operator
//   L m = -Lap m + 2 kappa curl m + lambda m + beta m3 e3
// and the discrete energy E_N.

#include "chiralmag/fourier.hpp"
#include "chiralmag/lattice.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace chiralmag {

using Mat3c = Eigen::Matrix3cd;

/// Dimensionless coefficients of the energy density
///   e(m) = |grad m|^2/2 + kappa m.curl m + lambda|m|^2/2 + alpha|m|^4/4 + beta m3^2/2.
struct ModelParams {
  double kappa = 1.0;
  double lambda = 0.0;
  double alpha = 1.0;
  double beta = 0.0;

  /// Throws DomainError unless kappa > 0, alpha > 0, beta >= 0.
  void validate() const;
  ModelParams with_lambda(double value) const;
};

struct PhysicalParams {
  double exchange = 1.0;            ///< A
  double dmi = 0.0;                 ///< D
  double landau_a = 1.0;            ///< a
  double landau_b = 1.0;            ///< b
  double anisotropy = 0.0;          ///< K
  double temperature_offset = 0.0;  ///< T - T_C
  double length_scale = 1.0;        ///< r
};

ModelParams nondimensionalize(const PhysicalParams& phys);

class RealField {
 public:
  /// Zero field; throws SizeError unless n is odd and positive.
  explicit RealField(int n);

  int n() const { return n_; }
  std::size_t size() const { return data_.size(); }

  Vec3& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const Vec3& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::span<Vec3> values() { return data_; }
  std::span<const Vec3> values() const { return data_; }

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double s);

 private:
  int n_;
  std::vector<Vec3> data_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double s, RealField a);

/// Fourier coefficients m~(k) for k in {-(N-1)/2, ..., (N-1)/2}^2, stored in
/// transform order.
class SpectralField {
 public:
  explicit SpectralField(int n);

  int n() const { return n_; }
  int max_wavenumber() const { return (n_ - 1) / 2; }
  std::size_t size() const { return coeffs_.size(); }

  CVec3& at(int k1, int k2) { return coeffs_[storage_index(k1, k2)]; }
  const CVec3& at(int k1, int k2) const { return coeffs_[storage_index(k1, k2)]; }

  std::span<CVec3> values() { return coeffs_; }
  std::span<const CVec3> values() const { return coeffs_; }

  /// Wavenumber of storage position a along one axis.
  int wavenumber(int a) const { return a <= max_wavenumber() ? a : a - n_; }
  std::size_t storage_index(int k1, int k2) const;

  /// Visits every mode as f(k1, k2, coefficient).
  template <class F>
  void for_each_mode(F&& f) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        f(wavenumber(a), wavenumber(b), coeffs_[static_cast<std::size_t>(a) * n_ + b]);
  }
  template <class F>
  void for_each_mode(F&& f) const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        f(wavenumber(a), wavenumber(b), coeffs_[static_cast<std::size_t>(a) * n_ + b]);
  }

 private:
  int n_;
  std::vector<CVec3> coeffs_;
};

SpectralField to_spectral(const RealField& f);
RealField to_real(const SpectralField& g);

/// Samples f(x) at the collocation points of the lattice.
template <class F>
RealField sample_field(const LatticeSpec& spec, int n, F&& f) {
  RealField out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = f(spec.point(static_cast<double>(i) / n, static_cast<double>(j) / n));
  return out;
}

/// Per-mode curl (i v2 c, -i v1 c, i(v1 b - v2 a)).
SpectralField curl2d(const SpectralField& g, const LatticeSpec& spec);

/// Hermitian 3x3 block of L acting on the Fourier mode with wave vector v.
Mat3c linear_block(const Eigen::Vector2d& v, const ModelParams& p);

SpectralField apply_linear(const SpectralField& g, const ModelParams& p,
                           const LatticeSpec& spec);
RealField apply_linear(const RealField& f, const ModelParams& p, const LatticeSpec& spec);

/// F(m, lambda) = L m + alpha |m|^2 m, derivatives spectral, cubic term on the grid.
RealField el_residual(const RealField& f, const ModelParams& p, const LatticeSpec& spec);

/// Discrete cell average <u, w>_N = (1/N^2) sum_ij u(x_ij).w(x_ij).
double discrete_dot(const RealField& u, const RealField& w);
double discrete_norm(const RealField& u);
/// Max absolute component; +inf if any entry is non-finite.
double sup_norm(const RealField& u);
/// <|m|^p>_N
double mean_power(const RealField& u, int p);

/// <m, L m>_N, the second variation of E at m = 0 in direction m.
double quadratic_form(const RealField& f, const ModelParams& p, const LatticeSpec& spec);
double quadratic_form(const SpectralField& g, const ModelParams& p, const LatticeSpec& spec);

/// E_N(m) = <m, L m>_N / 2 + (alpha/4) <|m|^4>_N.
double energy(const RealField& f, const ModelParams& p, const LatticeSpec& spec);

/// The helix M (0, cos kappa x1, sin kappa x1), M = sqrt((kappa^2 - lambda)/alpha).
/// Throws ZeroAmplitude when lambda >= kappa^2 and IncompatibleLattice when the
/// helix is not Lambda-periodic.
RealField helix_field(const ModelParams& p, const LatticeSpec& spec, int n);

/// True when the helix of wave number kappa along x1 is Lambda-periodic.
bool lattice_accommodates_helix(double kappa, const LatticeSpec& spec);

}  // namespace chiralmag
