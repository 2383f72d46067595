#include "chiralmag/symmetry.hpp"

#include "chiralmag/errors.hpp"

#include <Eigen/LU>

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace chiralmag {

namespace {

int positive_mod(long long a, int n) {
  const long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

std::string_view to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Sigma1: return "Sigma1";
    case Symmetry::Sigma2: return "Sigma2";
    case Symmetry::Sigma3: return "Sigma3";
  }
  return "unknown";
}

Eigen::Matrix2d rotation_matrix(double angle) {
  Eigen::Matrix2d R;
  R << std::cos(angle), -std::sin(angle),
       std::sin(angle), std::cos(angle);
  return R;
}

Eigen::Matrix2d reflection_matrix(double phi) {
  Eigen::Matrix2d R;
  R << std::cos(2 * phi), std::sin(2 * phi),
       std::sin(2 * phi), -std::cos(2 * phi);
  return R;
}

GridSymmetry make_grid_symmetry(const LatticeSpec& spec, const Eigen::Matrix2d& rotation,
                                const Eigen::Vector2i& shift) {
  if (!(rotation.transpose() * rotation).isIdentity(1e-12)) {
    throw DomainError("symmetry matrix is not orthogonal");
  }
  const Eigen::Matrix2d G = spec.basis.inverse() * rotation * spec.basis;
  const Eigen::Matrix2d Gr = G.array().round().matrix();
  if ((G - Gr).cwiseAbs().maxCoeff() > 1e-9) {
    throw DomainError("rotation does not preserve the lattice");
  }
  GridSymmetry g;
  g.rotation = rotation;
  g.lattice_map = Gr.cast<int>();
  g.shift = shift;
  g.spin.setZero();
  g.spin.topLeftCorner<2, 2>() = rotation;
  g.spin(2, 2) = rotation.determinant() > 0 ? 1.0 : -1.0;
  return g;
}

RealField act(const GridSymmetry& g, const RealField& m) {
  const int n = m.n();
  // Lattice coordinates: source index = G^{-1} (target - shift), G unimodular.
  const Eigen::Matrix2i Ginv = g.lattice_map.cast<double>().inverse().array().round().cast<int>();
  RealField out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector2i src = Ginv * Eigen::Vector2i(i - g.shift(0), j - g.shift(1));
      out(i, j) = g.spin * m(positive_mod(src(0), n), positive_mod(src(1), n));
    }
  }
  return out;
}

std::vector<GridSymmetry> holohedry_elements(const LatticeSpec& spec) {
  // Point-group elements are R = A G A^{-1} with G unimodular; for a reduced
  // basis the entries of G lie in {-2, ..., 2}.
  std::vector<GridSymmetry> out;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          if (std::abs(a * d - b * c) != 1) continue;
          Eigen::Matrix2d G;
          G << a, b, c, d;
          const Eigen::Matrix2d R = spec.basis * G * spec.basis.inverse();
          if (!(R.transpose() * R).isIdentity(1e-10)) continue;
          out.push_back(make_grid_symmetry(spec, R));
        }
  return out;
}

std::vector<GridSymmetry> isotropy_generators(Symmetry s, const LatticeSpec& spec, int n) {
  (void)n;
  const auto cls = classify(spec);
  const auto crit = critical_wave_vectors(spec);
  const Eigen::Matrix2d inversion = -Eigen::Matrix2d::Identity();
  switch (s) {
    case Symmetry::Sigma1: {
      // Z2 x translations perpendicular to the helix wave vector. The shift
      // (-k2, k1) has v.t = 2 pi k.shift / n = 0.
      const Eigen::Vector2i& k = crit.front().k;
      return {make_grid_symmetry(spec, inversion),
              make_grid_symmetry(spec, Eigen::Matrix2d::Identity(),
                                 Eigen::Vector2i(-k(1), k(0)))};
    }
    case Symmetry::Sigma2: {
      if (!is_equilateral(spec)) {
        throw SymmetryMismatch("Sigma2 requires an equilateral lattice");
      }
      return {make_grid_symmetry(spec, inversion),
              make_grid_symmetry(spec, reflection_matrix(spec.theta / 2.0))};
    }
    case Symmetry::Sigma3: {
      if (cls.kind != LatticeKind::Hexagonal) {
        throw SymmetryMismatch("Sigma3 requires a hexagonal lattice");
      }
      return {make_grid_symmetry(spec, rotation_matrix(std::numbers::pi / 3.0))};
    }
  }
  return {};
}

}  // namespace chiralmag
