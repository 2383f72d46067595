#include "chiralmag/lattice.hpp"

#include "chiralmag/errors.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace chiralmag {

namespace {

constexpr double kPi = std::numbers::pi;

bool near(double a, double b) { return std::abs(a - b) <= kGeometryTolerance; }

// Representatives of +- pairs: k lexicographically positive.
bool lex_positive(const Eigen::Vector2i& k) {
  return k(0) > 0 || (k(0) == 0 && k(1) > 0);
}

}  // namespace

double LatticeSpec::re_tau() const {
  // Exact for the snapped angles, see make_lattice.
  return -dual(1, 0);
}

double LatticeSpec::im_tau() const { return dual(0, 0); }

Eigen::Vector2d LatticeSpec::dual_vector(int k1, int k2) const {
  return dual * Eigen::Vector2d(k1, k2);
}

Eigen::Vector2d LatticeSpec::point(double y1, double y2) const {
  return 2.0 * kPi * (basis * Eigen::Vector2d(y1, y2));
}

LatticeSpec make_lattice(double tau_abs, double theta) {
  if (!std::isfinite(tau_abs) || !std::isfinite(theta)) {
    throw DomainError("lattice shape parameters must be finite");
  }
  if (tau_abs < 1.0 - kGeometryTolerance) {
    std::ostringstream msg;
    msg << "|tau| = " << tau_abs << " is below 1: shape is not reduced";
    throw DomainError(msg.str());
  }
  if (near(tau_abs, 1.0)) tau_abs = 1.0;
  if (near(theta, kPi / 3.0)) theta = kPi / 3.0;
  if (near(theta, kPi / 2.0)) theta = kPi / 2.0;

  const bool equilateral = tau_abs == 1.0;
  const bool in_range = equilateral ? (theta >= kPi / 3.0 && theta <= kPi / 2.0)
                                    : (theta >= kPi / 3.0 && theta < 2.0 * kPi / 3.0);
  if (!in_range) {
    std::ostringstream msg;
    msg << "(|tau|, theta) = (" << tau_abs << ", " << theta
        << ") lies outside the fundamental domain";
    throw DomainError(msg.str());
  }

  double c = std::cos(theta);
  double s = std::sin(theta);
  if (theta == kPi / 2.0) {
    c = 0.0;
    s = 1.0;
  } else if (theta == kPi / 3.0) {
    c = 0.5;
    s = std::sqrt(3.0) / 2.0;
  }

  LatticeSpec spec;
  spec.tau_abs = tau_abs;
  spec.theta = theta;
  const double im = tau_abs * s;
  spec.basis << 1.0 / im, tau_abs * c / im,
                0.0,      1.0;
  spec.dual << im,            0.0,
               -tau_abs * c,  1.0;
  spec.cell_area = std::abs((2.0 * kPi * spec.basis).determinant());
  return spec;
}

LatticeSpec square_lattice() { return make_lattice(1.0, kPi / 2.0); }
LatticeSpec hexagonal_lattice() { return make_lattice(1.0, kPi / 3.0); }

bool is_equilateral(const LatticeSpec& spec) { return spec.tau_abs == 1.0; }

LatticeClass classify(const LatticeSpec& spec) {
  LatticeClass cls;
  if (spec.tau_abs == 1.0) {
    if (spec.theta == kPi / 2.0) {
      cls.kind = LatticeKind::Square;
      cls.holohedry = Holohedry::D4;
      cls.gamma = std::sqrt(2.0);
    } else if (spec.theta == kPi / 3.0) {
      cls.kind = LatticeKind::Hexagonal;
      cls.holohedry = Holohedry::D6;
      cls.gamma = std::sqrt(3.0);
    } else {
      cls.kind = LatticeKind::Rhombic;
      cls.holohedry = Holohedry::D2;
      cls.gamma = std::sqrt(2.0 - 2.0 * std::cos(spec.theta));
    }
    return cls;
  }
  cls.kind = LatticeKind::NonEquilateral;
  const double re = spec.re_tau();
  // Rectangular (Re tau = 0) and centred rectangular (|Re tau| = 1/2) shapes
  // carry reflections; the rest are oblique.
  cls.holohedry = (near(re, 0.0) || near(std::abs(re), 0.5)) ? Holohedry::D2
                                                             : Holohedry::Z2;
  cls.gamma = spec.tau_abs;
  return cls;
}

WaveVector make_wave_vector(const LatticeSpec& spec, int k1, int k2) {
  WaveVector w;
  w.k = Eigen::Vector2i(k1, k2);
  w.v = spec.dual_vector(k1, k2);
  w.norm = w.v.norm();
  return w;
}

std::vector<WaveVector> dual_vectors_within(const LatticeSpec& spec, double radius,
                                            std::size_t max_count) {
  if (!(radius > 0.0)) throw DomainError("enumeration radius must be positive");

  // |k|_inf <= |k|_2 <= |A^{-T} k| / sigma_min(A^{-T}), so this box is exhaustive.
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(spec.dual);
  const double sigma_min = svd.singularValues().minCoeff();
  const double bound = std::ceil(radius / sigma_min);
  if (bound > 1e6) throw CapacityError("enumeration box too large");
  const int kmax = static_cast<int>(bound);

  std::vector<WaveVector> out;
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      WaveVector w = make_wave_vector(spec, k1, k2);
      if (w.norm > radius * (1.0 + 1e-14)) continue;
      if (out.size() == max_count) {
        std::ostringstream msg;
        msg << "more than " << max_count << " dual vectors within radius " << radius;
        throw CapacityError(msg.str());
      }
      out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end(), [](const WaveVector& a, const WaveVector& b) {
    if (std::abs(a.norm - b.norm) > 1e-12) return a.norm < b.norm;
    if (a.k(0) != b.k(0)) return a.k(0) < b.k(0);
    return a.k(1) < b.k(1);
  });
  return out;
}

std::vector<WaveVector> critical_wave_vectors(const LatticeSpec& spec) {
  std::vector<WaveVector> reps;
  for (const auto& w : dual_vectors_within(spec, 1.0 + 1e-9)) {
    if (std::abs(w.norm - 1.0) <= 1e-9 && lex_positive(w.k)) reps.push_back(w);
  }
  // (1,0) before (0,1) before (1,1): matches the numbering of the kernel modes.
  auto rank = [](const WaveVector& w) {
    return 2 * (w.k(0) + w.k(1)) - w.k(0);
  };
  std::sort(reps.begin(), reps.end(),
            [&](const WaveVector& a, const WaveVector& b) { return rank(a) < rank(b); });
  return reps;
}

double second_shell_norm(const LatticeSpec& spec) {
  for (const auto& w : dual_vectors_within(spec, 2.0 + 1e-9)) {
    if (w.norm > 1.0 + 1e-9) return w.norm;
  }
  return 2.0;  // k = (0, 2) is always a dual vector of norm 2
}

std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::NonEquilateral: return "non-equilateral";
    case LatticeKind::Rhombic: return "rhombic";
    case LatticeKind::Square: return "square";
    case LatticeKind::Hexagonal: return "hexagonal";
  }
  return "unknown";
}

std::string_view to_string(Holohedry h) {
  switch (h) {
    case Holohedry::Z2: return "Z2";
    case Holohedry::D2: return "D2";
    case Holohedry::D4: return "D4";
    case Holohedry::D6: return "D6";
  }
  return "unknown";
}

}  // namespace chiralmag
