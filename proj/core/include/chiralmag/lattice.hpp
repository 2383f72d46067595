#pragma once

// Planar lattices Lambda = (2 pi / Im tau) (Z + tau Z) in the fundamental-domain
// parametrization tau = |tau| e^{i theta}, their dual lattices and shape classes.

#include <Eigen/Core>

#include <cstddef>
#include <string_view>
#include <vector>

namespace chiralmag {

/// Tolerance used for fundamental-domain membership and shape snapping.
inline constexpr double kGeometryTolerance = 1e-12;

struct LatticeSpec {
  double tau_abs = 1.0;
  double theta = 0.0;             ///< radians
  Eigen::Matrix2d basis;          ///< A; Lambda = 2 pi A Z^2
  Eigen::Matrix2d dual;           ///< A^{-T}; Lambda* = A^{-T} Z^2
  double cell_area = 0.0;         ///< |det(2 pi A)|

  double re_tau() const;
  double im_tau() const;

  /// v = A^{-T} k.
  Eigen::Vector2d dual_vector(int k1, int k2) const;
  /// Physical point x = 2 pi A y for lattice coordinates y.
  Eigen::Vector2d point(double y1, double y2) const;
};

enum class LatticeKind { NonEquilateral, Rhombic, Square, Hexagonal };
enum class Holohedry { Z2, D2, D4, D6 };

struct LatticeClass {
  LatticeKind kind = LatticeKind::NonEquilateral;
  Holohedry holohedry = Holohedry::Z2;
  double gamma = 0.0;  ///< second critical wave number
};

struct WaveVector {
  Eigen::Vector2i k = Eigen::Vector2i::Zero();
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  double norm = 0.0;
};

/// Builds a lattice from its shape parameter. Throws DomainError when
/// (tau_abs, theta) is outside the fundamental domain.
LatticeSpec make_lattice(double tau_abs, double theta);

LatticeSpec square_lattice();
LatticeSpec hexagonal_lattice();

LatticeClass classify(const LatticeSpec& spec);

bool is_equilateral(const LatticeSpec& spec);

/// Smallest dual norm strictly above the critical circle |v| = 1, found by
/// enumeration. Agrees with LatticeClass::gamma except where the closed-form
/// table overestimates it (|tau| > 2, or Re tau > 1/2).
double second_shell_norm(const LatticeSpec& spec);

WaveVector make_wave_vector(const LatticeSpec& spec, int k1, int k2);

/// All nonzero dual vectors with |v| <= radius, sorted by norm and then
/// lexicographically by k. Throws CapacityError beyond max_count entries.
std::vector<WaveVector> dual_vectors_within(const LatticeSpec& spec,
                                            double radius,
                                            std::size_t max_count = 4'000'000);

/// Norm-1 dual vectors, one representative per +- pair, ordered as
/// k = (1,0), (0,1), (1,1) where present.
std::vector<WaveVector> critical_wave_vectors(const LatticeSpec& spec);

std::string_view to_string(LatticeKind kind);
std::string_view to_string(Holohedry h);

}  // namespace chiralmag
