#pragma once

// Linear analysis at m = 0: bifurcation points, non-resonance, and the
// kernel modes fixed by each axial isotropy subgroup.

#include "chiralmag/field.hpp"
#include "chiralmag/lattice.hpp"
#include "chiralmag/symmetry.hpp"

#include <string_view>
#include <vector>

namespace chiralmag {

enum class RootSign { Plus, Minus };

std::string_view to_string(RootSign s);

struct BifurcationPoint {
  ModelParams params;  ///< lambda is ignored
  RootSign root_sign = RootSign::Plus;
  double lambda0 = 0.0;
  double amplitude_A = 0.0;
  int kernel_dim = 0;  ///< set once a lattice is known
  bool resonant = false;
};

/// lambda0 = -1 - beta/2 +- sqrt(4 kappa^2 + beta^2/4),
/// A = 2 kappa / (-beta/2 +- sqrt(4 kappa^2 + beta^2/4)).
BifurcationPoint bifurcation_point(const ModelParams& p, RootSign sign = RootSign::Plus);

/// Dimension of ker L at lambda0: two per critical +- pair.
int kernel_dimension(const LatticeSpec& spec);

/// Branch values g(r) = -r^2 - beta/2 +- sqrt(4 kappa^2 r^2 + beta^2/4) at r = |omega|.
double dispersion_branch(double kappa, double beta, double omega_sq, RootSign sign);

/// Enumeration radius beyond which both dispersion branches stay below lambda0 - 1.
double resonance_radius(double lambda0, const ModelParams& p);

inline constexpr double kResonanceTolerance = 1e-9;
inline constexpr double kNearResonanceBand = 1e-4;

struct ResonanceReport {
  bool resonant = false;        ///< a non-critical, nonzero omega lies in the kernel
  bool near_resonant = false;   ///< within kNearResonanceBand
  bool constant_mode_degenerate = false;  ///< lambda0 = 0 or lambda0 = -beta
  double min_gap = 0.0;         ///< min |lambda0 - g(|omega|)|
  WaveVector closest;
  RootSign closest_branch = RootSign::Plus;
  double radius = 0.0;
};

ResonanceReport check_resonance(const BifurcationPoint& bp, const LatticeSpec& spec,
                                double tol = kResonanceTolerance,
                                double band = kNearResonanceBand);

/// phi_{1,v} = (A v2/|v| sin(v.x), -A v1/|v| sin(v.x), cos(v.x)) / sqrt(1+A^2)
RealField standing_mode_cos(double A, const WaveVector& v, const LatticeSpec& spec, int n);
/// phi_{2,v} = (A v2/|v| cos(v.x), -A v1/|v| cos(v.x), -sin(v.x)) / sqrt(1+A^2)
RealField standing_mode_sin(double A, const WaveVector& v, const LatticeSpec& spec, int n);

struct KernelMode {
  Symmetry symmetry = Symmetry::Sigma1;
  std::vector<WaveVector> wave_vectors;
  double amplitude_A = 0.0;
  RealField field{1};
};

/// Symmetry classes realized on the lattice, richest last.
std::vector<Symmetry> available_symmetries(const LatticeSpec& spec);
Symmetry default_symmetry(const LatticeSpec& spec);

/// The normalized fixed-subspace mode: sqrt(2) phi_1 for Sigma1, the
/// difference of two standing modes for Sigma2, sqrt(2/3) times the sum of
/// three for Sigma3. Throws SymmetryMismatch.
KernelMode build_mode(const BifurcationPoint& bp, const LatticeSpec& spec, Symmetry symmetry,
                      int n);

}  // namespace chiralmag
