#pragma once

// Spectral stability of the bifurcating branches: the spectrum of L at the
// plus-root bifurcation point, curvature coefficients of the critical
// eigenvalues, and the resulting verdicts.

#include "chiralmag/branch.hpp"
#include "chiralmag/lattice.hpp"
#include "chiralmag/linear.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chiralmag {

/// mu_- = (|w|^2 - 1)(1 - 4k^2 / (sqrt(4k^2 + b^2/4) + sqrt(4k^2 |w|^2 + b^2/4))).
double mu_minus(double kappa, double beta, double omega_sq);
/// mu_+ = |w|^2 - 1 + sqrt(4k^2 + b^2/4) + sqrt(4k^2 |w|^2 + b^2/4).
double mu_plus(double kappa, double beta, double omega_sq);

struct SpectrumEntry {
  WaveVector omega;
  double mu_minus = 0.0;
  double mu_plus = 0.0;
};

struct L0Spectrum {
  std::vector<SpectrumEntry> modes;  ///< nonzero dual vectors
  double constant_low = 0.0;         ///< lambda0 (in-plane constants)
  double constant_high = 0.0;        ///< lambda0 + beta (m3 constant)
};

inline constexpr double kSpectrumRadius = 4.0;

L0Spectrum l0_spectrum(const ModelParams& p, const LatticeSpec& spec,
                       double radius = kSpectrumRadius);

bool lambda0_positive(double kappa, double beta);
/// 4k^2 <= sqrt(4k^2 + b^2/4) + sqrt(4k^2 gamma^2 + b^2/4).
bool gap_condition(double kappa, double beta, double gamma);
double threshold_beta(double kappa);

/// beta > 4k/sqrt(3), beta >= sqrt(16k^4 - 24k^2 + 1) (vacuous when negative), beta < 4k^2 - 1.
bool admissible_region(double kappa, double beta);

/// (A^2 - 3) / (A^2 + 1).
double c_tilde_closed_form(double A);
/// -alpha (2A^2 + 3) / (3 (A^2 + 1)), the coefficient as usually quoted.
double hex_witness_quoted(double A, double alpha);
/// -alpha (2A^2 + 3) / (3 (A^2 + 1)^2), what the quadrature actually gives.
double hex_witness_closed_form(double A, double alpha);

/// C = 4 <|phi_1|^4> for the mode's own critical eigenvalue, mu(s) = C alpha s^2.
double fixed_mode_curvature(const KernelMode& mode);

/// C~ for the competitor phi~ = phi_{1,v2} + phi_{1,v3} of the square vortex mode:
/// 4<(phi~.phi)^2> + 2<|phi~|^2 |phi|^2> + 2 (nu2/alpha) <|phi~|^2>.
/// Throws SymmetryMismatch off the square lattice.
double competing_mode_curvature(const BifurcationPoint& bp, const LatticeSpec& spec, int n);

/// Leading coefficient of <L_s phi, phi> / s^2 along the skyrmion branch for
/// phi = phi_{1,v4} - phi_{1,v5}:
/// nu2 <|phi|^2> + alpha <|phi_1|^2 |phi|^2> + 2 alpha <(phi_1.phi)^2>.
/// Throws SymmetryMismatch off the hexagonal lattice.
double hex_witness_quadrature(const BifurcationPoint& bp, const LatticeSpec& spec, int n);

enum class Verdict { Stable, Unstable, OutOfScope };

std::string_view to_string(Verdict v);

struct StabilityReport {
  double lambda0 = 0.0;
  double amplitude_A = 0.0;
  double gamma = 0.0;  ///< second shell norm used in the gap condition
  bool lambda0_positive = false;
  bool gap_condition = false;
  bool mu_min_nonneg = false;
  double mu_min = 0.0;
  std::optional<WaveVector> worst_mode;  ///< nullopt: a constant mode
  double threshold_beta = 0.0;
  double c_tilde = 0.0;
  double hex_witness = 0.0;  ///< closed form matching the quadrature
  Verdict verdict = Verdict::OutOfScope;
  std::string reason;
};

/// Throws SymmetryMismatch as build_mode does.
StabilityReport stability_verdict(const ModelParams& p, const LatticeSpec& spec, Symmetry symmetry);

}  // namespace chiralmag
