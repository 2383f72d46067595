#include "chiralmag/stability.hpp"

#include "chiralmag/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chiralmag {

namespace {

// |omega|^2 values this close to 1 are treated as critical so that mu_- vanishes exactly.
constexpr double kCriticalSnap = 1e-12;
constexpr double kBoundaryTolerance = 1e-12;

double pointwise_mean(const RealField& a, const RealField& b, auto&& f) {
  double acc = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) acc += f(av[i], bv[i]);
  return acc / static_cast<double>(av.size());
}

}  // namespace

double mu_minus(double kappa, double beta, double omega_sq) {
  if (std::abs(omega_sq - 1.0) <= kCriticalSnap) return 0.0;
  const double k2 = 4 * kappa * kappa;
  const double b = beta * beta / 4;
  return (omega_sq - 1) * (1 - k2 / (std::sqrt(k2 + b) + std::sqrt(k2 * omega_sq + b)));
}

double mu_plus(double kappa, double beta, double omega_sq) {
  const double k2 = 4 * kappa * kappa;
  const double b = beta * beta / 4;
  return omega_sq - 1 + std::sqrt(k2 + b) + std::sqrt(k2 * omega_sq + b);
}

L0Spectrum l0_spectrum(const ModelParams& p, const LatticeSpec& spec, double radius) {
  const double lambda0 = bifurcation_point(p).lambda0;
  L0Spectrum out;
  out.constant_low = lambda0;
  out.constant_high = lambda0 + p.beta;
  for (const WaveVector& w : dual_vectors_within(spec, radius)) {
    const double r2 = w.norm * w.norm;
    out.modes.push_back({w, mu_minus(p.kappa, p.beta, r2), mu_plus(p.kappa, p.beta, r2)});
  }
  return out;
}

bool lambda0_positive(double kappa, double beta) {
  return bifurcation_point(ModelParams{kappa, 0.0, 1.0, beta}).lambda0 > 0;
}

bool gap_condition(double kappa, double beta, double gamma) {
  const double k2 = 4 * kappa * kappa;
  const double b = beta * beta / 4;
  return k2 <= std::sqrt(k2 + b) + std::sqrt(k2 * gamma * gamma + b);
}

double threshold_beta(double kappa) { return 4 * kappa / std::sqrt(3.0); }

bool admissible_region(double kappa, double beta) {
  const double q = 16 * std::pow(kappa, 4) - 24 * kappa * kappa + 1;
  const bool first = beta > threshold_beta(kappa);
  const bool second = q < 0 || beta >= std::sqrt(q);
  const bool third = beta < 4 * kappa * kappa - 1;
  return first && second && third;
}

double c_tilde_closed_form(double A) { return (A * A - 3) / (A * A + 1); }

double hex_witness_quoted(double A, double alpha) {
  return -alpha * (2 * A * A + 3) / (3 * (A * A + 1));
}

double hex_witness_closed_form(double A, double alpha) {
  return -alpha * (2 * A * A + 3) / (3 * (A * A + 1) * (A * A + 1));
}

double fixed_mode_curvature(const KernelMode& mode) { return 4 * mean_power(mode.field, 4); }

double competing_mode_curvature(const BifurcationPoint& bp, const LatticeSpec& spec, int n) {
  if (classify(spec).kind != LatticeKind::Square) {
    throw SymmetryMismatch("the competing-mode coefficient is defined on the square lattice");
  }
  const double A = bp.amplitude_A;
  const auto crit = critical_wave_vectors(spec);
  const RealField a = standing_mode_cos(A, crit[0], spec, n);
  const RealField b = standing_mode_cos(A, crit[1], spec, n);
  const RealField tilde = a + b;
  const RealField fixed = a - b;
  const double nu2 = compute_nu2(build_mode(bp, spec, Symmetry::Sigma2, n), bp.params);
  const double dot2 = pointwise_mean(tilde, fixed, [](const Vec3& u, const Vec3& w) {
    const double d = u.dot(w);
    return d * d;
  });
  const double norms = pointwise_mean(tilde, fixed, [](const Vec3& u, const Vec3& w) {
    return u.squaredNorm() * w.squaredNorm();
  });
  return 4 * dot2 + 2 * norms + 2 * (nu2 / bp.params.alpha) * mean_power(tilde, 2);
}

double hex_witness_quadrature(const BifurcationPoint& bp, const LatticeSpec& spec, int n) {
  if (classify(spec).kind != LatticeKind::Hexagonal) {
    throw SymmetryMismatch("the skyrmion witness is defined on the hexagonal lattice");
  }
  const double alpha = bp.params.alpha;
  const KernelMode sky = build_mode(bp, spec, Symmetry::Sigma3, n);
  const double nu2 = compute_nu2(sky, bp.params);
  const auto crit = critical_wave_vectors(spec);
  const RealField phi = standing_mode_cos(bp.amplitude_A, crit[0], spec, n) -
                        standing_mode_cos(bp.amplitude_A, crit[1], spec, n);
  const double norms = pointwise_mean(sky.field, phi, [](const Vec3& u, const Vec3& w) {
    return u.squaredNorm() * w.squaredNorm();
  });
  const double dot2 = pointwise_mean(sky.field, phi, [](const Vec3& u, const Vec3& w) {
    const double d = u.dot(w);
    return d * d;
  });
  return nu2 * mean_power(phi, 2) + alpha * norms + 2 * alpha * dot2;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    case Verdict::OutOfScope: return "OutOfScope";
  }
  return "unknown";
}

StabilityReport stability_verdict(const ModelParams& p, const LatticeSpec& spec,
                                  Symmetry symmetry) {
  p.validate();
  const auto avail = available_symmetries(spec);
  if (std::find(avail.begin(), avail.end(), symmetry) == avail.end()) {
    throw SymmetryMismatch(std::string(to_string(symmetry)) + " is not available on this lattice");
  }
  const BifurcationPoint bp = bifurcation_point(p);
  const LatticeKind kind = classify(spec).kind;

  StabilityReport r;
  r.lambda0 = bp.lambda0;
  r.amplitude_A = bp.amplitude_A;
  r.gamma = second_shell_norm(spec);
  r.lambda0_positive = bp.lambda0 > 0;
  r.gap_condition = gap_condition(p.kappa, p.beta, r.gamma);
  r.threshold_beta = threshold_beta(p.kappa);
  r.c_tilde = c_tilde_closed_form(bp.amplitude_A);
  r.hex_witness = hex_witness_closed_form(bp.amplitude_A, p.alpha);

  const L0Spectrum spectrum = l0_spectrum(p, spec);
  r.mu_min = std::min(spectrum.constant_low, spectrum.constant_high);
  for (const SpectrumEntry& e : spectrum.modes) {
    if (e.mu_minus < r.mu_min) {
      r.mu_min = e.mu_minus;
      r.worst_mode = e.omega;
    }
  }
  r.mu_min_nonneg = r.mu_min >= -1e-12;

  if (!r.lambda0_positive) {
    r.verdict = Verdict::Unstable;
    r.reason = "lambda0 <= 0: constant modes are unstable";
    return r;
  }
  if (!r.gap_condition) {
    r.verdict = Verdict::Unstable;
    r.reason = "gap condition fails: a second-shell mode is unstable";
    return r;
  }

  const double dbeta = p.beta - r.threshold_beta;
  const bool at_threshold = std::abs(dbeta) <= kBoundaryTolerance * std::max(1.0, r.threshold_beta);
  switch (kind) {
    case LatticeKind::NonEquilateral:
      r.verdict = Verdict::Stable;
      r.reason = "helix on a non-equilateral lattice";
      break;
    case LatticeKind::Square:
      if (at_threshold) {
        r.verdict = Verdict::OutOfScope;
        r.reason = "beta at the threshold 4 kappa / sqrt(3)";
      } else if (symmetry == Symmetry::Sigma2) {
        r.verdict = dbeta > 0 ? Verdict::Stable : Verdict::Unstable;
        r.reason = dbeta > 0 ? "vortex lattice above the anisotropy threshold"
                             : "vortex lattice below the anisotropy threshold";
      } else {
        r.verdict = dbeta < 0 ? Verdict::Stable : Verdict::Unstable;
        r.reason = dbeta < 0 ? "helix below the anisotropy threshold"
                             : "helix above the anisotropy threshold";
      }
      break;
    case LatticeKind::Hexagonal:
      if (symmetry == Symmetry::Sigma1) {
        r.verdict = Verdict::Stable;
        r.reason = "helix on the hexagonal lattice";
      } else {
        r.verdict = Verdict::Unstable;
        r.reason = symmetry == Symmetry::Sigma3 ? "skyrmion lattice is unstable for all beta"
                                                : "vortex lattice on the hexagonal lattice";
      }
      break;
    case LatticeKind::Rhombic:
      r.verdict = Verdict::OutOfScope;
      r.reason = "rhombic lattices are not settled";
      break;
  }
  return r;
}

}  // namespace chiralmag
