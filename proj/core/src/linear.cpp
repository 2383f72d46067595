#include "chiralmag/linear.hpp"

#include "chiralmag/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chiralmag {

std::string_view to_string(RootSign s) { return s == RootSign::Plus ? "plus" : "minus"; }

BifurcationPoint bifurcation_point(const ModelParams& p, RootSign sign) {
  p.validate();
  const double root = std::sqrt(4 * p.kappa * p.kappa + p.beta * p.beta / 4);
  const double sgn = sign == RootSign::Plus ? 1.0 : -1.0;
  BifurcationPoint bp;
  bp.params = p;
  bp.root_sign = sign;
  bp.lambda0 = -1 - p.beta / 2 + sgn * root;
  bp.amplitude_A = 2 * p.kappa / (-p.beta / 2 + sgn * root);
  return bp;
}

int kernel_dimension(const LatticeSpec& spec) {
  return 2 * static_cast<int>(critical_wave_vectors(spec).size());
}

double dispersion_branch(double kappa, double beta, double omega_sq, RootSign sign) {
  const double root = std::sqrt(4 * kappa * kappa * omega_sq + beta * beta / 4);
  return -omega_sq - beta / 2 + (sign == RootSign::Plus ? root : -root);
}

double resonance_radius(double lambda0, const ModelParams& p) {
  // sqrt(4k^2 r^2 + b^2/4) <= 2kr + b/2, so both branches satisfy g(r) <= -r^2 + 2kr.
  // -r^2 + 2kr < lambda0 - 1 once r > k + sqrt(k^2 + 1 - lambda0); the radius
  // below dominates that bound for every beta >= 0.
  const double k = p.kappa;
  return 2 * k + std::sqrt(4 * k * k + std::abs(lambda0) + p.beta + 2);
}

ResonanceReport check_resonance(const BifurcationPoint& bp, const LatticeSpec& spec, double tol,
                                double band) {
  const ModelParams& p = bp.params;
  ResonanceReport rep;
  rep.radius = resonance_radius(bp.lambda0, p);
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (const WaveVector& w : dual_vectors_within(spec, rep.radius)) {
    if (std::abs(w.norm - 1.0) <= kGeometryTolerance) continue;
    for (RootSign s : {RootSign::Plus, RootSign::Minus}) {
      const double gap = std::abs(bp.lambda0 - dispersion_branch(p.kappa, p.beta, w.norm * w.norm, s));
      if (gap < rep.min_gap) {
        rep.min_gap = gap;
        rep.closest = w;
        rep.closest_branch = s;
      }
    }
  }
  rep.resonant = rep.min_gap < tol;
  rep.near_resonant = rep.min_gap < band;
  rep.constant_mode_degenerate =
      std::abs(bp.lambda0) < tol || std::abs(bp.lambda0 + p.beta) < tol;
  return rep;
}

namespace {

RealField standing_mode(double A, const WaveVector& w, const LatticeSpec& spec, int n,
                        bool cosine) {
  const double c = 1.0 / std::sqrt(1 + A * A);
  const Eigen::Vector2d u = w.v / w.norm;
  return sample_field(spec, n, [&](const Eigen::Vector2d& x) {
    const double phase = w.v.dot(x);
    const double h = cosine ? std::sin(phase) : std::cos(phase);
    const double z = cosine ? std::cos(phase) : -std::sin(phase);
    return Vec3(c * A * u(1) * h, -c * A * u(0) * h, c * z);
  });
}

}  // namespace

RealField standing_mode_cos(double A, const WaveVector& v, const LatticeSpec& spec, int n) {
  return standing_mode(A, v, spec, n, true);
}

RealField standing_mode_sin(double A, const WaveVector& v, const LatticeSpec& spec, int n) {
  return standing_mode(A, v, spec, n, false);
}

std::vector<Symmetry> available_symmetries(const LatticeSpec& spec) {
  std::vector<Symmetry> out{Symmetry::Sigma1};
  if (is_equilateral(spec)) out.push_back(Symmetry::Sigma2);
  if (classify(spec).kind == LatticeKind::Hexagonal) out.push_back(Symmetry::Sigma3);
  return out;
}

Symmetry default_symmetry(const LatticeSpec& spec) { return available_symmetries(spec).back(); }

KernelMode build_mode(const BifurcationPoint& bp, const LatticeSpec& spec, Symmetry symmetry,
                      int n) {
  const auto avail = available_symmetries(spec);
  if (std::find(avail.begin(), avail.end(), symmetry) == avail.end()) {
    throw SymmetryMismatch(std::string(to_string(symmetry)) + " is not available on a " +
                           std::string(to_string(classify(spec).kind)) + " lattice");
  }
  const auto crit = critical_wave_vectors(spec);
  const double A = bp.amplitude_A;
  KernelMode mode;
  mode.symmetry = symmetry;
  mode.amplitude_A = A;
  switch (symmetry) {
    case Symmetry::Sigma1:
      mode.wave_vectors = {crit[0]};
      mode.field = std::sqrt(2.0) * standing_mode_cos(A, crit[0], spec, n);
      break;
    case Symmetry::Sigma2:
      mode.wave_vectors = {crit[0], crit[1]};
      mode.field = standing_mode_cos(A, crit[0], spec, n) - standing_mode_cos(A, crit[1], spec, n);
      break;
    case Symmetry::Sigma3:
      mode.wave_vectors = {crit[0], crit[1], crit[2]};
      mode.field = std::sqrt(2.0 / 3.0) * (standing_mode_cos(A, crit[0], spec, n) +
                                           standing_mode_cos(A, crit[1], spec, n) +
                                           standing_mode_cos(A, crit[2], spec, n));
      break;
  }
  return mode;
}

}  // namespace chiralmag
