#include "chiralmag/branch.hpp"

#include "chiralmag/errors.hpp"

#include <cmath>

namespace chiralmag {

double compute_nu2(const KernelMode& mode, const ModelParams& p) {
  const double m2 = mean_power(mode.field, 2);
  return -p.alpha * mean_power(mode.field, 4) / (m2 * m2);
}

BranchData branch_state(const BifurcationPoint& bp, const KernelMode& mode, double nu2, double s,
                        double radius) {
  if (std::abs(s) > radius) {
    throw DomainError("branch parameter outside the validity radius");
  }
  BranchData b;
  b.point = bp;
  b.mode = mode;
  b.nu2 = nu2;
  b.s = s;
  b.lambda_s = bp.lambda0 + s * s * nu2;
  b.m_s = s * mode.field;
  b.energy_quartic = s * s * s * s * nu2 / 4;
  return b;
}

std::vector<std::pair<double, double>> residual_scaling(const BifurcationPoint& bp,
                                                        const KernelMode& mode, double nu2,
                                                        const LatticeSpec& spec,
                                                        const std::vector<double>& s_list,
                                                        double radius) {
  std::vector<std::pair<double, double>> out;
  out.reserve(s_list.size());
  for (double s : s_list) {
    const BranchData b = branch_state(bp, mode, nu2, s, radius);
    const RealField r = el_residual(b.m_s, bp.params.with_lambda(b.lambda_s), spec);
    out.emplace_back(s, discrete_norm(r));
  }
  return out;
}

double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& [x, y] : xy) {
    if (x <= 0 || y <= 0) continue;
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  if (k < 2) throw DomainError("loglog_slope needs two positive points");
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace chiralmag
