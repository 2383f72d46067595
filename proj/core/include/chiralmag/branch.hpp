#pragma once

// The bifurcating branch m_s = s phi_1 + O(s^3), lambda_s = lambda0 + s^2 nu2 + O(s^4),
// truncated at the orders available in closed form.

#include "chiralmag/field.hpp"
#include "chiralmag/linear.hpp"

#include <utility>
#include <vector>

namespace chiralmag {

inline constexpr double kBranchRadius = 0.5;

struct BranchData {
  BifurcationPoint point;
  KernelMode mode;
  double nu2 = 0.0;
  double s = 0.0;
  double lambda_s = 0.0;
  RealField m_s{1};
  double energy_quartic = 0.0;  ///< s^4 nu2 / 4
};

/// nu2 = -alpha <|phi|^4> / <|phi|^2>^2 with the grid average.
double compute_nu2(const KernelMode& mode, const ModelParams& p);

/// Throws DomainError when |s| > radius.
BranchData branch_state(const BifurcationPoint& bp, const KernelMode& mode, double nu2, double s,
                        double radius = kBranchRadius);

/// Discrete L2 norm of F(s phi_1, lambda0 + s^2 nu2) for each s.
std::vector<std::pair<double, double>> residual_scaling(const BifurcationPoint& bp,
                                                        const KernelMode& mode, double nu2,
                                                        const LatticeSpec& spec,
                                                        const std::vector<double>& s_list,
                                                        double radius = kBranchRadius);

/// Least-squares slope of log(y) against log(x). Points with x <= 0 or y <= 0 are skipped.
double loglog_slope(const std::vector<std::pair<double, double>>& xy);

}  // namespace chiralmag
