#include <doctest.h>

#include "chiralmag/errors.hpp"
#include "chiralmag/stability.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

using namespace chiralmag;
constexpr double kPi = std::numbers::pi;

namespace {

LatticeSpec random_lattice(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double pick = u(rng);
  if (pick < 0.15) return square_lattice();
  if (pick < 0.3) return hexagonal_lattice();
  if (pick < 0.45) return make_lattice(1.0, kPi / 3 + (kPi / 6) * u(rng));
  return make_lattice(1.0 + 2.0 * u(rng), kPi / 3 + (kPi / 3 - 1e-6) * u(rng));
}

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("spectrum at the critical circle") {
  for (auto [k, b] : {std::pair{0.6, 0.0}, {1.4, 5.0}, {2.0, 1.0}}) {
    CHECK(mu_minus(k, b, 1.0) == 0.0);
    CHECK(mu_minus(k, b, 1.0 + 1e-13) == 0.0);
    CHECK(mu_plus(k, b, 1.0) == doctest::Approx(2 * std::sqrt(4 * k * k + b * b / 4)));
  }
  const double k = 1.4, b = 5.0;
  const double expect =
      1.0 * (1 - 4 * k * k / (std::sqrt(4 * k * k + b * b / 4) + std::sqrt(8 * k * k + b * b / 4)));
  CHECK(mu_minus(k, b, 2.0) == doctest::Approx(expect));
  CHECK(mu_minus(k, b, 2.0) >= 0);
}

TEST_CASE("spectrum agrees with eigenvalues of the shifted 3x3 blocks") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> kap(0.3, 2.0), bet(0.0, 6.0);
  for (int t = 0; t < 10; ++t) {
    const ModelParams p{kap(rng), 0, 1, bet(rng)};
    const LatticeSpec spec = random_lattice(rng);
    const double l0 = bifurcation_point(p).lambda0;
    const L0Spectrum s = l0_spectrum(p, spec, 3.0);
    CHECK(s.constant_low == l0);
    CHECK(s.constant_high == doctest::Approx(l0 + p.beta));
    for (const SpectrumEntry& e : s.modes) {
      Eigen::SelfAdjointEigenSolver<Mat3c> es(linear_block(e.omega.v, p.with_lambda(l0)));
      CHECK(es.eigenvalues()(0) == doctest::Approx(e.mu_minus).epsilon(1e-9).scale(1.0));
      CHECK(es.eigenvalues()(2) == doctest::Approx(e.mu_plus).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("spectrum is non-negative in the stable region") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> kap(0.5, 3.0), bet(0.0, 30.0);
  int accepted = 0;
  while (accepted < 200) {
    const double k = kap(rng), b = bet(rng);
    const LatticeSpec spec = random_lattice(rng);
    if (!lambda0_positive(k, b) || !gap_condition(k, b, second_shell_norm(spec))) continue;
    ++accepted;
    const L0Spectrum s = l0_spectrum({k, 0, 1, b}, spec);
    CHECK(s.constant_low > 0);
    for (const SpectrumEntry& e : s.modes) CHECK(e.mu_minus >= -1e-12);
  }
}

TEST_CASE("constant mode is unstable when lambda0 < 0") {
  const L0Spectrum s = l0_spectrum({1.4, 0, 1, 7}, square_lattice());
  CHECK(s.constant_low < 0);
  const StabilityReport r = stability_verdict({1.4, 0, 1, 7}, square_lattice(), Symmetry::Sigma2);
  CHECK_FALSE(r.worst_mode.has_value());
  CHECK(r.mu_min == doctest::Approx(r.lambda0));
}

TEST_CASE("admissible region") {
  CHECK(admissible_region(1.4, 5));
  CHECK_FALSE(admissible_region(0.4, 1));
  CHECK_FALSE(admissible_region(1.4, 7));
  CHECK_FALSE(admissible_region(0.6, 0));
  for (double k = 0.05; k <= 0.5; k += 0.05)
    for (double b = 0; b < 20; b += 0.25) CHECK_FALSE(admissible_region(k, b));
  // Strict / non-strict boundaries.
  const double k = 1.4;
  CHECK_FALSE(admissible_region(k, threshold_beta(k)));
  CHECK(admissible_region(k, std::nextafter(threshold_beta(k), 10.0)) ==
        (threshold_beta(k) >= std::sqrt(16 * std::pow(k, 4) - 24 * k * k + 1)));
  CHECK_FALSE(admissible_region(k, 4 * k * k - 1));
  CHECK(admissible_region(k, std::nextafter(4 * k * k - 1, 0.0)));
  const double q = std::sqrt(16 * std::pow(k, 4) - 24 * k * k + 1);
  CHECK(admissible_region(k, q));
  CHECK_FALSE(admissible_region(k, std::nextafter(q, 0.0)));
}

TEST_CASE("admissible region = lambda0 > 0, square gap and anisotropy threshold") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> kap(0.05, 4.0), bet(0.0, 60.0);
  for (int t = 0; t < 20000; ++t) {
    const double k = kap(rng), b = bet(rng);
    const bool oracle = bifurcation_point({k, 0, 1, b}).lambda0 > 0 &&
                        gap_condition(k, b, std::sqrt(2.0)) && b > 4 * k / std::sqrt(3.0);
    CHECK(admissible_region(k, b) == oracle);
  }
}

TEST_CASE("competing-mode coefficient") {
  for (double k : {0.6, 0.8, 1.4})
    for (double b : {0.0, 1.0, 2.0, threshold_beta(k), 5.0}) {
      const BifurcationPoint bp = bifurcation_point({k, 0, 1, b});
      const double q = competing_mode_curvature(bp, square_lattice(), 21);
      CHECK(q == doctest::Approx(c_tilde_closed_form(bp.amplitude_A)).epsilon(1e-10).scale(1.0));
      CHECK(q > -3);
      CHECK(q < 1);
    }
  CHECK(competing_mode_curvature(bifurcation_point({0.6, 0, 1, 0}), square_lattice(), 21) ==
        doctest::Approx(-1.0));
  CHECK(c_tilde_closed_form(std::sqrt(3.0)) == doctest::Approx(0.0).scale(1.0));
  // At beta = 4 kappa / sqrt 3 the amplitude is exactly sqrt 3.
  CHECK(bifurcation_point({1.4, 0, 1, threshold_beta(1.4)}).amplitude_A ==
        doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(competing_mode_curvature(bifurcation_point({1, 0, 1, 0}), hexagonal_lattice(), 9),
                  SymmetryMismatch);
}

TEST_CASE("fixed-mode curvature") {
  const BifurcationPoint bp = bifurcation_point({0.6, 0, 1, 0});
  const KernelMode v = build_mode(bp, square_lattice(), Symmetry::Sigma2, 21);
  CHECK(fixed_mode_curvature(v) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("hexagonal witness") {
  for (double b = 0; b <= 8; b += 0.5) {
    const ModelParams p{1.1, 0, 1.7, b};
    const BifurcationPoint bp = bifurcation_point(p);
    const double q = hex_witness_quadrature(bp, hexagonal_lattice(), 21);
    CHECK(q < 0);
    CHECK(q == doctest::Approx(hex_witness_closed_form(bp.amplitude_A, p.alpha)).epsilon(1e-12));
    CHECK(hex_witness_quoted(bp.amplitude_A, p.alpha) < 0);
  }
  CHECK_THROWS_AS(hex_witness_quadrature(bifurcation_point({1, 0, 1, 0}), square_lattice(), 9),
                  SymmetryMismatch);
}

TEST_CASE("verdicts") {
  const StabilityReport a = stability_verdict({1.4, 0, 1, 5}, square_lattice(), Symmetry::Sigma2);
  CHECK(a.verdict == Verdict::Stable);
  CHECK(a.lambda0_positive);
  CHECK(a.gap_condition);
  CHECK(a.mu_min_nonneg);
  CHECK(a.threshold_beta == doctest::Approx(3.23316).epsilon(1e-5));
  CHECK(a.c_tilde > 0);

  const StabilityReport h = stability_verdict({1.4, 0, 1, 5}, hexagonal_lattice(), Symmetry::Sigma3);
  CHECK(h.verdict == Verdict::Unstable);
  CHECK(h.hex_witness < 0);

  CHECK(stability_verdict({1.4, 0, 1, 7}, square_lattice(), Symmetry::Sigma2).verdict ==
        Verdict::Unstable);
  // Gap fails on the square lattice at kappa = 1.4, beta = 2.
  CHECK_FALSE(stability_verdict({1.4, 0, 1, 2}, square_lattice(), Symmetry::Sigma2).gap_condition);
  CHECK(stability_verdict({1.0, 0, 1, 1}, square_lattice(), Symmetry::Sigma2).verdict ==
        Verdict::Unstable);
  CHECK(stability_verdict({1.0, 0, 1, 1}, square_lattice(), Symmetry::Sigma1).verdict ==
        Verdict::Stable);
  CHECK(stability_verdict({1.4, 0, 1, 5}, square_lattice(), Symmetry::Sigma1).verdict ==
        Verdict::Unstable);
  CHECK(stability_verdict({1.0, 0, 1, threshold_beta(1.0)}, square_lattice(), Symmetry::Sigma2)
            .verdict == Verdict::OutOfScope);
  CHECK(stability_verdict({1.4, 0, 1, 5}, make_lattice(1.5, 1.4), Symmetry::Sigma1).verdict ==
        Verdict::Stable);
  // Gap condition fails on the |tau| = 1.1 rectangle.
  const StabilityReport g = stability_verdict({1.4, 0, 1, 5}, make_lattice(1.1, kPi / 2), Symmetry::Sigma1);
  CHECK_FALSE(g.gap_condition);
  CHECK(g.verdict == Verdict::Unstable);
  REQUIRE(g.worst_mode.has_value());
  CHECK(g.worst_mode->norm == doctest::Approx(1.1));
  CHECK(stability_verdict({1.0, 0, 1, 2.5}, make_lattice(1.0, 1.2), Symmetry::Sigma2).verdict ==
        Verdict::OutOfScope);
  CHECK(stability_verdict({1.4, 0, 1, 5}, hexagonal_lattice(), Symmetry::Sigma1).verdict ==
        Verdict::Stable);
  CHECK(stability_verdict({1.4, 0, 1, 5}, hexagonal_lattice(), Symmetry::Sigma2).verdict ==
        Verdict::Unstable);
  CHECK(stability_verdict({0.4, 0, 1, 0}, make_lattice(1.5, 1.4), Symmetry::Sigma1).verdict ==
        Verdict::Unstable);
  CHECK_THROWS_AS(stability_verdict({1, 0, 1, 0}, square_lattice(), Symmetry::Sigma3),
                  SymmetryMismatch);
}

}
