#include "chiralmag/field.hpp"

#include "chiralmag/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace chiralmag {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_same_size(int a, int b) {
  if (a != b) throw SizeError("grid sizes do not match");
}

void require_odd(int n) {
  if (n < 1 || n % 2 == 0) {
    std::ostringstream msg;
    msg << "grid size " << n << " must be odd and positive";
    throw SizeError(msg.str());
  }
}

}  // namespace

void ModelParams::validate() const {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(beta >= 0.0)) throw DomainError("beta must be non-negative");
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
}

ModelParams ModelParams::with_lambda(double value) const {
  ModelParams out = *this;
  out.lambda = value;
  return out;
}

ModelParams nondimensionalize(const PhysicalParams& phys) {
  if (!(phys.exchange > 0.0)) throw DomainError("exchange constant A must be positive");
  if (!(phys.length_scale > 0.0)) throw DomainError("length scale r must be positive");
  if (!(phys.landau_a > 0.0) || !(phys.landau_b > 0.0)) {
    throw DomainError("Landau coefficients a, b must be positive");
  }
  const double A = phys.exchange;
  const double r = phys.length_scale;
  ModelParams p;
  p.kappa = phys.dmi * r / (2.0 * A);
  p.lambda = phys.landau_a * phys.temperature_offset * r * r / A;
  p.alpha = 2.0 * phys.landau_b * r * r / A;
  p.beta = phys.anisotropy * r * r / A;
  return p;
}

// --- RealField -------------------------------------------------------------

RealField::RealField(int n) : n_(n) {
  require_odd(n);
  data_.assign(static_cast<std::size_t>(n) * n, Vec3::Zero());
}

RealField& RealField::operator+=(const RealField& other) {
  require_same_size(n_, other.n_);
  for (std::size_t p = 0; p < data_.size(); ++p) data_[p] += other.data_[p];
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  require_same_size(n_, other.n_);
  for (std::size_t p = 0; p < data_.size(); ++p) data_[p] -= other.data_[p];
  return *this;
}

RealField& RealField::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double s, RealField a) { return a *= s; }

// --- SpectralField ---------------------------------------------------------

SpectralField::SpectralField(int n) : n_(n) {
  require_odd(n);
  coeffs_.assign(static_cast<std::size_t>(n) * n, CVec3::Zero());
}

std::size_t SpectralField::storage_index(int k1, int k2) const {
  const int K = max_wavenumber();
  if (std::abs(k1) > K || std::abs(k2) > K) throw SizeError("wavenumber out of range");
  const int a = k1 < 0 ? k1 + n_ : k1;
  const int b = k2 < 0 ? k2 + n_ : k2;
  return static_cast<std::size_t>(a) * n_ + b;
}

SpectralField to_spectral(const RealField& f) {
  SpectralField g(f.n());
  FourierPlan::get(f.n())->forward(f.values().data(), g.values().data());
  return g;
}

RealField to_real(const SpectralField& g) {
  RealField f(g.n());
  FourierPlan::get(g.n())->backward(g.values().data(), f.values().data());
  return f;
}

// --- operators -------------------------------------------------------------

SpectralField curl2d(const SpectralField& g, const LatticeSpec& spec) {
  SpectralField out(g.n());
  g.for_each_mode([&](int k1, int k2, const CVec3& m) {
    const Eigen::Vector2d v = spec.dual_vector(k1, k2);
    out.at(k1, k2) = CVec3(kI * v(1) * m(2), -kI * v(0) * m(2),
                           kI * (v(0) * m(1) - v(1) * m(0)));
  });
  return out;
}

Mat3c linear_block(const Eigen::Vector2d& v, const ModelParams& p) {
  const double d = v.squaredNorm() + p.lambda;
  const std::complex<double> c1 = 2.0 * p.kappa * kI * v(0);
  const std::complex<double> c2 = 2.0 * p.kappa * kI * v(1);
  Mat3c M;
  M << d,    0.0, c2,
       0.0,  d,   -c1,
       -c2,  c1,  d + p.beta;
  return M;
}

SpectralField apply_linear(const SpectralField& g, const ModelParams& p,
                           const LatticeSpec& spec) {
  SpectralField out(g.n());
  g.for_each_mode([&](int k1, int k2, const CVec3& m) {
    out.at(k1, k2) = linear_block(spec.dual_vector(k1, k2), p) * m;
  });
  return out;
}

RealField apply_linear(const RealField& f, const ModelParams& p, const LatticeSpec& spec) {
  return to_real(apply_linear(to_spectral(f), p, spec));
}

RealField el_residual(const RealField& f, const ModelParams& p, const LatticeSpec& spec) {
  RealField out = apply_linear(f, p, spec);
  auto src = f.values();
  auto dst = out.values();
  for (std::size_t q = 0; q < src.size(); ++q) {
    dst[q] += p.alpha * src[q].squaredNorm() * src[q];
  }
  return out;
}

// --- discrete products -----------------------------------------------------

double discrete_dot(const RealField& u, const RealField& w) {
  require_same_size(u.n(), w.n());
  auto a = u.values();
  auto b = w.values();
  double sum = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) sum += a[q].dot(b[q]);
  return sum / static_cast<double>(a.size());
}

double discrete_norm(const RealField& u) { return std::sqrt(discrete_dot(u, u)); }

double sup_norm(const RealField& u) {
  double m = 0.0;
  for (const auto& v : u.values()) {
    if (!v.allFinite()) return std::numeric_limits<double>::infinity();
    m = std::max(m, v.cwiseAbs().maxCoeff());
  }
  return m;
}

double mean_power(const RealField& u, int p) {
  double sum = 0.0;
  for (const auto& v : u.values()) sum += std::pow(v.squaredNorm(), 0.5 * p);
  return sum / static_cast<double>(u.size());
}

double quadratic_form(const SpectralField& g, const ModelParams& p, const LatticeSpec& spec) {
  double sum = 0.0;
  g.for_each_mode([&](int k1, int k2, const CVec3& m) {
    sum += m.dot(linear_block(spec.dual_vector(k1, k2), p) * m).real();
  });
  return sum;
}

double quadratic_form(const RealField& f, const ModelParams& p, const LatticeSpec& spec) {
  return quadratic_form(to_spectral(f), p, spec);
}

double energy(const RealField& f, const ModelParams& p, const LatticeSpec& spec) {
  return 0.5 * quadratic_form(f, p, spec) + 0.25 * p.alpha * mean_power(f, 4);
}

// --- helix -----------------------------------------------------------------

bool lattice_accommodates_helix(double kappa, const LatticeSpec& spec) {
  // Basis vectors have x1-components 2 pi / Im tau and 2 pi Re tau / Im tau.
  auto integral = [](double x) { return std::abs(x - std::round(x)) <= 1e-9; };
  return integral(kappa / spec.im_tau()) && integral(kappa * spec.re_tau() / spec.im_tau());
}

RealField helix_field(const ModelParams& p, const LatticeSpec& spec, int n) {
  if (!(p.lambda < p.kappa * p.kappa)) {
    throw ZeroAmplitude("helix requires lambda < kappa^2");
  }
  if (!lattice_accommodates_helix(p.kappa, spec)) {
    std::ostringstream msg;
    msg << "helix of pitch 2 pi / " << p.kappa << " is not periodic on this lattice";
    throw IncompatibleLattice(msg.str());
  }
  const double M = std::sqrt((p.kappa * p.kappa - p.lambda) / p.alpha);
  return sample_field(spec, n, [&](const Eigen::Vector2d& x) {
    return Vec3(0.0, M * std::cos(p.kappa * x(0)), M * std::sin(p.kappa * x(0)));
  });
}

}  // namespace chiralmag
