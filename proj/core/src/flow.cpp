#include "chiralmag/flow.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <tuple>

namespace chiralmag {

void SolverConfig::validate() const {
  if (n <= 0 || n % 2 == 0) throw SizeError("grid size must be odd and positive");
  if (!(dt > 0)) throw DomainError("dt must be positive");
  if (!(fp_tol > 0) || !(grad_tol > 0)) throw DomainError("tolerances must be positive");
  if (max_steps < 0) throw DomainError("max_steps must be non-negative");
  if (fp_max_iters <= 0) throw DomainError("fp_max_iters must be positive");
  if (!(init_modulus_max >= 0)) throw DomainError("init_modulus_max must be non-negative");
  if (!(guard_ratio >= 0)) throw DomainError("guard_ratio must be non-negative");
}

// ---------------------------------------------------------------------------
// Propagator

Propagator::Propagator(const ModelParams& p, const LatticeSpec& spec, int n, double dt)
    : n_(n), dt_(dt) {
  const std::size_t count = static_cast<std::size_t>(n) * n;
  forward_.resize(count);
  prop_.resize(count);
  res_.resize(count);
  min_eigenvalue_ = std::numeric_limits<double>::infinity();
  SpectralField layout(n);
  Eigen::SelfAdjointEigenSolver<Mat3c> eig;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::size_t idx = static_cast<std::size_t>(a) * n + b;
      const Mat3c M = linear_block(spec.dual_vector(layout.wavenumber(a), layout.wavenumber(b)), p);
      eig.compute(M);
      const Eigen::Vector3d mu = eig.eigenvalues();
      min_eigenvalue_ = std::min(min_eigenvalue_, mu.minCoeff());
      const Eigen::Vector3d denom = (1.0 + 0.5 * dt * mu.array()).matrix();
      if ((denom.array().abs() < 1e-12).any()) {
        throw DomainError("I + dt/2 L is singular; reduce dt");
      }
      const Mat3c& U = eig.eigenvectors();
      const Eigen::Vector3d r = denom.cwiseInverse();
      const Eigen::Vector3d q = ((1.0 - 0.5 * dt * mu.array()) * r.array()).matrix();
      forward_[idx] = Mat3c::Identity() + 0.5 * dt * M;
      res_[idx] = U * r.cast<std::complex<double>>().asDiagonal() * U.adjoint();
      prop_[idx] = U * q.cast<std::complex<double>>().asDiagonal() * U.adjoint();
    }
  }
}

std::shared_ptr<const Propagator> Propagator::get(const ModelParams& p, const LatticeSpec& spec,
                                                  int n, double dt) {
  using Key = std::tuple<double, double, double, double, double, double, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const Propagator>> cache;
  constexpr std::size_t kCapacity = 16;
  const Key key{p.kappa, p.lambda, p.beta, dt, spec.tau_abs, spec.theta, n};
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() >= kCapacity) cache.clear();
  auto prop = std::make_shared<const Propagator>(p, spec, n, dt);
  cache.emplace(key, prop);
  return prop;
}

void Propagator::propagate(const SpectralField& in, SpectralField& out) const {
  const auto src = in.values();
  const auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = prop_[i] * src[i];
}

void Propagator::resolve(const SpectralField& base, const SpectralField& in,
                         SpectralField& out) const {
  const auto b = base.values();
  const auto src = in.values();
  const auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = b[i] + dt_ * (res_[i] * src[i]);
}

SpectralField Propagator::resolvent(const SpectralField& g) const {
  SpectralField out(g.n());
  for (std::size_t i = 0; i < g.size(); ++i) out.values()[i] = res_[i] * g.values()[i];
  return out;
}

SpectralField Propagator::implicit_operator(const SpectralField& g) const {
  SpectralField out(g.n());
  for (std::size_t i = 0; i < g.size(); ++i) out.values()[i] = forward_[i] * g.values()[i];
  return out;
}

// ---------------------------------------------------------------------------
// Time stepping

RealField random_init(const SolverConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealField f(cfg.n);
  for (Vec3& m : f.values()) {
    const double z = 2.0 * unit(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const double r = cfg.init_modulus_max * unit(rng);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    m = r * Vec3(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return f;
}

StepResult step(const RealField& m, const ModelParams& p, const LatticeSpec& spec,
                const SolverConfig& cfg) {
  const int n = m.n();
  const auto prop = Propagator::get(p, spec, n, cfg.dt);
  const auto plan = FourierPlan::get(n);

  SpectralField base = to_spectral(m);
  prop->propagate(base, base);

  RealField cur = m;
  RealField next(n);
  RealField nonlinear(n);
  SpectralField nonlinear_hat(n);
  SpectralField next_hat(n);
  const auto w = m.values();
  for (int it = 1; it <= cfg.fp_max_iters; ++it) {
    const auto u = cur.values();
    const auto out = nonlinear.values();
    for (std::size_t i = 0; i < u.size(); ++i) {
      out[i] = (-p.alpha / 4 * (u[i].squaredNorm() + w[i].squaredNorm())) * (u[i] + w[i]);
    }
    plan->forward(nonlinear.values().data(), nonlinear_hat.values().data());
    prop->resolve(base, nonlinear_hat, next_hat);
    plan->backward(next_hat.values().data(), next.values().data());
    const double diff = sup_norm(next - cur);
    std::swap(cur, next);
    if (!std::isfinite(diff)) break;
    if (diff < cfg.fp_tol) return {std::move(cur), it};
  }
  throw FixedPointFailure("fixed-point iteration did not converge; reduce dt", 0);
}

double energy_law_residual(const RealField& before, const RealField& after, const ModelParams& p,
                           const LatticeSpec& spec, double dt) {
  const RealField d = after - before;
  return discrete_dot(d, d) / dt + energy(after, p, spec) - energy(before, p, spec);
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::EnergySlope: return "EnergySlope";
    case Termination::MaxSteps: return "MaxSteps";
    case Termination::FixedPointFailure: return "FixedPointFailure";
  }
  return "unknown";
}

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::Homogeneous: return "Homogeneous";
    case Pattern::Helical: return "Helical";
    case Pattern::VortexAntivortex: return "VortexAntivortex";
    case Pattern::Skyrmion: return "Skyrmion";
    case Pattern::Stripe: return "Stripe";
    case Pattern::Unclassified: return "Unclassified";
  }
  return "unknown";
}

Classification classify_pattern(const RealField& f, const LatticeSpec& spec) {
  constexpr double kBandSlack = 1e-9;
  const SpectralField g = to_spectral(f);
  Classification c;

  double total = 0.0;
  std::map<std::pair<int, int>, DominantMode> pairs;
  g.for_each_mode([&](int k1, int k2, const CVec3& coef) {
    const double e = coef.squaredNorm();
    total += e;
    if (k1 == 0 && k2 == 0) return;
    c.nondc_energy += e;
    const double norm = spec.dual_vector(k1, k2).norm();
    if (norm > kCriticalBandHigh + kBandSlack) {
      c.high_energy += e;
      return;
    }
    if (norm < kCriticalBandLow - kBandSlack) return;
    c.critical_energy += e;
    const bool positive = k1 > 0 || (k1 == 0 && k2 > 0);
    const std::pair<int, int> rep = positive ? std::pair{k1, k2} : std::pair{-k1, -k2};
    DominantMode& d = pairs[rep];
    d.wave = make_wave_vector(spec, rep.first, rep.second);
    d.amplitude += coef.cwiseAbs().sum();
    d.energy += e;
  });

  if (total == 0.0 || c.nondc_energy < kHomogeneousRatio * total) {
    c.pattern = Pattern::Homogeneous;
    return c;
  }

  double max_amp = 0.0;
  for (const auto& [k, d] : pairs) max_amp = std::max(max_amp, d.amplitude);
  double dominant = 0.0;
  for (const auto& [k, d] : pairs) {
    if (max_amp > 0 && d.amplitude >= kDominantRatio * max_amp) {
      c.dominant_modes.push_back(d);
      dominant += d.energy;
    }
  }
  std::sort(c.dominant_modes.begin(), c.dominant_modes.end(),
            [](const DominantMode& a, const DominantMode& b) { return a.amplitude > b.amplitude; });
  c.dominant_fraction = dominant / c.nondc_energy;

  if (c.high_energy > c.critical_energy) {
    c.pattern = Pattern::Stripe;
  } else {
    switch (c.dominant_modes.size()) {
      case 1: c.pattern = Pattern::Helical; break;
      case 2: c.pattern = Pattern::VortexAntivortex; break;
      case 3: c.pattern = Pattern::Skyrmion; break;
      default: c.pattern = Pattern::Unclassified; break;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Driver

FlowResult run(const ModelParams& p, const LatticeSpec& spec, const SolverConfig& cfg,
               std::optional<RealField> init, const StepObserver& observer) {
  p.validate();
  cfg.validate();
  RealField m = init ? std::move(*init) : random_init(cfg);
  if (m.n() != cfg.n) throw SizeError("initial field does not match the configured grid size");

  const double mu_min = Propagator::get(p, spec, cfg.n, cfg.dt)->min_eigenvalue();
  const auto in_linear_regime = [&](const RealField& f) {
    if (!cfg.linear_regime_guard || mu_min >= 0) return false;
    const double s = sup_norm(f);
    return p.alpha * s * s < cfg.guard_ratio * std::abs(mu_min);
  };

  FlowResult result;
  double e = energy(m, p, spec);
  result.energy_trace.push_back({0, 0.0, e, 0});
  if (observer) observer(result.energy_trace.back(), m);

  for (long k = 1; k <= cfg.max_steps; ++k) {
    StepResult r;
    try {
      r = step(m, p, spec, cfg);
    } catch (const FixedPointFailure& err) {
      throw FixedPointFailure(err.what(), k, result.energy_trace);
    }
    const RealField d = r.next - m;
    const double e_next = energy(r.next, p, spec);
    result.max_energy_law_residual = std::max(
        result.max_energy_law_residual, std::abs(discrete_dot(d, d) / cfg.dt + e_next - e));
    result.energy_trace.push_back({k, k * cfg.dt, e_next, r.fp_iters});
    result.steps_taken = k;
    if (observer) observer(result.energy_trace.back(), r.next);

    const double slope = (e - e_next) / cfg.dt;
    m = std::move(r.next);
    e = e_next;
    if (slope < cfg.grad_tol && !in_linear_regime(m)) {
      result.termination = Termination::EnergySlope;
      break;
    }
  }
  if (result.termination != Termination::EnergySlope) result.termination = Termination::MaxSteps;
  result.classification = classify_pattern(m, spec);
  result.final_state = std::move(m);
  return result;
}

}  // namespace chiralmag
