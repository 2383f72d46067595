#pragma once

// L2 gradient flow dm/dt = -F(m, lambda) discretized by a modified Crank-Nicolson
// scheme with Fourier collocation:
//   (m+ - m)/dt + L (m+ + m)/2 = N(m+, m),  N(u, w) = -alpha (u + w)/4 (|u|^2 + |w|^2),
// solved for m+ by fixed-point iteration. The scheme dissipates E_N exactly:
//   |m+ - m|^2 / dt + E_N(m+) = E_N(m).

#include "chiralmag/errors.hpp"
#include "chiralmag/field.hpp"
#include "chiralmag/field_io.hpp"
#include "chiralmag/lattice.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace chiralmag {

struct SolverConfig {
  int n = 275;
  double dt = 0.1;
  double fp_tol = 1e-8;
  double grad_tol = 1e-7;
  long max_steps = 20000;
  int fp_max_iters = 200;
  std::uint64_t seed = 1;
  double init_modulus_max = 0.1;
  /// Suppress the energy-slope stop while the field is still a small
  /// perturbation of an unstable trivial state.
  bool linear_regime_guard = true;
  /// The field counts as small while alpha max|m|^2 < guard_ratio |mu_min|.
  double guard_ratio = 0.1;

  /// Throws DomainError / SizeError.
  void validate() const;
};

/// The fixed-point iteration did not converge; carries the trace so far.
class FixedPointFailure : public Error {
 public:
  FixedPointFailure(const std::string& what, long step, std::vector<TraceEntry> trace = {})
      : Error(what), step_(step), trace_(std::move(trace)) {}
  long step() const { return step_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  long step_;
  std::vector<TraceEntry> trace_;
};

/// Per-mode blocks P = (I + dt/2 M)^{-1} (I - dt/2 M) and R = (I + dt/2 M)^{-1}.
class Propagator {
 public:
  /// Cached by (kappa, lambda, beta, dt, lattice, n); safe for concurrent use.
  static std::shared_ptr<const Propagator> get(const ModelParams& p, const LatticeSpec& spec,
                                               int n, double dt);

  Propagator(const ModelParams& p, const LatticeSpec& spec, int n, double dt);

  int n() const { return n_; }
  double dt() const { return dt_; }
  /// Smallest eigenvalue of L over all grid modes (including the constant mode).
  double min_eigenvalue() const { return min_eigenvalue_; }

  /// out = P in (mode by mode); out may alias in.
  void propagate(const SpectralField& in, SpectralField& out) const;
  /// out = base + dt R in.
  void resolve(const SpectralField& base, const SpectralField& in, SpectralField& out) const;
  /// (I + dt/2 L)^{-1} g.
  SpectralField resolvent(const SpectralField& g) const;
  /// (I + dt/2 L) g.
  SpectralField implicit_operator(const SpectralField& g) const;

 private:
  int n_;
  double dt_;
  double min_eigenvalue_ = 0.0;
  std::vector<Mat3c> forward_;  // I + dt/2 M
  std::vector<Mat3c> prop_;
  std::vector<Mat3c> res_;
};

/// Direction uniform on the sphere, modulus uniform on [0, init_modulus_max].
RealField random_init(const SolverConfig& cfg);

struct StepResult {
  RealField next{1};
  int fp_iters = 0;
};

/// One time step. Throws FixedPointFailure after cfg.fp_max_iters iterations.
StepResult step(const RealField& m, const ModelParams& p, const LatticeSpec& spec,
                const SolverConfig& cfg);

/// |m+ - m|^2_N / dt + E_N(m+) - E_N(m).
double energy_law_residual(const RealField& before, const RealField& after, const ModelParams& p,
                           const LatticeSpec& spec, double dt);

enum class Termination { EnergySlope, MaxSteps, FixedPointFailure };
enum class Pattern { Homogeneous, Helical, VortexAntivortex, Skyrmion, Stripe, Unclassified };

std::string_view to_string(Termination t);
std::string_view to_string(Pattern p);

struct DominantMode {
  WaveVector wave;  ///< representative of the +- pair
  double amplitude = 0.0;
  double energy = 0.0;
};

inline constexpr double kCriticalBandLow = 0.9;
inline constexpr double kCriticalBandHigh = 1.1;
inline constexpr double kDominantRatio = 0.2;
inline constexpr double kHomogeneousRatio = 1e-6;

struct Classification {
  Pattern pattern = Pattern::Unclassified;
  std::vector<DominantMode> dominant_modes;
  double nondc_energy = 0.0;
  double critical_energy = 0.0;  ///< within the critical band
  double high_energy = 0.0;      ///< beyond the critical band
  double dominant_fraction = 0.0;  ///< dominant pairs / non-constant energy
};

/// Spectral pattern classification. A pair's amplitude is the sum over
/// components of |m~(k)| + |m~(-k)|; energies are sums of |m~(k)|^2.
Classification classify_pattern(const RealField& f, const LatticeSpec& spec);

struct FlowResult {
  RealField final_state{1};
  std::vector<TraceEntry> energy_trace;  ///< entry 0 is the initial state
  long steps_taken = 0;
  Termination termination = Termination::MaxSteps;
  Classification classification;
  double max_energy_law_residual = 0.0;
};

using StepObserver = std::function<void(const TraceEntry&, const RealField&)>;

/// Runs until (E_n - E_{n+1}) / dt < grad_tol or max_steps. Starts from
/// random_init(cfg) when init is empty. Throws FixedPointFailure with the
/// trace attached.
FlowResult run(const ModelParams& p, const LatticeSpec& spec, const SolverConfig& cfg,
               std::optional<RealField> init = std::nullopt, const StepObserver& observer = {});

}  // namespace chiralmag
