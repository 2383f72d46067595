#include "commands.hpp"

#include "chiralmag/branch.hpp"
#include "chiralmag/field_io.hpp"
#include "chiralmag/flow.hpp"
#include "chiralmag/parallel.hpp"
#include "chiralmag/stability.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace chiralmag::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.precision(17);
  return os;
}

fs::path prepare_out(const RunSpec& spec) {
  fs::create_directories(spec.out);
  return spec.out;
}

void finish(const RunSpec& spec, const ResultList& results) {
  auto os = open_output(spec.out / "manifest.txt");
  write_manifest(os, spec, results);
}

std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

std::string wave_label(const WaveVector& w) {
  return "(" + std::to_string(w.k(0)) + "," + std::to_string(w.k(1)) + ")";
}

std::string lattice_label(const RunSpec& spec) {
  const LatticeClass c = classify(spec.lattice);
  std::ostringstream os;
  os << to_string(c.kind) << " (|tau| = " << format_number(spec.tau_abs)
     << ", theta = " << format_number(spec.theta_deg) << " deg)";
  return os.str();
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string lambda_input(const RunSpec& spec) {
  if (!spec.lambda.automatic) return format_number(spec.lambda.value);
  return "auto:" + format_number(spec.lambda.value);
}

void print_resolution(std::ostream& out, const LambdaResolution& r) {
  if (r.automatic) {
    out << "lambda = lambda0 + delta nu2 = " << format_number(r.lambda0) << " + "
        << format_number(r.delta) << " * (" << format_number(r.nu2) << ") = "
        << format_number(r.lambda) << "  [" << to_string(r.symmetry) << "]\n";
  } else {
    out << "lambda = " << format_number(r.lambda) << '\n';
  }
}

// The manifest records the resolved lambda, so a replay does not depend on
// how it was obtained.
RunSpec with_resolved_lambda(RunSpec spec, const LambdaResolution& r, ResultList& results) {
  if (r.automatic) {
    spec.values["lambda"] = format_number(r.lambda);
    results.emplace_back("lambda_input", lambda_input(spec));
  } else if (spec.physical) {
    results.emplace_back("kappa", format_number(spec.params.kappa));
    results.emplace_back("lambda", format_number(r.lambda));
    results.emplace_back("alpha", format_number(spec.params.alpha));
    results.emplace_back("beta", format_number(spec.params.beta));
  }
  if (r.automatic) {
    results.emplace_back("lambda0", format_number(r.lambda0));
    results.emplace_back("nu2", format_number(r.nu2));
    results.emplace_back("lambda_symmetry", std::string(to_string(r.symmetry)));
  }
  return spec;
}

// --- bifurcate ---------------------------------------------------------------

int cmd_bifurcate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const fs::path dir = prepare_out(spec);
  const ModelParams& p = spec.params;
  const double delta = spec.lambda.automatic ? spec.lambda.value : kDefaultDelta;
  const int kdim = kernel_dimension(spec.lattice);
  const auto symmetries = available_symmetries(spec.lattice);

  out << "lattice: " << lattice_label(spec) << '\n';
  out << "kappa = " << format_number(p.kappa) << ", alpha = " << format_number(p.alpha)
      << ", beta = " << format_number(p.beta) << '\n';
  out << "kernel dimension: " << kdim << '\n';

  auto csv = open_output(dir / "bifurcate.csv");
  csv << "root,symmetry,lambda0,amplitude_A,kernel_dim,resonant,near_resonant,nu2,delta,"
         "lambda_delta\n";
  ResultList results;
  for (RootSign sign : {RootSign::Plus, RootSign::Minus}) {
    BifurcationPoint bp = bifurcation_point(p, sign);
    bp.kernel_dim = kdim;
    const ResonanceReport res = check_resonance(bp, spec.lattice);
    bp.resonant = res.resonant;
    const std::string root(to_string(sign));
    out << "\nlambda0" << (sign == RootSign::Plus ? "+" : "-") << " = "
        << format_number(bp.lambda0) << ", A = " << format_number(bp.amplitude_A) << '\n';
    out << "  resonance: "
        << (res.resonant ? "RESONANT" : res.near_resonant ? "near-resonant" : "none")
        << " (min gap " << format_number(res.min_gap) << " at k = " << wave_label(res.closest)
        << ")" << (res.constant_mode_degenerate ? ", constant mode degenerate" : "") << '\n';
    results.emplace_back("lambda0_" + lower(root), format_number(bp.lambda0));
    results.emplace_back("amplitude_A_" + lower(root), format_number(bp.amplitude_A));
    results.emplace_back("resonant_" + lower(root), res.resonant ? "true" : "false");
    for (Symmetry sym : symmetries) {
      const KernelMode mode = build_mode(bp, spec.lattice, sym, kAnalysisGrid);
      const double nu2 = compute_nu2(mode, p);
      const double lam = bp.lambda0 + delta * nu2;
      out << "  nu2(" << to_string(sym) << ") = " << format_number(nu2) << ", lambda("
          << format_number(delta) << ") = " << format_number(lam) << '\n';
      csv << root << ',' << to_string(sym) << ',' << format_number(bp.lambda0) << ','
          << format_number(bp.amplitude_A) << ',' << kdim << ',' << res.resonant << ','
          << res.near_resonant << ',' << format_number(nu2) << ',' << format_number(delta) << ','
          << format_number(lam) << '\n';
      results.emplace_back("nu2_" + lower(root) + "_" + lower(to_string(sym)), format_number(nu2));
    }
  }
  const BifurcationPoint plus = bifurcation_point(p, RootSign::Plus);
  if (!(plus.lambda0 > 0)) {
    err << "warning: lambda0+ = " << format_number(plus.lambda0)
        << " is not positive (requires beta < 4 kappa^2 - 1 = "
        << format_number(4 * p.kappa * p.kappa - 1) << ")\n";
  }
  finish(spec, results);
  return kExitOk;
}

// --- modes -------------------------------------------------------------------

int cmd_modes(const RunSpec& spec, std::ostream& out, std::ostream&) {
  const fs::path dir = prepare_out(spec);
  const BifurcationPoint bp = bifurcation_point(spec.params, spec.root);
  std::vector<Symmetry> syms = spec.symmetry ? std::vector<Symmetry>{*spec.symmetry}
                                             : available_symmetries(spec.lattice);
  out << "lattice: " << lattice_label(spec) << '\n';
  out << "lambda0 = " << format_number(bp.lambda0) << ", A = " << format_number(bp.amplitude_A)
      << '\n';
  ResultList results;
  for (Symmetry sym : syms) {
    const KernelMode mode = build_mode(bp, spec.lattice, sym, spec.solver.n);
    const std::string name = lower(to_string(sym));
    const double nu2 = compute_nu2(mode, spec.params);
    out << to_string(sym) << ": wave vectors";
    for (const WaveVector& w : mode.wave_vectors) out << ' ' << wave_label(w);
    out << ", nu2 = " << format_number(nu2)
        << ", C = " << format_number(fixed_mode_curvature(mode)) << '\n';
    {
      auto os = open_output(dir / ("mode_" + name + ".csv"));
      write_field_csv(os, mode.field, spec.lattice);
    }
    {
      auto os = open_output(dir / ("mode_" + name + ".ppm"));
      write_field_ppm(os, mode.field);
    }
    results.emplace_back("nu2_" + name, format_number(nu2));
  }
  finish(spec, results);
  return kExitOk;
}

// --- stability ---------------------------------------------------------------

int cmd_stability(const RunSpec& spec, std::ostream& out, std::ostream&) {
  const fs::path dir = prepare_out(spec);
  const Symmetry sym = chosen_symmetry(spec);
  const StabilityReport r = stability_verdict(spec.params, spec.lattice, sym);

  const std::vector<std::pair<std::string, std::string>> rows = {
      {"symmetry", std::string(to_string(sym))},
      {"lambda0", format_number(r.lambda0)},
      {"amplitude_A", format_number(r.amplitude_A)},
      {"gamma", format_number(r.gamma)},
      {"lambda0_positive", r.lambda0_positive ? "true" : "false"},
      {"gap_condition", r.gap_condition ? "true" : "false"},
      {"mu_min", format_number(r.mu_min)},
      {"mu_min_nonneg", r.mu_min_nonneg ? "true" : "false"},
      {"worst_mode", r.worst_mode ? wave_label(*r.worst_mode) : "constant"},
      {"threshold_beta", format_number(r.threshold_beta)},
      {"c_tilde", format_number(r.c_tilde)},
      {"hex_witness", format_number(r.hex_witness)},
      {"verdict", std::string(to_string(r.verdict))},
      {"reason", r.reason},
  };
  out << "lattice: " << lattice_label(spec) << '\n';
  auto csv = open_output(dir / "stability.csv");
  csv << "key,value\n";
  for (const auto& [k, v] : rows) {
    out << k << ": " << v << '\n';
    csv << k << ',' << csv_quote(v) << '\n';
  }

  const L0Spectrum spectrum = l0_spectrum(spec.params, spec.lattice);
  auto sp = open_output(dir / "spectrum.csv");
  sp << "k1,k2,norm,mu_minus,mu_plus\n";
  sp << "0,0,0," << format_number(spectrum.constant_low) << ','
     << format_number(spectrum.constant_high) << '\n';
  for (const SpectrumEntry& e : spectrum.modes) {
    sp << e.omega.k(0) << ',' << e.omega.k(1) << ',' << format_number(e.omega.norm) << ','
       << format_number(e.mu_minus) << ',' << format_number(e.mu_plus) << '\n';
  }
  finish(spec, {{"verdict", std::string(to_string(r.verdict))}});
  return kExitOk;
}

// --- simulate ----------------------------------------------------------------

void write_fields(const fs::path& dir, const RealField& f, const ModelParams& p,
                  const LatticeSpec& lattice) {
  {
    auto os = open_output(dir / "field.csv");
    write_field_csv(os, f, lattice);
  }
  {
    auto os = open_output(dir / "field.ppm");
    write_field_ppm(os, f);
  }
  auto os = open_output(dir / "checkpoint.bin");
  write_checkpoint(os, f, p);
}

void add_classification(ResultList& results, const Classification& c) {
  results.emplace_back("pattern", std::string(to_string(c.pattern)));
  results.emplace_back("dominant_fraction", format_number(c.dominant_fraction));
  std::string modes;
  for (const DominantMode& m : c.dominant_modes) modes += (modes.empty() ? "" : " ") + wave_label(m.wave);
  results.emplace_back("dominant_modes", modes);
}

int cmd_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const fs::path dir = prepare_out(spec);
  const auto [p, res] = resolved_params(spec);
  ResultList results;
  const RunSpec echoed = with_resolved_lambda(spec, res, results);

  out << "lattice: " << lattice_label(spec) << '\n';
  print_resolution(out, res);

  std::optional<RealField> init;
  if (!spec.init.empty()) init = load_field(spec.init);

  StepObserver observer;
  if (spec.progress > 0) {
    observer = [&err, every = spec.progress](const TraceEntry& e, const RealField&) {
      if (e.step % every == 0)
        err << "step " << e.step << "  E = " << format_number(e.energy) << '\n';
    };
  }

  try {
    const FlowResult r = run(p, spec.lattice, spec.solver, std::move(init), observer);
    {
      auto os = open_output(dir / "energy_trace.csv");
      write_energy_trace(os, r.energy_trace);
    }
    write_fields(dir, r.final_state, p, spec.lattice);
    out << "termination: " << to_string(r.termination) << " after " << r.steps_taken
        << " steps\n";
    out << "energy: " << format_number(r.energy_trace.back().energy) << '\n';
    out << "pattern: " << to_string(r.classification.pattern) << " (dominant fraction "
        << format_number(r.classification.dominant_fraction) << ")\n";
    results.emplace_back("termination", std::string(to_string(r.termination)));
    results.emplace_back("steps", std::to_string(r.steps_taken));
    results.emplace_back("energy", format_number(r.energy_trace.back().energy));
    results.emplace_back("max_energy_law_residual", format_number(r.max_energy_law_residual));
    add_classification(results, r.classification);
    finish(echoed, results);
    return kExitOk;
  } catch (const FixedPointFailure& e) {
    auto os = open_output(dir / "energy_trace.csv");
    write_energy_trace(os, e.trace());
    err << "error: " << e.what() << " (step " << e.step() << ")\n";
    results.emplace_back("termination", std::string(to_string(Termination::FixedPointFailure)));
    results.emplace_back("failed_step", std::to_string(e.step()));
    finish(echoed, results);
    return kExitSolver;
  }
}

// --- classify ----------------------------------------------------------------

int cmd_classify(const RunSpec& spec, std::ostream& out, std::ostream&) {
  const fs::path dir = prepare_out(spec);
  const RealField f = load_field(spec.input);
  const Classification c = classify_pattern(f, spec.lattice);
  out << "pattern: " << to_string(c.pattern) << '\n';
  out << "non-constant energy: " << format_number(c.nondc_energy)
      << ", critical band: " << format_number(c.critical_energy)
      << ", beyond: " << format_number(c.high_energy) << '\n';
  auto csv = open_output(dir / "classify.csv");
  csv << "k1,k2,norm,amplitude,energy\n";
  for (const DominantMode& m : c.dominant_modes) {
    out << "  k = " << wave_label(m.wave) << ", |v| = " << format_number(m.wave.norm)
        << ", amplitude " << format_number(m.amplitude) << '\n';
    csv << m.wave.k(0) << ',' << m.wave.k(1) << ',' << format_number(m.wave.norm) << ','
        << format_number(m.amplitude) << ',' << format_number(m.energy) << '\n';
  }
  ResultList results;
  add_classification(results, c);
  finish(spec, results);
  return kExitOk;
}

// --- sweep -------------------------------------------------------------------

struct SweepRow {
  double kappa = 0.0;
  double beta = 0.0;
  double lambda = std::nan("");
  std::string status = "ok";
  std::string termination;
  long steps = 0;
  double energy = std::nan("");
  std::string pattern;
  double dominant_fraction = std::nan("");
  std::string message;
};

int cmd_sweep(const RunSpec& spec, std::ostream& out, std::ostream&) {
  const fs::path dir = prepare_out(spec);
  const std::vector<double> kappas = spec.kappas.empty() ? std::vector{spec.params.kappa} : spec.kappas;
  const std::vector<double> betas = spec.betas.empty() ? std::vector{spec.params.beta} : spec.betas;

  std::vector<SweepRow> rows;
  for (double k : kappas)
    for (double b : betas) {
      SweepRow& row = rows.emplace_back();
      row.kappa = k;
      row.beta = b;
    }

  parallel_for(rows.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    try {
      RunSpec point = spec;
      point.params.kappa = row.kappa;
      point.params.beta = row.beta;
      point.params.validate();
      const auto [p, res] = resolved_params(point);
      row.lambda = p.lambda;
      const FlowResult r = run(p, spec.lattice, spec.solver);
      row.termination = to_string(r.termination);
      row.steps = r.steps_taken;
      row.energy = r.energy_trace.back().energy;
      row.pattern = to_string(r.classification.pattern);
      row.dominant_fraction = r.classification.dominant_fraction;
    } catch (const FixedPointFailure& e) {
      row.status = "solver_failure";
      row.termination = to_string(Termination::FixedPointFailure);
      row.steps = e.step();
      row.message = e.what();
    } catch (const std::exception& e) {
      row.status = "invalid";
      row.message = e.what();
    }
  });

  auto csv = open_output(dir / "sweep.csv");
  csv << "index,kappa,beta,lambda,status,termination,steps,energy,pattern,dominant_fraction,"
         "message\n";
  long failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    failures += r.status != "ok";
    csv << i << ',' << format_number(r.kappa) << ',' << format_number(r.beta) << ','
        << format_number(r.lambda) << ',' << r.status << ',' << r.termination << ',' << r.steps
        << ',' << format_number(r.energy) << ',' << r.pattern << ','
        << format_number(r.dominant_fraction) << ',' << csv_quote(r.message) << '\n';
    out << format_number(r.kappa) << ' ' << format_number(r.beta) << ": "
        << (r.status == "ok" ? r.pattern : r.status) << '\n';
  }
  finish(spec, {{"points", std::to_string(rows.size())}, {"failures", std::to_string(failures)}});
  return kExitOk;
}

// --- phase-diagram -----------------------------------------------------------

struct PhaseRow {
  double kappa = 0.0;
  double beta = 0.0;
  double lambda0 = 0.0;
  double c_tilde = 0.0;
  bool admissible = false;
  std::string verdict;
};

int cmd_phase_diagram(const RunSpec& spec, std::ostream& out, std::ostream&) {
  const fs::path dir = prepare_out(spec);
  const Symmetry sym = chosen_symmetry(spec);
  std::vector<PhaseRow> rows;
  for (int i = 0; i < spec.kappa_axis.steps; ++i)
    for (int j = 0; j < spec.beta_axis.steps; ++j) {
      PhaseRow& row = rows.emplace_back();
      row.kappa = spec.kappa_axis.at(i);
      row.beta = spec.beta_axis.at(j);
    }

  parallel_for(rows.size(), [&](std::size_t i) {
    PhaseRow& row = rows[i];
    ModelParams p = spec.params;
    p.kappa = row.kappa;
    p.beta = row.beta;
    const BifurcationPoint bp = bifurcation_point(p);
    row.lambda0 = bp.lambda0;
    row.c_tilde = c_tilde_closed_form(bp.amplitude_A);
    row.admissible = admissible_region(row.kappa, row.beta);
    try {
      row.verdict = to_string(stability_verdict(p, spec.lattice, sym).verdict);
    } catch (const Error&) {
      row.verdict = "Error";
    }
  });

  auto csv = open_output(dir / "phase_diagram.csv");
  csv << "kappa,beta,lambda0,c_tilde,admissible,verdict\n";
  long admissible = 0;
  std::map<std::string, long> verdicts;
  for (const PhaseRow& r : rows) {
    admissible += r.admissible;
    ++verdicts[r.verdict];
    csv << format_number(r.kappa) << ',' << format_number(r.beta) << ','
        << format_number(r.lambda0) << ',' << format_number(r.c_tilde) << ','
        << (r.admissible ? 1 : 0) << ',' << r.verdict << '\n';
  }
  out << rows.size() << " points, " << admissible << " admissible; verdicts ("
      << to_string(sym) << "):";
  for (const auto& [v, count] : verdicts) out << ' ' << v << '=' << count;
  out << '\n';
  finish(spec, {{"points", std::to_string(rows.size())}, {"admissible", std::to_string(admissible)}});
  return kExitOk;
}

std::string flag_name(std::string_view key) {
  std::string s(key);
  for (char& c : s)
    if (c == '_') c = '-';
  return "--" + s;
}

}  // namespace

RealField load_field(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  char magic[4] = {};
  is.read(magic, 4);
  is.clear();
  is.seekg(0);
  if (std::equal(magic, magic + 4, kCheckpointMagic)) return read_checkpoint(is).field;
  return read_field_csv(is);
}

int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  switch (spec.command) {
    case Command::Bifurcate: return cmd_bifurcate(spec, out, err);
    case Command::Modes: return cmd_modes(spec, out, err);
    case Command::Stability: return cmd_stability(spec, out, err);
    case Command::Simulate: return cmd_simulate(spec, out, err);
    case Command::Sweep: return cmd_sweep(spec, out, err);
    case Command::Classify: return cmd_classify(spec, out, err);
    case Command::PhaseDiagram: return cmd_phase_diagram(spec, out, err);
  }
  return kExitUsage;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ginzburg-Landau analysis and gradient flow for planar chiral magnets",
               "chiralmag"};
  app.require_subcommand(1);

  struct Sub {
    Command command;
    CLI::App* app;
    std::string config;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  for (Command c : all_commands()) {
    auto sub = std::make_unique<Sub>();
    sub->command = c;
    sub->app = app.add_subcommand(std::string(to_string(c)));
    sub->app->add_option("--config", sub->config, "key = value file; flags override it");
    for (const OptionInfo& o : option_table()) {
      std::string help(o.help);
      if (!o.default_value.empty()) help += " [" + std::string(o.default_value) + "]";
      sub->options[std::string(o.key)] =
          sub->app->add_option(flag_name(o.key), sub->values[std::string(o.key)], help);
    }
    subs.push_back(std::move(sub));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto& sub : subs) {
    if (!sub->app->parsed()) continue;
    try {
      KeyValues file;
      if (!sub->config.empty()) file = read_config_file(sub->config);
      KeyValues overrides;
      for (const auto& [key, opt] : sub->options)
        if (opt->count() > 0) overrides[key] = sub->values[key];
      const RunSpec spec = resolve_run_spec(sub->command, file, overrides);
      return run_command(spec, out, err);
    } catch (const FixedPointFailure& e) {
      err << "error: " << e.what() << '\n';
      return kExitSolver;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return kExitUsage;
}

}  // namespace chiralmag::cli
