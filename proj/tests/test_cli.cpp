#include "commands.hpp"
#include "run_spec.hpp"

#include "chiralmag/field_io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace chiralmag;
using namespace chiralmag::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("chiralmag_cli_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "chiralmag");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream is(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

KeyValues kv(std::initializer_list<std::pair<const std::string, std::string>> init) {
  return KeyValues(init);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
  std::istringstream is(
      "# comment\n"
      "  kappa = 1.4   # trailing\n"
      "\n"
      "beta=5\n"
      "result.pattern = Helical\n"
      "command = simulate\n");
  const KeyValues v = parse_config(is);
  CHECK(v.size() == 3);
  CHECK(v.at("kappa") == "1.4");
  CHECK(v.at("beta") == "5");
  CHECK(v.at("command") == "simulate");

  std::istringstream unknown("kapa = 1\n");
  CHECK_THROWS_AS(parse_config(unknown), UsageError);
  std::istringstream repeated("kappa = 1\nkappa = 2\n");
  CHECK_THROWS_AS(parse_config(repeated), UsageError);
  std::istringstream malformed("kappa 1\n");
  CHECK_THROWS_AS(parse_config(malformed), UsageError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/chiralmag.cfg"), UsageError);
}

TEST_CASE("value parsing") {
  CHECK(parse_double("x", " 0.25 ") == 0.25);
  CHECK_THROWS_AS(parse_double("x", "0.25abc"), UsageError);
  CHECK_THROWS_AS(parse_double("x", ""), UsageError);
  CHECK_THROWS_AS(parse_double("x", "nan"), UsageError);
  CHECK(parse_long("x", "-3") == -3);
  CHECK_THROWS_AS(parse_long("x", "1.5"), UsageError);
  CHECK(parse_bool("x", "off") == false);
  CHECK_THROWS_AS(parse_bool("x", "maybe"), UsageError);
  CHECK(parse_list("x", "0.6,0.8,1.4") == std::vector<double>{0.6, 0.8, 1.4});

  const LambdaSpec a = parse_lambda("auto");
  CHECK(a.automatic);
  CHECK(a.value == 0.01);
  const LambdaSpec b = parse_lambda("auto:0.05");
  CHECK(b.automatic);
  CHECK(b.value == 0.05);
  const LambdaSpec c = parse_lambda("0.2412");
  CHECK_FALSE(c.automatic);
  CHECK(c.value == 0.2412);
  CHECK_THROWS_AS(parse_lambda("automatic"), UsageError);

  CHECK(parse_symmetry("sigma3") == Symmetry::Sigma3);
  CHECK_THROWS_AS(parse_symmetry("sigma4"), UsageError);
  CHECK(parse_root("minus") == RootSign::Minus);
  CHECK(parse_command("phase-diagram") == Command::PhaseDiagram);
  CHECK_FALSE(parse_command("plot").has_value());
}

TEST_CASE("defaults agree with the library") {
  const RunSpec spec = resolve_run_spec(Command::Simulate, {}, kv({{"kappa", "1"}}));
  const SolverConfig lib;
  CHECK(spec.solver.n == lib.n);
  CHECK(spec.solver.dt == lib.dt);
  CHECK(spec.solver.fp_tol == lib.fp_tol);
  CHECK(spec.solver.grad_tol == lib.grad_tol);
  CHECK(spec.solver.max_steps == lib.max_steps);
  CHECK(spec.solver.fp_max_iters == lib.fp_max_iters);
  CHECK(spec.solver.seed == lib.seed);
  CHECK(spec.solver.init_modulus_max == lib.init_modulus_max);
  CHECK(spec.solver.linear_regime_guard == lib.linear_regime_guard);
  CHECK(spec.solver.guard_ratio == lib.guard_ratio);
  const ModelParams mp;
  CHECK(spec.params.alpha == mp.alpha);
  CHECK(spec.params.beta == mp.beta);
  CHECK(spec.lambda.automatic);
  CHECK(spec.lambda.value == kDefaultDelta);
  CHECK(classify(spec.lattice).kind == LatticeKind::Square);
}

TEST_CASE("layering and validation") {
  const KeyValues file = kv({{"kappa", "1.4"}, {"beta", "5"}, {"n", "81"}});
  const RunSpec spec = resolve_run_spec(Command::Simulate, file, kv({{"beta", "2"}}));
  CHECK(spec.params.kappa == 1.4);
  CHECK(spec.params.beta == 2);
  CHECK(spec.solver.n == 81);
  CHECK(spec.explicit_keys.count("n") == 1);
  CHECK(spec.explicit_keys.count("dt") == 0);

  // Preset from a higher layer replaces tau/theta from a lower one.
  const RunSpec hex = resolve_run_spec(Command::Modes, kv({{"kappa", "1"}, {"theta", "80"}}),
                                       kv({{"lattice", "hexagonal"}}));
  CHECK(classify(hex.lattice).kind == LatticeKind::Hexagonal);
  CHECK(hex.values.at("theta") == "60");
  CHECK_THROWS_AS(resolve_run_spec(Command::Modes, {},
                                   kv({{"kappa", "1"}, {"lattice", "square"}, {"theta", "60"}})),
                  UsageError);
  CHECK_THROWS_AS(resolve_run_spec(Command::Modes, {}, kv({{"kappa", "1"}, {"lattice", "cubic"}})),
                  UsageError);

  CHECK_THROWS_AS(resolve_run_spec(Command::Simulate, kv({{"command", "sweep"}, {"kappa", "1"}}), {}),
                  UsageError);
  CHECK_THROWS_AS(resolve_run_spec(Command::Bifurcate, {}, {}), UsageError);
  CHECK_NOTHROW(resolve_run_spec(Command::Classify, {}, kv({{"input", "x.csv"}})));
  CHECK_THROWS_AS(resolve_run_spec(Command::Classify, {}, {}), UsageError);
  CHECK_THROWS_AS(resolve_run_spec(Command::Bifurcate, {}, kv({{"kappa", "-1"}})), DomainError);
  CHECK_THROWS_AS(resolve_run_spec(Command::Bifurcate, {}, kv({{"kappa", "1"}, {"n", "80"}})),
                  SizeError);
  CHECK_THROWS_AS(
      resolve_run_spec(Command::Bifurcate, {}, kv({{"kappa", "1"}, {"theta", "20"}})),
      DomainError);
  CHECK_THROWS_AS(resolve_run_spec(Command::Bifurcate, {}, kv({{"kappa", "1"}, {"dmi", "2"}})),
                  UsageError);
  CHECK_THROWS_AS(resolve_run_spec(Command::Sweep, {}, kv({{"kappa", "1"}})), UsageError);
  CHECK_THROWS_AS(resolve_run_spec(Command::PhaseDiagram, {},
                                   kv({{"kappa", "1"}, {"kappa_min", "2"}, {"kappa_max", "1"}})),
                  UsageError);
}

TEST_CASE("physical units") {
  const KeyValues phys = kv({{"units", "physical"},
                             {"exchange", "2"},
                             {"dmi", "4"},
                             {"landau_a", "1"},
                             {"landau_b", "0.5"},
                             {"anisotropy", "3"},
                             {"temperature_offset", "-1"},
                             {"length_scale", "1"}});
  const RunSpec spec = resolve_run_spec(Command::Simulate, phys, {});
  // kappa = D r / (2A), lambda = a (T - Tc) r^2 / A, alpha = 2 b r^2 / A, beta = K r^2 / A.
  CHECK(spec.params.kappa == doctest::Approx(1.0));
  CHECK(spec.params.lambda == doctest::Approx(-0.5));
  CHECK(spec.params.alpha == doctest::Approx(0.5));
  CHECK(spec.params.beta == doctest::Approx(1.5));
  CHECK_FALSE(spec.lambda.automatic);
  CHECK(spec.values.count("kappa") == 0);
  CHECK(spec.values.count("lambda") == 0);
  CHECK_THROWS_AS(resolve_run_spec(Command::Simulate, phys, kv({{"beta", "1"}})), UsageError);
}

TEST_CASE("auto lambda") {
  const RunSpec spec = resolve_run_spec(Command::Simulate, {}, kv({{"kappa", "0.6"}}));
  const auto [p, r] = resolved_params(spec);
  CHECK(r.automatic);
  CHECK(r.symmetry == Symmetry::Sigma2);
  CHECK(r.lambda0 == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(r.nu2 == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(std::abs(p.lambda - 0.1875) < 1e-14);

  const RunSpec s1 =
      resolve_run_spec(Command::Simulate, {}, kv({{"kappa", "0.6"}, {"symmetry", "sigma1"}}));
  CHECK(resolved_params(s1).first.lambda == doctest::Approx(0.2 - 0.01));
  const RunSpec bad =
      resolve_run_spec(Command::Simulate, {}, kv({{"kappa", "0.6"}, {"symmetry", "sigma3"}}));
  CHECK_THROWS_AS(resolved_params(bad), SymmetryMismatch);

  const RunSpec fixed =
      resolve_run_spec(Command::Simulate, {}, kv({{"kappa", "1.4"}, {"lambda", "0.2412"}}));
  CHECK(resolved_params(fixed).first.lambda == 0.2412);
}

TEST_CASE("manifest round trip") {
  const RunSpec spec = resolve_run_spec(
      Command::Simulate, kv({{"kappa", "1.4"}, {"beta", "5"}}),
      kv({{"seed", "7"}, {"tau_abs", "1.1"}, {"out", "/tmp/x"}, {"lambda", "0.2412"}}));
  std::ostringstream os;
  write_manifest(os, spec, {{"pattern", "Helical"}});
  const std::string text = os.str();
  CHECK(text.find("seed = 7\n") != std::string::npos);
  CHECK(text.find("dt = 0.1\n") != std::string::npos);
  CHECK(text.find("result.pattern = Helical\n") != std::string::npos);

  std::istringstream is(text);
  const KeyValues back = parse_config(is);
  const RunSpec again = resolve_run_spec(Command::Simulate, back, {});
  CHECK(again.values == spec.values);
  CHECK(again.params.kappa == spec.params.kappa);
  CHECK(again.lattice.tau_abs == spec.lattice.tau_abs);
  CHECK(again.solver.seed == 7);
}

TEST_CASE("bifurcate command") {
  TempDir tmp;
  const auto r = invoke({"bifurcate", "--kappa", "0.6", "--beta", "0", "--lattice", "square",
                         "--out", tmp.path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("lambda0+ = 0.19999999999999996") != std::string::npos);
  const auto rows = read_csv(tmp.path / "bifurcate.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "root");
  bool found = false;
  for (const auto& row : rows) {
    if (row[0] == "plus" && row[1] == "Sigma2") {
      found = true;
      CHECK(std::stod(row[2]) == doctest::Approx(0.2));
      CHECK(std::stod(row[7]) == doctest::Approx(-1.25));
      CHECK(std::stod(row[9]) == doctest::Approx(0.1875).epsilon(1e-14));
    }
  }
  CHECK(found);
  CHECK(fs::exists(tmp.path / "manifest.txt"));

  const auto warn = invoke({"bifurcate", "--kappa", "1.4", "--beta", "7", "--out", tmp.path.string()});
  CHECK(warn.code == kExitOk);
  CHECK(warn.err.find("warning: lambda0+ = -0.0178") != std::string::npos);

  CHECK(invoke({"bifurcate", "--beta", "0", "--out", tmp.path.string()}).code == kExitUsage);
  CHECK(invoke({"bifurcate", "--kappa", "1", "--no-such-flag", "2"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"bifurcate", "--help"}).code == kExitOk);
}

TEST_CASE("simulate writes artifacts and replays bit-exactly") {
  TempDir tmp;
  const fs::path a = tmp.path / "a";
  const fs::path b = tmp.path / "b";
  const auto r = invoke({"simulate", "--kappa", "1.4", "--beta", "5", "--n", "15", "--max-steps",
                         "25", "--seed", "3", "--out", a.string()});
  REQUIRE(r.code == kExitOk);
  for (const char* f : {"energy_trace.csv", "field.csv", "field.ppm", "checkpoint.bin", "manifest.txt"})
    CHECK(fs::exists(a / f));
  const std::string manifest = slurp(a / "manifest.txt");
  CHECK(manifest.find("seed = 3\n") != std::string::npos);
  CHECK(manifest.find("result.lambda_input = auto:0.01") != std::string::npos);
  CHECK(manifest.find("result.pattern = ") != std::string::npos);
  CHECK(read_csv(a / "energy_trace.csv").size() == 27);

  const auto replay = invoke({"simulate", "--config", (a / "manifest.txt").string(), "--out", b.string()});
  REQUIRE(replay.code == kExitOk);
  CHECK(slurp(a / "checkpoint.bin") == slurp(b / "checkpoint.bin"));
  CHECK(slurp(a / "energy_trace.csv") == slurp(b / "energy_trace.csv"));
  CHECK(slurp(a / "field.csv") == slurp(b / "field.csv"));

  // Restart from the checkpoint.
  const auto restart = invoke({"simulate", "--kappa", "1.4", "--beta", "5", "--n", "15",
                               "--max-steps", "1", "--init", (a / "checkpoint.bin").string(),
                               "--out", (tmp.path / "c").string()});
  CHECK(restart.code == kExitOk);
  const auto wrong_n = invoke({"simulate", "--kappa", "1.4", "--n", "17", "--init",
                               (a / "checkpoint.bin").string(), "--out", (tmp.path / "d").string()});
  CHECK(wrong_n.code == kExitUsage);
}

TEST_CASE("simulate solver failure exits 3") {
  TempDir tmp;
  const auto r = invoke({"simulate", "--kappa", "1", "--lambda", "0", "--n", "15", "--dt", "50",
                         "--init-modulus-max", "20", "--fp-max-iters", "3", "--out",
                         tmp.path.string()});
  CHECK(r.code == kExitSolver);
  CHECK(slurp(tmp.path / "manifest.txt").find("result.termination = FixedPointFailure") !=
        std::string::npos);
  CHECK(fs::exists(tmp.path / "energy_trace.csv"));
}

TEST_CASE("classify command") {
  TempDir tmp;
  const LatticeSpec sq = square_lattice();
  const RealField helix = helix_field({1, 0, 1, 0}, sq, 21);
  {
    std::ofstream os(tmp.path / "helix.csv", std::ios::binary);
    write_field_csv(os, helix, sq);
    std::ofstream cp(tmp.path / "helix.bin", std::ios::binary);
    write_checkpoint(cp, helix, {1, 0, 1, 0});
  }
  CHECK(load_field(tmp.path / "helix.bin").n() == 21);
  CHECK(load_field(tmp.path / "helix.csv").n() == 21);
  const auto r = invoke({"classify", "--input", (tmp.path / "helix.csv").string(), "--out",
                         (tmp.path / "out").string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("pattern: Helical") != std::string::npos);
  CHECK(invoke({"classify", "--input", (tmp.path / "missing.csv").string(), "--out",
                (tmp.path / "out").string()})
            .code == kExitUsage);
}

TEST_CASE("sweep keeps one row per point") {
  TempDir tmp;
  const auto r = invoke({"sweep", "--kappa", "1", "--kappas", "0.8,-1,1.0", "--betas", "0,2",
                         "--n", "15", "--max-steps", "5", "--out", tmp.path.string()});
  REQUIRE(r.code == kExitOk);
  const auto rows = read_csv(tmp.path / "sweep.csv");
  REQUIRE(rows.size() == 1 + 6);
  int invalid = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][0] == std::to_string(i - 1));
    invalid += rows[i][4] == "invalid";
  }
  CHECK(invalid == 2);
  CHECK(rows[3][1] == "-1");
  CHECK(rows[3][4] == "invalid");
}

TEST_CASE("phase diagram") {
  TempDir tmp;
  // kappa = 0.2, 0.4, ..., 1.4 and beta = 0, 1, ..., 8.
  const auto r = invoke({"phase-diagram", "--kappa", "1", "--kappa-min", "0.2", "--kappa-max",
                         "1.4", "--kappa-steps", "7", "--beta-min", "0", "--beta-max", "8",
                         "--beta-steps", "9", "--out", tmp.path.string()});
  REQUIRE(r.code == kExitOk);
  const auto rows = read_csv(tmp.path / "phase_diagram.csv");
  REQUIRE(rows.size() == 1 + 63);
  CHECK(rows[0] == std::vector<std::string>{"kappa", "beta", "lambda0", "c_tilde", "admissible",
                                            "verdict"});
  bool saw_14_5 = false, saw_06_0 = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double k = std::stod(rows[i][0]);
    const double b = std::stod(rows[i][1]);
    const bool adm = rows[i][4] == "1";
    if (k <= 0.5 + 1e-12) {
      CHECK_FALSE(adm);
      CHECK(std::stod(rows[i][2]) <= 0);
    }
    if (std::abs(k - 1.4) < 1e-12 && b == 5) {
      saw_14_5 = true;
      CHECK(adm);
      CHECK(rows[i][5] == "Stable");
    }
    if (std::abs(k - 0.6) < 1e-12 && b == 0) {
      saw_06_0 = true;
      CHECK_FALSE(adm);
    }
  }
  CHECK(saw_14_5);
  CHECK(saw_06_0);
}

}  // TEST_SUITE
