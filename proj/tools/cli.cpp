#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "superosc/error.hpp"
#include "superosc/intertwine.hpp"
#include "superosc/random.hpp"
#include "superosc/rep_io.hpp"

namespace superosc::cli {

namespace {

using nlohmann::json;

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int exit_for(bool pass) { return pass ? kPass : kCheckFailed; }

json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) a.push_back(to_json(c));
  return a;
}

// a = phi(N) b with phi(n) = sqrt([n+1]/(n+1)).
DiagonalMap transport_map(double q) {
  return [q](int n) { return std::sqrt(bracket(n + 1, q, BracketKind::Symmetric) / static_cast<double>(n + 1)); };
}

json context(const RunConfig& cfg, const Representation& rep) {
  return {{"q", complex_to_json(rep.q)}, {"dims", rep.dims()}, {"seed", cfg.seed}};
}

int classical(const RunConfig& cfg, std::ostream& out) {
  Rng rng(cfg.seed);
  Representation rep_a = build_rep(RepKind::Boson, {cfg.dim, 1.0});
  rep_a = apply_diagonal_map(rep_a, transport_map(cfg.q), "b", "a", "ad");
  const Matrix v = random_unitary(rng, rep_a.dimension());
  const Representation rep_b = unitary_transform(rep_a, v);
  const Matrix u = classical_intertwiner(rep_a, rep_b, "b");

  const auto n = rep_a.dimension();
  const Matrix id = Matrix::Identity(n, n);
  std::vector<Check> checks;
  checks.push_back(make_check("phase_equality", static_cast<double>(n) - std::abs((u.adjoint() * v).trace()), 1e-8));
  checks.push_back(make_check("unitary", max_abs(u.adjoint() * u - id), 1e-10));
  for (const char* letter : {"b", "bd", "a", "ad"}) {
    const double defect = max_abs(u * rep_a.binding(letter) * u.adjoint() - rep_b.binding(letter));
    checks.push_back(make_check(std::string("intertwines_") + letter, defect, 1e-10));
  }
  bool pass = true;
  for (const auto& c : checks) pass = pass && c.pass;
  json j = context(cfg, rep_a);
  j["mode"] = "classical";
  j["q"] = complex_to_json(Complex{cfg.q, 0.0});
  j["U"] = matrix_to_json(u);
  j["checks"] = checks_json(checks);
  j["pass"] = pass;
  emit(out, j);
  return exit_for(pass);
}

NCExpr pick(const RunConfig& cfg, Rng& rng, const std::string& text, const std::vector<std::string>& letters,
            const LetterTable& table) {
  if (cfg.random_degree) return random_polynomial(rng, letters, *cfg.random_degree);
  return parse(text, table);
}

}  // namespace

int run_rep_build(const RunConfig& cfg, std::ostream& out) {
  if (cfg.mode == "root_of_unity") {
    emit(out, to_json(root_of_unity_qboson(cfg.root_of_unity.value_or(cfg.dim))));
  } else {
    emit(out, to_json(canonical_rep(cfg.mode, cfg.dim, cfg.q)));
  }
  return kPass;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  AlgebraSpec spec = builtin_algebra(cfg.algebra);
  Representation rep;
  if (cfg.root_of_unity) {
    if (cfg.algebra != "qboson") {
      throw Error(ErrorCode::UnknownAlgebra, "root-of-unity representations exist for qboson only");
    }
    rep = root_of_unity_qboson(*cfg.root_of_unity);
  } else {
    rep = canonical_rep(cfg.algebra, cfg.dim, cfg.q);
  }
  const VerificationReport report = verify(rep, spec, cfg.tolerance, cfg.headroom);
  emit(out, to_json(report));
  return exit_for(report.pass);
}

int run_intertwine(const RunConfig& cfg, std::ostream& out) {
  Rng rng(cfg.seed);
  if (cfg.mode == "classical") return classical(cfg, out);

  if (cfg.mode == "t1" || cfg.mode == "crosscheck38") {
    const Representation rep = supercovariant_rep(cfg.dim, cfg.q);
    TheoremOneInput input{pick(cfg, rng, cfg.g00, {"B", "Bd"}, rep.table)};
    input = parse_theorem1_input(to_string(input.g00), rep.table);
    json j = context(cfg, rep);
    bool pass = false;
    if (cfg.mode == "t1") {
      IntertwinerResult result = build_theorem1(input, rep);
      if (cfg.uniqueness) attach_uniqueness(result, rep);
      j.update(to_json(result, cfg.include_primed));
      pass = result.pass();
    } else {
      const ReductionComparison cmp = crosscheck_pair_reduction(input, rep);
      j["mode"] = "crosscheck38";
      j["alpha"] = to_string(cmp.alpha);
      j["generator_deviation"] = cmp.generator_deviation;
      j["primed_deviation"] = cmp.primed_deviation;
      j["checks"] = checks_json(cmp.checks);
      j["supercovariant"] = to_json(cmp.supercovariant, cfg.include_primed);
      j["pair"] = to_json(cmp.pair, cfg.include_primed);
      pass = cmp.pass();
      j["pass"] = pass;
    }
    j["inputs"] = {{"g00", to_string(input.g00)}};
    emit(out, j);
    return exit_for(pass);
  }

  if (cfg.mode == "t2") {
    const Representation rep = tensor_pair(cfg.dim, cfg.q);
    const NCExpr alpha = pick(cfg, rng, cfg.alpha, {"b", "bd", "qM2i"}, rep.table);
    const IntertwinerResult result = build_theorem2(parse_theorem2_input(to_string(alpha), rep.table), rep);
    json j = context(cfg, rep);
    j.update(to_json(result, cfg.include_primed));
    j["inputs"] = {{"alpha", to_string(alpha)}};
    emit(out, j);
    return exit_for(result.pass());
  }

  if (cfg.mode == "n2") {
    const Representation rep = two_mode_rep(cfg.dim, cfg.q);
    const std::vector<std::string> bosons = {"b1", "bd1", "b2", "bd2"};
    std::vector<std::string> texts;
    for (const auto& text : cfg.two_mode) texts.push_back(to_string(pick(cfg, rng, text, bosons, rep.table)));
    const TwoModeInput input = parse_two_mode_input(texts[0], texts[1], texts[2], texts[3], rep.table);
    const IntertwinerResult result = build_two_mode(input, rep);
    json j = context(cfg, rep);
    j.update(to_json(result, cfg.include_primed));
    j["inputs"] = {{"g0_1", texts[0]}, {"g0_2", texts[1]}, {"g1_2", texts[2]}, {"g2_1", texts[3]}};
    emit(out, j);
    return exit_for(result.pass());
  }
  throw Error(ErrorCode::InvalidFormat, "unknown intertwine mode '" + cfg.mode + "'");
}

int run_jacobi(const RunConfig& cfg, std::ostream& out) {
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidFormat, "trials must be >= 1");
  if (cfg.dim < 2) throw Error(ErrorCode::InvalidDimension, "dim must be >= 2");
  Rng rng(cfg.seed);
  const auto override_q = [&](GradedTriple& t) {
    if (cfg.q1) t.q1 = *cfg.q1;
    if (cfg.q2) t.q2 = *cfg.q2;
    if (cfg.q3) t.q3 = *cfg.q3;
  };
  const auto parity = [](int bit) { return bit ? Parity::Odd : Parity::Even; };

  json residuals = json::array();
  double worst = 0.0;
  for (int k = 0; k < cfg.trials; ++k) {
    const int combo = k % 8;
    GradedTriple t = random_graded_triple(rng, cfg.dim, parity(combo & 4), parity(combo & 2), parity(combo & 1));
    override_q(t);
    const double r = jacobi_check(t);
    worst = std::max(worst, r);
    residuals.push_back(r);
  }
  bool pass = worst <= cfg.tolerance;

  json j{{"seed", cfg.seed},
         {"trials", cfg.trials},
         {"dim", cfg.dim},
         {"tol", cfg.tolerance},
         {"residuals", std::move(residuals)},
         {"max_residual", worst}};

  if (cfg.negative_control) {
    // The flipped sign only matters when exactly two entries are odd.
    constexpr int kTwoOdd[3] = {0b110, 0b101, 0b011};
    json flipped = json::array();
    int exceeding = 0;
    for (int k = 0; k < cfg.trials; ++k) {
      const int combo = kTwoOdd[k % 3];
      GradedTriple t = random_graded_triple(rng, cfg.dim, parity(combo & 4), parity(combo & 2), parity(combo & 1));
      override_q(t);
      const double r = jacobi_check(t, BracketSign::Flipped);
      exceeding += r > 0.1 ? 1 : 0;
      flipped.push_back(r);
    }
    const int required = static_cast<int>(std::ceil(0.95 * cfg.trials));
    j["control"] = {{"residuals", std::move(flipped)}, {"exceeding", exceeding}, {"required", required}};
    pass = pass && exceeding >= required;
  }
  j["pass"] = pass;
  emit(out, j);
  return exit_for(pass);
}

int run_bracket(const RunConfig& cfg, std::ostream& out) {
  const BracketKind kind = cfg.kind == "fermionic" ? BracketKind::Fermionic : BracketKind::Symmetric;
  json values = json::array();
  for (int n = 0; n <= cfg.n_max; ++n) {
    values.push_back({{"n", n}, {"value", complex_to_json(bracket(n, cfg.q, kind))}});
  }
  emit(out, {{"q", complex_to_json(Complex{cfg.q, 0.0})}, {"kind", cfg.kind}, {"values", std::move(values)}});
  return kPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"q-deformed superoscillator representations and intertwiners", "superosc"};
  app.set_config("--config", "", "TOML file with option defaults; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--q", cfg.q, "deformation parameter");
  app.add_option("--dim", cfg.dim, "boson truncation dimension")->check(CLI::Range(2, 512));
  app.add_option("--tol", cfg.tolerance, "max-abs tolerance")->check(CLI::PositiveNumber);
  app.add_option("--headroom", cfg.headroom, "override masking depth for every relation")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out, "output file (default stdout)");

  auto* rep = app.add_subcommand("rep", "representation files");
  rep->require_subcommand(1);
  auto* rep_build = rep->add_subcommand("build", "write a representation as JSON");
  std::vector<std::string> kinds = builtin_algebra_names();
  kinds.push_back("root_of_unity");
  rep_build->add_option("--kind", cfg.mode, "algebra whose canonical representation is built")
      ->required()
      ->check(CLI::IsMember(kinds));
  rep_build->add_option("--m", cfg.root_of_unity, "root-of-unity order")->check(CLI::Range(2, 512));

  auto* verify_cmd = app.add_subcommand("verify", "check a builtin algebra on its canonical representation");
  verify_cmd->add_option("--algebra", cfg.algebra, "algebra name")->required();
  verify_cmd->add_option("--root-of-unity", cfg.root_of_unity, "use q = exp(i pi/m) on m states")
      ->check(CLI::Range(2, 512));

  auto* intertwine = app.add_subcommand("intertwine", "build a superunitary intertwiner");
  intertwine->add_option("mode", cfg.mode, "pipeline")
      ->required()
      ->check(CLI::IsMember({"t1", "t2", "n2", "classical", "crosscheck38"}));
  intertwine->add_option("--g00", cfg.g00, "G00 in B, Bd");
  intertwine->add_option("--alpha", cfg.alpha, "alpha in b, bd, qM2, qM2i, qN2, qN2i");
  intertwine->add_option("--g0-1", cfg.two_mode[0], "two-mode coefficient G0 of mode 1");
  intertwine->add_option("--g0-2", cfg.two_mode[1], "two-mode coefficient G0 of mode 2");
  intertwine->add_option("--g1-2", cfg.two_mode[2], "two-mode cross coefficient G1 of mode 2");
  intertwine->add_option("--g2-1", cfg.two_mode[3], "two-mode cross coefficient G2 of mode 1");
  intertwine->add_option("--random-degree", cfg.random_degree, "draw inputs as seeded random polynomials")
      ->check(CLI::Range(0, 4));
  intertwine->add_flag("--uniqueness", cfg.uniqueness, "run the uniqueness oracle (t1)");
  intertwine->add_flag("--primed", cfg.include_primed, "include the primed family in the output");

  auto* jacobi = app.add_subcommand("jacobi", "graded q-Jacobi identity on random triples");
  jacobi->add_option("--trials", cfg.trials, "number of trials");
  jacobi->add_option("--q1", cfg.q1, "fixed q1");
  jacobi->add_option("--q2", cfg.q2, "fixed q2");
  jacobi->add_option("--q3", cfg.q3, "fixed q3");
  jacobi->add_flag("--negative-control", cfg.negative_control, "also run the flipped-sign control");
  cfg.dim = 8;

  auto* bracket_cmd = app.add_subcommand("bracket", "print q-number tables");
  bracket_cmd->add_option("--kind", cfg.kind, "symmetric or fermionic")
      ->check(CLI::IsMember({"symmetric", "fermionic"}));
  bracket_cmd->add_option("--n-max", cfg.n_max, "largest n")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "superosc: " << e.what() << '\n';
    return kUsageError;
  }
  if (!jacobi->parsed() && app.count("--dim") == 0) cfg.dim = 12;

  std::ostringstream buffer;
  int code = kPass;
  try {
    if (rep_build->parsed()) {
      code = run_rep_build(cfg, buffer);
    } else if (verify_cmd->parsed()) {
      code = run_verify(cfg, buffer);
    } else if (intertwine->parsed()) {
      code = run_intertwine(cfg, buffer);
    } else if (jacobi->parsed()) {
      code = run_jacobi(cfg, buffer);
    } else {
      code = run_bracket(cfg, buffer);
    }
  } catch (const Error& e) {
    err << "superosc: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::NotOdd:
      case ErrorCode::NotSelfAdjoint:
      case ErrorCode::SectorDecompositionFailure:
      case ErrorCode::NoVacuum:
      case ErrorCode::ReducibleRepresentation:
      case ErrorCode::InconsistentSystem:
        return kCheckFailed;
      default:
        return kUsageError;
    }
  }

  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "superosc: cannot write " << cfg.out << '\n';
      return kUsageError;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace superosc::cli
