#include "superosc/intertwine.hpp"

#include <algorithm>
#include <set>

#include "superosc/error.hpp"
#include "superosc/rep_io.hpp"

namespace superosc {

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kClosedFormTol = 1e-10;
constexpr double kConjugationTol = 1e-13;
constexpr double kClosureTol = 1e-9;
constexpr double kGrassmannTol = 1e-15;
// Two levels cover every builtin relation; the generator adds its own ladder reach.
constexpr int kRelationHeadroom = 2;

// Largest number of ladder letters in any word.
int ladder_reach(const NCExpr& e, const std::set<std::string>& ladder_letters) {
  int best = 0;
  for (const auto& t : e.terms()) {
    int n = 0;
    for (const auto& letter : t.word) n += ladder_letters.count(letter) ? 1 : 0;
    best = std::max(best, n);
  }
  return best;
}

void require_letters(const NCExpr& e, const std::set<std::string>& allowed, const char* what) {
  for (const auto& letter : e.letters()) {
    if (!allowed.count(letter)) {
      throw Error(ErrorCode::LetterViolation, std::string(what) + " may not contain '" + letter + "'");
    }
  }
}

QScalar q_scalar(int half_units) { return QScalar::q_half_power(half_units); }

Matrix graded_with(const Matrix& a, const Matrix& x, Parity px) {
  return graded_bracket(a, x, Parity::Odd, px, 1.0, 1.0);
}

// conjugate(lift X) - lift X - theta lift([A, X}) for each listed letter.
double conjugation_defect(const Superunitary& s, const Matrix& a, const Representation& rep,
                          const std::vector<std::string>& letters) {
  double worst = 0.0;
  for (const auto& name : letters) {
    const Matrix& x = rep.binding(name);
    const DoubledOperator got = conjugate(s, x, rep);
    const DoubledOperator expected =
        DoubledOperator::from_parts(x, graded_with(a, x, rep.table.parity(name)), rep.parity);
    worst = std::max(worst, max_abs(got.matrix() - expected.matrix()));
  }
  return worst;
}

// theta^2, theta against every lifted binding, U Uinv - 1 and Uinv U - 1.
double grassmann_defect(const Superunitary& s, const Representation& rep) {
  const DoubledOperator theta = theta_op(rep);
  double worst = max_abs((theta * theta).matrix());
  for (const auto& [name, x] : rep.bindings) {
    const DoubledOperator lx = lift(x, rep);
    const Matrix bracket = rep.table.parity(name) == Parity::Odd ? (theta * lx + lx * theta).matrix()
                                                                 : (theta * lx - lx * theta).matrix();
    worst = std::max(worst, max_abs(bracket));
  }
  const Eigen::Index n = 2 * rep.dimension();
  worst = std::max(worst, max_abs((s.u * s.u_inv).matrix() - Matrix::Identity(n, n)));
  worst = std::max(worst, max_abs((s.u_inv * s.u).matrix() - Matrix::Identity(n, n)));
  return worst;
}

}  // namespace

Check make_check(std::string name, double value, double tolerance) {
  return Check{std::move(name), value, tolerance, value <= tolerance};
}

bool IntertwinerResult::pass() const {
  return report.pass && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& IntertwinerResult::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::UnknownLetter, "no check named '" + std::string(name) + "'");
}

DoubledOperator IntertwinerResult::primed_operator(std::string_view letter) const {
  const auto& m = primed.binding(letter);
  ParityVector base(primed.parity.begin(), primed.parity.begin() + static_cast<std::ptrdiff_t>(primed.parity.size() / 2));
  return DoubledOperator(m, std::move(base));
}

bool ReductionComparison::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

// ---------------------------------------------------------------------------
// Input parsing

TheoremOneInput parse_theorem1_input(std::string_view g00, const LetterTable& table) {
  TheoremOneInput in{parse(g00, table)};
  require_letters(in.g00, {"B", "Bd"}, "G00");
  return in;
}

TheoremTwoInput parse_theorem2_input(std::string_view alpha, const LetterTable& table) {
  TheoremTwoInput in{parse(alpha, table)};
  require_letters(in.alpha, {"b", "bd", "qM2", "qM2i", "qN2", "qN2i"}, "alpha");
  return in;
}

TwoModeInput parse_two_mode_input(std::string_view g0_1, std::string_view g0_2, std::string_view g1_2,
                                  std::string_view g2_1, const LetterTable& table) {
  TwoModeInput in{parse(g0_1, table), parse(g0_2, table), parse(g1_2, table), parse(g2_1, table)};
  const std::set<std::string> allowed = {"b1", "bd1", "b2", "bd2", "N1", "N2", "M1", "M2", "qN1", "qN1i",
                                         "qN2", "qN2i", "qM1", "qM1i", "qM2", "qM2i"};
  for (const auto* e : {&in.g0_1, &in.g0_2, &in.g1_2, &in.g2_1}) require_letters(*e, allowed, "two-mode coefficient");
  return in;
}

// ---------------------------------------------------------------------------
// Supercovariant pipeline

IntertwinerResult build_theorem1(const TheoremOneInput& input, const Representation& rep) {
  require_letters(input.g00, {"B", "Bd"}, "G00");
  const LetterTable& table = rep.table;
  const NCExpr& g = input.g00;
  const NCExpr gd = adjoint(g, table);
  const NCExpr big_b = NCExpr::letter("B");
  const NCExpr f = NCExpr::letter("F");
  const NCExpr fd = NCExpr::letter("Fd");

  // G00(qB, qB^+)
  const NCExpr gq = scale_letter(g, {{"B", q_scalar(2)}, {"Bd", q_scalar(2)}});
  const NCExpr g11 = gq - g;
  const NCExpr d10 = q_scalar(2) * (gq * big_b) - big_b * gq;
  const NCExpr d01 = q_scalar(-2) * (gd * big_b) - big_b * gd;

  IntertwinerResult out;
  out.mode = "t1";
  out.a = evaluate(fd * g + gd * f, rep);
  out.masked_levels = kRelationHeadroom + ladder_reach(g, {"B", "Bd"});
  const int h = out.masked_levels;

  auto& c = out.coefficients;
  c["G00"] = evaluate(g, rep);
  c["G11"] = evaluate(g11, rep);
  c["D10"] = evaluate(d10, rep);
  c["D01"] = evaluate(d01, rep);
  // G and D with coefficients on the left of the fermionic factors.
  c["G"] = evaluate(g + g11 * fd * f, rep);
  c["D"] = evaluate(d10 * fd + d01 * f, rep);
  const Matrix g_symmetric = evaluate(g * f * fd + gq * fd * f, rep);

  const Matrix& mf = rep.binding("F");
  const Matrix& mb = rep.binding("B");
  const Matrix anti_af = anticommutator(out.a, mf);
  const Matrix comm_ab = commutator(out.a, mb);

  out.checks.push_back(make_check("A_hermitian", hermiticity_defect(out.a), kExactTol));
  out.checks.push_back(make_check("A_odd", even_part_max_abs(out.a, rep.parity), kExactTol));
  out.checks.push_back(make_check("AF_anticommutator_is_G", max_abs(mask_boundary(anti_af - g_symmetric, rep, h)), kExactTol));
  out.checks.push_back(make_check("AB_commutator_is_D", max_abs(mask_boundary(comm_ab - c["D"], rep, h)), kExactTol));
  out.checks.push_back(make_check("G_closed_form", max_abs(mask_boundary(c["G"] - anti_af, rep, h)), kClosedFormTol));
  out.checks.push_back(make_check("D_closed_form", max_abs(mask_boundary(c["D"] - comm_ab, rep, h)), kClosedFormTol));

  const Superunitary s = superunitary(out.a, rep);
  out.checks.push_back(make_check("grassmann_exact", grassmann_defect(s, rep), kGrassmannTol));
  out.checks.push_back(make_check("conjugation_identity",
                                  conjugation_defect(s, out.a, rep, {"B", "Bd", "F", "Fd", "N", "M"}),
                                  kConjugationTol));
  out.primed = conjugated_representation(rep, s);

  // B' = B + theta D, B'^+ = B^+ - theta D^+, F' = F + theta G, F'^+ = F^+ + theta G^+.
  const auto theta_part = [&](const char* letter) { return out.primed_operator(letter).theta_component(); };
  double ansatz = 0.0;
  ansatz = std::max(ansatz, max_abs(mask_boundary(theta_part("B") - c["D"], rep, h)));
  ansatz = std::max(ansatz, max_abs(mask_boundary(theta_part("Bd") + c["D"].adjoint(), rep, h)));
  ansatz = std::max(ansatz, max_abs(mask_boundary(theta_part("F") - c["G"], rep, h)));
  ansatz = std::max(ansatz, max_abs(mask_boundary(theta_part("Fd") - c["G"].adjoint(), rep, h)));
  out.checks.push_back(make_check("primed_family_ansatz", ansatz, kClosedFormTol));

  out.report = verify(out.primed, builtin_algebra("supercov"), kClosureTol, h);
  return out;
}

// ---------------------------------------------------------------------------
// Pair-algebra pipeline

IntertwinerResult build_theorem2(const TheoremTwoInput& input, const Representation& rep) {
  require_letters(input.alpha, {"b", "bd", "qM2", "qM2i", "qN2", "qN2i"}, "alpha");
  const LetterTable& table = rep.table;
  const NCExpr& alpha = input.alpha;
  const NCExpr alpha_d = adjoint(alpha, table);
  // alpha(b, b^+, M - 1): q^(M/2) -> q^(-1/2) q^(M/2).
  const NCExpr shifted = scale_letter(alpha, {{"qM2", q_scalar(-1)}, {"qM2i", q_scalar(1)}});
  const NCExpr b = NCExpr::letter("b");
  const NCExpr f = NCExpr::letter("f");
  const NCExpr fd = NCExpr::letter("fd");
  const NCExpr q_m = NCExpr::letter("qM2") * NCExpr::letter("qM2");

  const NCExpr g00 = alpha * q_m;
  const NCExpr g11 = shifted - q_scalar(2) * alpha;
  const NCExpr d10 = shifted * b - b * shifted;
  const NCExpr d01 = alpha_d * b - b * alpha_d;

  IntertwinerResult out;
  out.mode = "t2";
  out.a = evaluate(fd * alpha + alpha_d * f, rep);
  if (hermiticity_defect(out.a) > kClosedFormTol) {
    throw Error(ErrorCode::NotSelfAdjoint, "generator built from alpha is not Hermitian");
  }
  out.masked_levels = kRelationHeadroom + ladder_reach(alpha, {"b", "bd"});
  const int h = out.masked_levels;

  auto& c = out.coefficients;
  c["alpha"] = evaluate(alpha, rep);
  c["G00"] = evaluate(g00, rep);
  c["G11"] = evaluate(g11, rep);
  c["D10"] = evaluate(d10, rep);
  c["D01"] = evaluate(d01, rep);
  c["G"] = evaluate(g00 + g11 * fd * f, rep);
  c["D"] = evaluate(d10 * fd + d01 * f, rep);

  const Matrix anti_af = anticommutator(out.a, rep.binding("f"));
  const Matrix comm_ab = commutator(out.a, rep.binding("b"));

  out.checks.push_back(make_check("A_hermitian", hermiticity_defect(out.a), kExactTol));
  out.checks.push_back(make_check("A_odd", even_part_max_abs(out.a, rep.parity), kExactTol));
  out.checks.push_back(make_check("G_closed_form", max_abs(mask_boundary(c["G"] - anti_af, rep, h)), kClosedFormTol));
  out.checks.push_back(make_check("D_closed_form", max_abs(mask_boundary(c["D"] - comm_ab, rep, h)), kClosedFormTol));

  const Superunitary s = superunitary(out.a, rep);
  out.checks.push_back(make_check("grassmann_exact", grassmann_defect(s, rep), kGrassmannTol));
  out.checks.push_back(
      make_check("conjugation_identity", conjugation_defect(s, out.a, rep, {"b", "bd", "f", "fd"}), kConjugationTol));
  // N' = N + theta [A, N], M' = M + theta [A, M].
  out.checks.push_back(make_check("number_operator_N", conjugation_defect(s, out.a, rep, {"N"}), kExactTol));
  out.checks.push_back(make_check("number_operator_M", conjugation_defect(s, out.a, rep, {"M"}), kExactTol));
  out.primed = conjugated_representation(rep, s);

  const auto theta_part = [&](const char* letter) { return out.primed_operator(letter).theta_component(); };
  double ansatz = 0.0;
  ansatz = std::max(ansatz, max_abs(mask_boundary(theta_part("b") - c["D"], rep, h)));
  ansatz = std::max(ansatz, max_abs(mask_boundary(theta_part("f") - c["G"], rep, h)));
  out.checks.push_back(make_check("primed_family_ansatz", ansatz, kClosedFormTol));

  out.report = verify(out.primed, builtin_algebra("qpair"), kClosureTol, h);
  return out;
}

// ---------------------------------------------------------------------------
// Reduction of the pair pipeline to the supercovariant one

ReductionComparison crosscheck_pair_reduction(const TheoremOneInput& input, const Representation& rep) {
  ReductionComparison out;
  out.supercovariant = build_theorem1(input, rep);

  // B = q^(-N/2) q^(-M) b,  B^+ = b^+ q^(-N/2) q^(-M).
  NCExpr expanded = substitute_letter(input.g00, "B", Term{QScalar{}, {"qN2i", "qM2i", "qM2i", "b"}});
  expanded = substitute_letter(expanded, "Bd", Term{QScalar{}, {"bd", "qN2i", "qM2i", "qM2i"}});
  out.alpha = NCExpr::letter("qM2i") * expanded;
  out.pair = build_theorem2(TheoremTwoInput{out.alpha}, rep);

  out.generator_deviation = max_abs(out.supercovariant.a - out.pair.a);

  // B' and F' of the supercovariant family against q^(-N'/2 - M') b' and q^(-M'/2) f'.
  const LetterTable& table = rep.table;
  const std::vector<std::pair<std::string, std::string>> mapped = {
      {"B", "qN2i*qM2i*qM2i*b"}, {"Bd", "bd*qN2i*qM2i*qM2i"}, {"F", "qM2i*f"}, {"Fd", "fd*qM2i"}};
  for (const auto& [letter, text] : mapped) {
    const Matrix from_pair = evaluate(parse(text, table), out.pair.primed);
    out.primed_deviation =
        std::max(out.primed_deviation, max_abs(out.supercovariant.primed.binding(letter) - from_pair));
  }

  out.checks.push_back(make_check("generator_agreement", out.generator_deviation, kClosedFormTol));
  out.checks.push_back(make_check("primed_agreement", out.primed_deviation, kClosedFormTol));
  out.checks.push_back(make_check("supercovariant_pipeline", out.supercovariant.pass() ? 0.0 : 1.0, 0.0));
  out.checks.push_back(make_check("pair_pipeline", out.pair.pass() ? 0.0 : 1.0, 0.0));
  return out;
}

// ---------------------------------------------------------------------------
// Uniqueness oracle

UniquenessResult uniqueness_oracle(const Representation& rep, const Matrix& g, const Matrix& d, int headroom) {
  const Eigen::Index n = rep.dimension();
  if (g.rows() != n || d.rows() != n) throw Error(ErrorCode::DimensionMismatch, "G or D has the wrong size");
  const Matrix& mf = rep.binding("F");
  const Matrix& mb = rep.binding("B");

  const auto inner = interior_states(rep, headroom);
  // [X, B] rows must stay inside the support after B lowers by one level.
  const auto inner_rows = interior_states(rep, headroom + 1);
  std::vector<Eigen::Index> support, b_rows;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (inner[static_cast<std::size_t>(i)]) support.push_back(i);
    if (inner_rows[static_cast<std::size_t>(i)]) b_rows.push_back(i);
  }

  // Real basis of Hermitian odd matrices on the support.
  struct Generator {
    Eigen::Index i, j;
    bool imaginary;
  };
  std::vector<Generator> generators;
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      const auto i = support[a], j = support[b];
      if (rep.parity[static_cast<std::size_t>(i)] == rep.parity[static_cast<std::size_t>(j)]) continue;
      generators.push_back({i, j, false});
      generators.push_back({i, j, true});
    }
  }

  const auto f_equations = static_cast<Eigen::Index>(support.size() * support.size());
  const auto b_equations = static_cast<Eigen::Index>(b_rows.size() * support.size());
  const Eigen::Index rows = 2 * (f_equations + b_equations);
  const auto cols = static_cast<Eigen::Index>(generators.size());

  auto flatten = [&](const Matrix& anti, const Matrix& comm, Eigen::VectorXd& out) {
    Eigen::Index k = 0;
    for (auto r : support) {
      for (auto s : support) {
        out(k++) = anti(r, s).real();
        out(k++) = anti(r, s).imag();
      }
    }
    for (auto r : b_rows) {
      for (auto s : support) {
        out(k++) = comm(r, s).real();
        out(k++) = comm(r, s).imag();
      }
    }
  };

  Eigen::MatrixXd system(rows, cols);
  Eigen::VectorXd column(rows);
  for (Eigen::Index k = 0; k < cols; ++k) {
    const auto& gen = generators[static_cast<std::size_t>(k)];
    Matrix x = Matrix::Zero(n, n);
    const Complex v = gen.imaginary ? Complex{0.0, 1.0} : Complex{1.0, 0.0};
    x(gen.i, gen.j) = v;
    x(gen.j, gen.i) = std::conj(v);
    flatten(anticommutator(x, mf), commutator(x, mb), column);
    system.col(k) = column;
  }
  Eigen::VectorXd rhs(rows);
  flatten(g, d, rhs);

  UniquenessResult out;
  out.headroom = headroom;
  out.unknowns = static_cast<int>(cols);
  out.solution = Matrix::Zero(n, n);
  if (cols == 0) {
    out.residual = rhs.cwiseAbs().maxCoeff();
    return out;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-8 * sv(0);
  svd.setThreshold(1e-8);
  for (Eigen::Index k = 0; k < sv.size(); ++k) out.nullity += sv(k) < cutoff ? 1 : 0;
  out.nullity += static_cast<int>(std::max<Eigen::Index>(0, cols - sv.size()));

  const Eigen::VectorXd x = svd.solve(rhs);
  out.residual = rhs.size() ? (system * x - rhs).cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index k = 0; k < cols; ++k) {
    const auto& gen = generators[static_cast<std::size_t>(k)];
    const Complex v = gen.imaginary ? Complex{0.0, x(k)} : Complex{x(k), 0.0};
    out.solution(gen.i, gen.j) += v;
    out.solution(gen.j, gen.i) += std::conj(v);
  }
  const double scale = std::max({1.0, rhs.cwiseAbs().maxCoeff(), system.cwiseAbs().maxCoeff()});
  if (out.residual > 1e-8 * scale) {
    throw Error(ErrorCode::InconsistentSystem,
                "least-squares residual " + std::to_string(out.residual) + " exceeds tolerance");
  }
  return out;
}

void attach_uniqueness(IntertwinerResult& result, const Representation& rep) {
  const int h = result.masked_levels;
  UniquenessResult u = uniqueness_oracle(rep, result.coefficients.at("G"), result.coefficients.at("D"), h);
  result.checks.push_back(make_check("uniqueness_nullity", u.nullity, 0.0));
  result.checks.push_back(make_check("uniqueness_match", max_abs(mask_boundary(u.solution - result.a, rep, h)), 1e-9));
  result.uniqueness = std::move(u);
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const Check& check) {
  return {{"name", check.name}, {"value", check.value}, {"tolerance", check.tolerance}, {"pass", check.pass}};
}

nlohmann::json to_json(const UniquenessResult& result) {
  return {{"nullity", result.nullity},
          {"unknowns", result.unknowns},
          {"residual", result.residual},
          {"headroom", result.headroom},
          {"solution", matrix_to_json(result.solution)}};
}

nlohmann::json to_json(const IntertwinerResult& result, bool include_primed) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : result.checks) checks.push_back(to_json(c));
  nlohmann::json coefficients = nlohmann::json::object();
  for (const auto& [name, m] : result.coefficients) coefficients[name] = matrix_to_json(m);
  nlohmann::json j{{"mode", result.mode},
                   {"masked_levels", result.masked_levels},
                   {"A", matrix_to_json(result.a)},
                   {"coefficients", std::move(coefficients)},
                   {"checks", std::move(checks)},
                   {"report", to_json(result.report)},
                   {"pass", result.pass()}};
  if (result.uniqueness) j["uniqueness"] = to_json(*result.uniqueness);
  if (include_primed) {
    nlohmann::json primed = superosc::to_json(result.primed);
    primed["doubled"] = true;
    j["primed"] = std::move(primed);
  }
  return j;
}

}  // namespace superosc
