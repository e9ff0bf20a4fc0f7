#include <algorithm>
#include <array>
#include <set>

#include "superosc/error.hpp"
#include "superosc/intertwine.hpp"

namespace superosc {

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kDecompositionTol = 1e-10;
constexpr double kClosureTol = 1e-9;
constexpr int kRelationHeadroom = 2;
constexpr int kSectors = 4;  // fermion occupation (n1, n2) -> 2 n1 + n2

int ladder_reach(const NCExpr& e) {
  static const std::set<std::string> ladder = {"b1", "bd1", "b2", "bd2"};
  int best = 0;
  for (const auto& t : e.terms()) {
    const auto n = std::count_if(t.word.begin(), t.word.end(), [](const std::string& s) { return ladder.count(s) > 0; });
    best = std::max(best, static_cast<int>(n));
  }
  return best;
}

// Block of m between fermion sectors: rows in `row`, columns in `col`.
Matrix sector_block(const Matrix& m, int row, int col) {
  const Eigen::Index bosons = m.rows() / kSectors;
  Matrix out(bosons, bosons);
  for (Eigen::Index i = 0; i < bosons; ++i) {
    for (Eigen::Index j = 0; j < bosons; ++j) out(i, j) = m(i * kSectors + row, j * kSectors + col);
  }
  return out;
}

Matrix embed_bosonic(const Matrix& x) { return kron(x, Matrix::Identity(kSectors, kSectors)); }

struct OffDiagonal {
  const char* name;
  int row;
  int col;
  const char* monomial;
};

// f1 f2 : 11 -> 00, f1^+ f2^+ : 00 -> 11, f1 f2^+ : 10 -> 01, f1^+ f2 : 01 -> 10.
constexpr std::array<OffDiagonal, 4> kOffDiagonal = {{
    {"H", 0, 3, "f1*f2"},
    {"Hp", 3, 0, "fd1*fd2"},
    {"K", 1, 2, "f1*fd2"},
    {"Kp", 2, 1, "fd1*f2"},
}};

// Writes G0, G1, G2, G12, H, Hp, K, Kp of `g` (suffix _k) and returns the
// reassembly residual.
double decompose(const Matrix& g, const Representation& rep, const std::string& suffix,
                 std::map<std::string, Matrix>& coefficients) {
  std::array<Matrix, kSectors> diag;
  for (int s = 0; s < kSectors; ++s) diag[static_cast<std::size_t>(s)] = sector_block(g, s, s);
  const Matrix& c00 = diag[0];
  const Matrix& c01 = diag[1];
  const Matrix& c10 = diag[2];
  const Matrix& c11 = diag[3];

  const auto number1 = evaluate(parse("fd1*f1", rep.table), rep);
  const auto number2 = evaluate(parse("fd2*f2", rep.table), rep);
  const Matrix g0 = c00, g1 = c10 - c00, g2 = c01 - c00, g12 = c11 - c10 - c01 + c00;
  Matrix rebuilt = embed_bosonic(g0) + embed_bosonic(g1) * number1 + embed_bosonic(g2) * number2 +
                   embed_bosonic(g12) * number1 * number2;
  coefficients["G0" + suffix] = embed_bosonic(g0);
  coefficients["G1" + suffix] = embed_bosonic(g1);
  coefficients["G2" + suffix] = embed_bosonic(g2);
  coefficients["G12" + suffix] = embed_bosonic(g12);

  for (const auto& od : kOffDiagonal) {
    const Matrix monomial = evaluate(parse(od.monomial, rep.table), rep);
    // The fermionic sign of the monomial is independent of the boson state.
    const Complex sign = monomial(od.row, od.col);
    if (std::abs(sign) < 1e-12) {
      throw Error(ErrorCode::SectorDecompositionFailure, std::string("monomial ") + od.monomial + " vanishes");
    }
    const Matrix x = sector_block(g, od.row, od.col) / sign;
    coefficients[od.name + suffix] = embed_bosonic(x);
    rebuilt += embed_bosonic(x) * monomial;
  }
  return max_abs(rebuilt - g);
}

}  // namespace

IntertwinerResult build_two_mode(const TwoModeInput& input, const Representation& rep) {
  if (rep.factors.size() != 4 || !rep.binds("f2") || !rep.binds("b2")) {
    throw Error(ErrorCode::DimensionMismatch, "two-mode pipeline needs the two-mode representation");
  }
  const std::set<std::string> allowed = {"b1", "bd1", "b2", "bd2", "N1", "N2", "M1", "M2", "qN1", "qN1i",
                                         "qN2", "qN2i", "qM1", "qM1i", "qM2", "qM2i"};
  for (const auto* e : {&input.g0_1, &input.g0_2, &input.g1_2, &input.g2_1}) {
    for (const auto& letter : e->letters()) {
      if (!allowed.count(letter)) {
        throw Error(ErrorCode::LetterViolation, "two-mode coefficient may not contain '" + letter + "'");
      }
    }
  }

  const auto l = [](const char* name) { return NCExpr::letter(name); };
  const NCExpr q_m1 = l("qM1i") * l("qM1i");
  const NCExpr q_m2 = l("qM2i") * l("qM2i");
  const NCExpr sum = l("fd1") * input.g0_1 * q_m1 + l("fd2") * input.g0_2 * q_m2 +
                     l("fd1") * l("fd2") * l("f2") * input.g2_1 * q_m1 +
                     l("fd2") * l("fd1") * l("f1") * input.g1_2 * q_m2;

  IntertwinerResult out;
  out.mode = "n2";
  out.a = evaluate(sum + adjoint(sum, rep.table), rep);
  out.masked_levels =
      kRelationHeadroom + std::max({ladder_reach(input.g0_1), ladder_reach(input.g0_2), ladder_reach(input.g1_2),
                                    ladder_reach(input.g2_1)});
  const int h = out.masked_levels;

  out.checks.push_back(make_check("A_hermitian", hermiticity_defect(out.a), kExactTol));
  out.checks.push_back(make_check("A_odd", even_part_max_abs(out.a, rep.parity), kExactTol));

  for (const char* k : {"1", "2"}) {
    const std::string suffix = std::string("_") + k;
    const Matrix g = anticommutator(out.a, rep.binding(std::string("f") + k));
    const Matrix d = commutator(out.a, rep.binding(std::string("b") + k));
    out.coefficients["G" + suffix] = g;
    out.coefficients["D" + suffix] = d;
    const double residual = decompose(g, rep, suffix, out.coefficients);
    if (residual > kDecompositionTol) {
      throw Error(ErrorCode::SectorDecompositionFailure,
                  "G" + suffix + " reassembly residual " + std::to_string(residual));
    }
    out.checks.push_back(make_check("sector_residual" + suffix, residual, kDecompositionTol));
    out.checks.push_back(make_check("Hp_vanishes" + suffix, max_abs(out.coefficients["Hp" + suffix]), kDecompositionTol));
    out.checks.push_back(make_check("Kp_vanishes" + suffix, max_abs(out.coefficients["Kp" + suffix]), kDecompositionTol));
  }

  const Superunitary s = superunitary(out.a, rep);
  out.primed = conjugated_representation(rep, s);
  double ansatz = 0.0;
  for (const char* k : {"1", "2"}) {
    const std::string suffix = std::string("_") + k;
    const auto theta_b = out.primed_operator(std::string("b") + k).theta_component();
    const auto theta_f = out.primed_operator(std::string("f") + k).theta_component();
    ansatz = std::max(ansatz, max_abs(theta_b - out.coefficients["D" + suffix]));
    ansatz = std::max(ansatz, max_abs(theta_f - out.coefficients["G" + suffix]));
  }
  out.checks.push_back(make_check("primed_family_ansatz", ansatz, kDecompositionTol));
  out.report = verify(out.primed, builtin_algebra("qmulti2"), kClosureTol, h);
  return out;
}

}  // namespace superosc
