#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "superosc/expr.hpp"
#include "superosc/rep.hpp"

namespace superosc {

// lhs = rhs, checked away from the truncation boundary. `ladder_degree` is the
// number of top levels of every truncated boson factor excluded from the check.
struct Relation {
  std::string name;
  NCExpr lhs;
  NCExpr rhs;
  int ladder_degree = 0;
};

struct AlgebraSpec {
  std::string name;
  std::vector<Relation> relations;
  // When set, overrides the representation's q during evaluation.
  std::optional<Complex> q;
  LetterTable table;
};

// heisenberg, fermion, qboson, qfermion, qfermion_parth, qpair, supercov, qmulti2.
AlgebraSpec builtin_algebra(std::string_view name);
std::vector<std::string> builtin_algebra_names();

struct RelationResult {
  std::string name;
  double residual = 0.0;  // max-abs entry of the masked difference
  double spectral = 0.0;  // largest singular value of the masked difference
  double tolerance = 0.0;
  int masked_levels = 0;
  bool pass = false;
};

struct VerificationReport {
  std::string algebra;
  Complex q{1.0, 0.0};
  std::vector<int> dims;
  double tolerance = 0.0;
  std::optional<int> headroom_override;
  std::vector<RelationResult> relations;  // sorted by name
  bool pass = false;

  double max_residual() const;
};

VerificationReport verify(const Representation& rep, const AlgebraSpec& spec, double tol,
                          std::optional<int> headroom_override = std::nullopt);

// Zeroes every row and column whose level in some truncated boson factor lies
// within `levels` of that factor's top.
Matrix mask_boundary(const Matrix& m, const Representation& rep, int levels);

// true for basis states kept by mask_boundary.
std::vector<bool> interior_states(const Representation& rep, int levels);

// p X Y + r Y X when both X and Y are odd, p X Y - r Y X otherwise.
Matrix graded_bracket(const Matrix& x, const Matrix& y, Parity px, Parity py, Complex p, Complex r);

struct GradedTriple {
  Matrix a, b, c;
  Parity pa = Parity::Even, pb = Parity::Even, pc = Parity::Even;
  Complex q1{1.0, 0.0}, q2{1.0, 0.0}, q3{1.0, 0.0};
  ParityVector parity;
};

// Flipped uses the minus sign for odd/odd pairs; it exists as a negative control.
enum class BracketSign { Standard, Flipped };

// Relative residual of the three-term graded q-Jacobi sum: max-abs of the sum
// over the largest max-abs among the brackets it is built from.
double jacobi_check(const GradedTriple& t, BracketSign sign = BracketSign::Standard);

nlohmann::json to_json(const VerificationReport& report);

}  // namespace superosc
