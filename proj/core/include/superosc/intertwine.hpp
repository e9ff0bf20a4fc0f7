#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "superosc/expr.hpp"
#include "superosc/grassmann.hpp"
#include "superosc/rep.hpp"
#include "superosc/superalg.hpp"

namespace superosc {

// A named scalar check: pass iff value <= tolerance.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check make_check(std::string name, double value, double tolerance);

// G00(B, B^+): letters restricted to {B, Bd}.
struct TheoremOneInput {
  NCExpr g00;
};

// alpha(b, b^+, M): letters restricted to {b, bd, qM2, qM2i, qN2, qN2i}; all
// M-dependence goes through q^(+-M/2).
struct TheoremTwoInput {
  NCExpr alpha;
};

// G^0_1, G^0_2, G^1_2, G^2_1 of the two-mode generator; bosonic letters only.
struct TwoModeInput {
  NCExpr g0_1;
  NCExpr g0_2;
  NCExpr g1_2;
  NCExpr g2_1;
};

struct UniquenessResult {
  Matrix solution;
  int nullity = 0;
  int unknowns = 0;
  double residual = 0.0;
  int headroom = 0;
};

struct IntertwinerResult {
  std::string mode;
  Matrix a;
  // Derived operator coefficients, e.g. G, D, G00, G11, D10, D01.
  std::map<std::string, Matrix> coefficients;
  // The whole conjugated family on the doubled space.
  Representation primed;
  VerificationReport report;
  std::vector<Check> checks;
  int masked_levels = 0;
  std::optional<UniquenessResult> uniqueness;

  bool pass() const;
  const Check& check(std::string_view name) const;
  DoubledOperator primed_operator(std::string_view letter) const;
};

IntertwinerResult build_theorem1(const TheoremOneInput& input, const Representation& rep);

IntertwinerResult build_theorem2(const TheoremTwoInput& input, const Representation& rep);

// alpha = q^(-M/2) G00(B, B^+) with B = q^(-N/2-M) b expanded, run through the
// pair-algebra pipeline and compared with the supercovariant one.
struct ReductionComparison {
  IntertwinerResult supercovariant;
  IntertwinerResult pair;
  NCExpr alpha;
  double generator_deviation = 0.0;
  double primed_deviation = 0.0;
  std::vector<Check> checks;

  bool pass() const;
};

ReductionComparison crosscheck_pair_reduction(const TheoremOneInput& input, const Representation& rep);

IntertwinerResult build_two_mode(const TwoModeInput& input, const Representation& rep);

// U with U x_A U^+ = x_B built from the vacua of the two annihilators.
Matrix classical_intertwiner(const Representation& rep_a, const Representation& rep_b, const std::string& letter);

// Least-squares solve of {X, F} = G, [X, B] = D over Hermitian odd X supported
// away from the truncation boundary.
UniquenessResult uniqueness_oracle(const Representation& rep, const Matrix& g, const Matrix& d, int headroom);

// Runs uniqueness_oracle on a supercovariant result's G and D and appends the
// nullity and solution-match checks.
void attach_uniqueness(IntertwinerResult& result, const Representation& rep);

// Parses and validates pipeline inputs against the representation's letters.
TheoremOneInput parse_theorem1_input(std::string_view g00, const LetterTable& table);
TheoremTwoInput parse_theorem2_input(std::string_view alpha, const LetterTable& table);
TwoModeInput parse_two_mode_input(std::string_view g0_1, std::string_view g0_2, std::string_view g1_2,
                                  std::string_view g2_1, const LetterTable& table);

nlohmann::json to_json(const IntertwinerResult& result, bool include_primed = false);
nlohmann::json to_json(const UniquenessResult& result);
nlohmann::json to_json(const Check& check);

}  // namespace superosc
