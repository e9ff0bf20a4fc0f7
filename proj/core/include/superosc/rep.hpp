#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "superosc/expr.hpp"
#include "superosc/matrix.hpp"

namespace superosc {

// How a tensor factor behaves at its top level.
enum class FactorKind {
  Boson,      // truncated Fock ladder: relations fail near the top level
  Fermion,    // two-level, exact
  Exact,      // finite ladder with no truncation error (root of unity)
  Grassmann,  // the {1, theta} factor of a doubled space
};

struct Factor {
  FactorKind kind = FactorKind::Boson;
  int dim = 2;
};

// Named matrices realizing an operator family on a tensor-product Fock space.
// Basis ordering: the first factor varies slowest.
struct Representation {
  std::map<std::string, Matrix, std::less<>> bindings;
  std::vector<Factor> factors;
  Complex q{1.0, 0.0};
  ParityVector parity;
  // Letter -> number of top ladder levels one application can invalidate.
  std::map<std::string, int> headroom;
  LetterTable table;

  Eigen::Index dimension() const;
  std::vector<int> dims() const;
  bool binds(std::string_view name) const;
  const Matrix& binding(std::string_view name) const;
  // Index of basis state `basis` within factor `factor`.
  int level(Eigen::Index basis, std::size_t factor) const;
};

enum class BracketKind { Symmetric, Fermionic };

// Symmetric: [n] = (q^n - q^-n)/(q - q^-1), limit n at q = 1 (and
// (-1)^(n-1) n at q = -1). Fermionic: [n]^f = (q^-n - (-1)^n q^n)/(q + q^-1).
Complex bracket(int n, Complex q, BracketKind kind);

enum class RepKind {
  Boson,          // b b^+ - b^+ b = 1
  Fermion,        // c c^+ + c^+ c = 1
  QBoson,         // a a^+ - q a^+ a = q^-N
  QFermion,       // f f^+ + q f^+ f = q^M, f = q^(M/2) c
  QFermionParth,  // f f^+ + q f^+ f = q^-M, f = sqrt([M+1]^f/(M+1)) b
};

struct RepParams {
  int dim = 16;
  Complex q{1.0, 0.0};
};

Representation build_rep(RepKind kind, const RepParams& params);

// q = exp(i pi/m); the q-boson ladder closes exactly on m states.
Representation root_of_unity_qboson(int m);

using DiagonalMap = std::function<Complex(int)>;

// Binds target = phi(n)*source and target_adjoint = source^+ phi(n)^+, with n the
// level of the single ladder factor of `rep`.
Representation apply_diagonal_map(const Representation& rep, const DiagonalMap& phi,
                                  const std::string& source, const std::string& target,
                                  const std::string& target_adjoint);

// Every binding X replaced by V X V^+.
Representation unitary_transform(const Representation& rep, const Matrix& v);

// Independent boson (b b^+ - q^-1 b^+ b = q^N) and q-fermion (f f^+ + q f^+ f = q^M)
// on dims [dim, 2].
Representation tensor_pair(int dim, double q);

// tensor_pair plus B = q^(-N/2-M) b, F = q^(-M/2) f.
Representation supercovariant_rep(int dim, double q);

// Two independent boson/fermion pairs on dims [dim, dim, 2, 2]. The fermions of
// different modes anticommute (graded tensor product). Letters carry a mode
// suffix: b1, bd1, N1, qN1 (= q^(N1/2)), qN1i, f1, fd1, M1, qM1, qM1i, ...
Representation two_mode_rep(int dim, double q);

// The representation a builtin algebra is checked against by default.
Representation canonical_rep(std::string_view algebra, int dim, double q);

}  // namespace superosc
