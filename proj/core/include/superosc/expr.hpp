#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "superosc/matrix.hpp"

namespace superosc {

struct Representation;

enum class Parity { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

// value * q^(qpow/2) * conj(q)^(qbar_pow/2). The powers stay symbolic until
// evaluation so that rescalings and adjoints are exact.
struct QScalar {
  Complex value{1.0, 0.0};
  int qpow = 0;
  int qbar_pow = 0;

  static QScalar q_half_power(int k) { return QScalar{Complex{1.0, 0.0}, k, 0}; }

  Complex evaluate(Complex q) const;

  friend QScalar operator*(const QScalar& a, const QScalar& b) {
    return QScalar{a.value * b.value, a.qpow + b.qpow, a.qbar_pow + b.qbar_pow};
  }
  bool operator==(const QScalar&) const = default;
};

// Ordered generator names; the empty word is the identity operator.
using Word = std::vector<std::string>;

struct Term {
  QScalar coeff;
  Word word;

  bool operator==(const Term&) const = default;
};

// Declares the generator alphabet: parity of each letter and, where it exists,
// its adjoint partner (B <-> Bd). Self-adjoint letters are their own partner.
class LetterTable {
 public:
  struct Entry {
    Parity parity = Parity::Even;
    std::string adjoint;  // empty when the letter has no declared adjoint
  };

  void declare(const std::string& name, Parity parity);
  void declare_self_adjoint(const std::string& name, Parity parity);
  void declare_pair(const std::string& letter, const std::string& partner, Parity parity);

  bool contains(std::string_view name) const;
  bool has_adjoint(std::string_view name) const;
  Parity parity(std::string_view name) const;
  const std::string& adjoint(std::string_view name) const;

  // Adds every entry of `other`; entries already present must agree.
  void merge(const LetterTable& other);

  const std::map<std::string, Entry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

// Noncommutative polynomial: a sum of QScalar-weighted words. Terms are kept
// sorted by (word, qpow, qbar_pow); identical keys are merged and exact zeros
// dropped. No other rewriting happens.
class NCExpr {
 public:
  NCExpr() = default;
  explicit NCExpr(std::vector<Term> terms);

  static NCExpr constant(Complex value);
  static NCExpr scalar(const QScalar& value);
  static NCExpr letter(const std::string& name);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::set<std::string> letters() const;

  NCExpr operator-() const;
  friend NCExpr operator+(const NCExpr& a, const NCExpr& b);
  friend NCExpr operator-(const NCExpr& a, const NCExpr& b);
  friend NCExpr operator*(const NCExpr& a, const NCExpr& b);
  friend NCExpr operator*(const QScalar& s, const NCExpr& e);

  bool operator==(const NCExpr&) const = default;

 private:
  void normalize();

  std::vector<Term> terms_;
};

NCExpr parse(std::string_view text, const LetterTable& table);

// Output reparses to an equal NCExpr.
std::string to_string(const NCExpr& e);

NCExpr adjoint(const NCExpr& e, const LetterTable& table);

NCExpr scale_letter(const NCExpr& e, const std::map<std::string, QScalar>& factors);

NCExpr substitute_letter(const NCExpr& e, const std::string& name, const Term& replacement);

Matrix evaluate(const NCExpr& e, const Representation& rep);
// Same, with the deformation parameter taken from `q` instead of the representation.
Matrix evaluate(const NCExpr& e, const Representation& rep, Complex q);

Parity word_parity(const Word& word, const LetterTable& table);

// Largest per-word sum of letter headrooms (letters absent from the map count 0).
int headroom_degree(const NCExpr& e, const std::map<std::string, int>& headroom);

}  // namespace superosc
