#include "superosc/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <tuple>

#include <Eigen/SparseCore>

#include "superosc/error.hpp"
#include "superosc/rep.hpp"

namespace superosc {

namespace {

Complex integer_power(Complex base, int n) {
  Complex result{1.0, 0.0};
  const bool invert = n < 0;
  unsigned int e = invert ? static_cast<unsigned int>(-n) : static_cast<unsigned int>(n);
  while (e != 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return invert ? Complex{1.0, 0.0} / result : result;
}

// base^(k/2), exact integer powers whenever k is even.
Complex half_power(Complex base, int k) {
  if (k == 0) return {1.0, 0.0};
  Complex whole = integer_power(base, k >= 0 ? k / 2 : -((-k) / 2));
  if (k % 2 == 0) return whole;
  Complex root = std::sqrt(base);
  return k > 0 ? whole * root : whole / root;
}

}  // namespace

Complex QScalar::evaluate(Complex q) const {
  return value * half_power(q, qpow) * half_power(std::conj(q), qbar_pow);
}

// ---------------------------------------------------------------------------
// LetterTable

void LetterTable::declare(const std::string& name, Parity parity) {
  Entry entry{parity, {}};
  auto [it, inserted] = entries_.emplace(name, entry);
  if (!inserted && it->second.parity != parity) {
    throw Error(ErrorCode::LetterViolation, "letter '" + name + "' redeclared with a new parity");
  }
}

void LetterTable::declare_self_adjoint(const std::string& name, Parity parity) {
  declare(name, parity);
  entries_[name].adjoint = name;
}

void LetterTable::declare_pair(const std::string& letter, const std::string& partner, Parity parity) {
  declare(letter, parity);
  declare(partner, parity);
  entries_[letter].adjoint = partner;
  entries_[partner].adjoint = letter;
}

bool LetterTable::contains(std::string_view name) const { return entries_.find(name) != entries_.end(); }

bool LetterTable::has_adjoint(std::string_view name) const {
  auto it = entries_.find(name);
  return it != entries_.end() && !it->second.adjoint.empty();
}

Parity LetterTable::parity(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error(ErrorCode::UnknownLetter, std::string(name));
  return it->second.parity;
}

const std::string& LetterTable::adjoint(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end() || it->second.adjoint.empty()) {
    throw Error(ErrorCode::UnknownLetter, "no adjoint declared for '" + std::string(name) + "'");
  }
  return it->second.adjoint;
}

void LetterTable::merge(const LetterTable& other) {
  for (const auto& [name, entry] : other.entries_) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
      entries_.emplace(name, entry);
      continue;
    }
    if (it->second.parity != entry.parity ||
        (!it->second.adjoint.empty() && !entry.adjoint.empty() && it->second.adjoint != entry.adjoint)) {
      throw Error(ErrorCode::LetterViolation, "conflicting declarations for '" + name + "'");
    }
    if (it->second.adjoint.empty()) it->second.adjoint = entry.adjoint;
  }
}

// ---------------------------------------------------------------------------
// NCExpr

NCExpr::NCExpr(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

NCExpr NCExpr::constant(Complex value) { return NCExpr({Term{QScalar{value, 0, 0}, {}}}); }

NCExpr NCExpr::scalar(const QScalar& value) { return NCExpr({Term{value, {}}}); }

NCExpr NCExpr::letter(const std::string& name) { return NCExpr({Term{QScalar{}, {name}}}); }

void NCExpr::normalize() {
  auto key = [](const Term& t) { return std::tie(t.word, t.coeff.qpow, t.coeff.qbar_pow); };
  std::stable_sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) { return key(a) < key(b); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && key(merged.back()) == key(t)) {
      merged.back().coeff.value += t.coeff.value;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.value == Complex{0.0, 0.0}; });
  terms_ = std::move(merged);
}

std::set<std::string> NCExpr::letters() const {
  std::set<std::string> out;
  for (const auto& t : terms_) out.insert(t.word.begin(), t.word.end());
  return out;
}

NCExpr NCExpr::operator-() const { return QScalar{Complex{-1.0, 0.0}, 0, 0} * *this; }

NCExpr operator+(const NCExpr& a, const NCExpr& b) {
  std::vector<Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return NCExpr(std::move(terms));
}

NCExpr operator-(const NCExpr& a, const NCExpr& b) { return a + (-b); }

NCExpr operator*(const NCExpr& a, const NCExpr& b) {
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Word w = x.word;
      w.insert(w.end(), y.word.begin(), y.word.end());
      terms.push_back(Term{x.coeff * y.coeff, std::move(w)});
    }
  }
  return NCExpr(std::move(terms));
}

NCExpr operator*(const QScalar& s, const NCExpr& e) {
  std::vector<Term> terms = e.terms_;
  for (auto& t : terms) t.coeff = s * t.coeff;
  return NCExpr(std::move(terms));
}

// ---------------------------------------------------------------------------
// Parser. Recursive descent over
//   expr := term (('+'|'-') term)*
//   term := factor ('*' factor)*
//   factor := primary ('^' INT)?
//   primary := NAME | SCALAR | '(' expr ')'
// with a leading unary minus accepted on terms.

namespace {

class Parser {
 public:
  Parser(std::string_view text, const LetterTable& table) : text_(text), table_(table) {}

  NCExpr parse_all() {
    NCExpr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ErrorCode::SyntaxError, pos_, what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NCExpr parse_expr() {
    NCExpr result = parse_signed_term();
    while (true) {
      if (accept('+')) {
        result = result + parse_term();
      } else if (accept('-')) {
        result = result - parse_term();
      } else {
        return result;
      }
    }
  }

  NCExpr parse_signed_term() {
    if (accept('-')) return -parse_term();
    return parse_term();
  }

  NCExpr parse_term() {
    NCExpr result = parse_factor();
    while (accept('*')) result = result * parse_factor();
    return result;
  }

  std::optional<long> parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      return std::nullopt;
    }
    long value = 0;
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, value);
    if (ec != std::errc{}) throw ParseError(ErrorCode::BadExponent, start, "exponent out of range");
    return value;
  }

  NCExpr parse_factor() {
    NCExpr base = parse_primary();
    if (!accept('^')) return base;
    const std::size_t at = pos_;
    auto exponent = parse_int();
    if (!exponent) throw ParseError(ErrorCode::BadExponent, at, "expected an integer exponent");
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/')) {
      throw ParseError(ErrorCode::BadExponent, at, "exponent must be an integer");
    }
    return power(base, *exponent, at);
  }

  NCExpr power(const NCExpr& base, long n, std::size_t at) const {
    if (n < 0) {
      // Only a bare q-power monomial can be inverted.
      if (base.terms().size() != 1 || !base.terms()[0].word.empty() ||
          base.terms()[0].coeff.value != Complex{1.0, 0.0}) {
        throw ParseError(ErrorCode::BadExponent, at, "negative power of a non-invertible factor");
      }
      QScalar s = base.terms()[0].coeff;
      return NCExpr::scalar(QScalar{Complex{1.0, 0.0}, static_cast<int>(n * s.qpow),
                                    static_cast<int>(n * s.qbar_pow)});
    }
    if (n > 64) throw ParseError(ErrorCode::BadExponent, at, "exponent too large");
    NCExpr result = NCExpr::constant(1.0);
    for (long i = 0; i < n; ++i) result = result * base;
    return result;
  }

  // 'q' | 'qbar' followed optionally by '^(' INT ('/2')? ')'.
  NCExpr parse_q_power(bool conjugate) {
    int half_units = 2;
    skip_ws();
    const std::size_t save = pos_;
    if (accept('^') && accept('(')) {
      const std::size_t at = pos_;
      auto n = parse_int();
      if (!n) throw ParseError(ErrorCode::BadExponent, at, "expected an integer q exponent");
      if (accept('/')) {
        auto den = parse_int();
        if (!den || *den != 2) throw ParseError(ErrorCode::BadExponent, at, "q exponent must be an integer or half-integer");
        half_units = static_cast<int>(*n);
      } else {
        half_units = static_cast<int>(2 * *n);
      }
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        throw ParseError(ErrorCode::BadExponent, at, "q exponent must be an integer or half-integer");
      }
      expect(')');
    } else {
      pos_ = save;
    }
    QScalar s;
    (conjugate ? s.qbar_pow : s.qpow) = half_units;
    return NCExpr::scalar(s);
  }

  std::optional<double> parse_decimal() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    const std::size_t body = end;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
            ((text_[end] == 'e' || text_[end] == 'E') && end > body) ||
            ((text_[end] == '-' || text_[end] == '+') && (text_[end - 1] == 'e' || text_[end - 1] == 'E')))) {
      ++end;
    }
    if (end == body || !(std::isdigit(static_cast<unsigned char>(text_[body])) || text_[body] == '.')) {
      return std::nullopt;
    }
    double value = 0.0;
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text_.data() + end, value);
    if (ec != std::errc{} || ptr != text_.data() + end) {
      pos_ = start;
      return std::nullopt;
    }
    pos_ = end;
    return value;
  }

  NCExpr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      const std::size_t save = pos_;
      if (auto re = parse_decimal()) {
        if (accept(',')) {
          auto im = parse_decimal();
          if (!im) fail("expected imaginary part of complex literal");
          expect(')');
          return NCExpr::constant(Complex{*re, *im});
        }
      }
      pos_ = save;
      NCExpr inner = parse_expr();
      expect(')');
      return inner;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      auto value = parse_decimal();
      if (!value) fail("malformed number");
      return NCExpr::constant(*value);
    }

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (name == "q") return parse_q_power(false);
      if (name == "qbar") return parse_q_power(true);
      if (!table_.contains(name)) throw ParseError(ErrorCode::UnknownLetter, start, "unknown letter '" + name + "'");
      return NCExpr::letter(name);
    }

    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const LetterTable& table_;
  std::size_t pos_ = 0;
};

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_value(Complex v) {
  if (v.imag() == 0.0 && !std::signbit(v.imag()) && v.real() >= 0.0 && !std::signbit(v.real())) {
    return format_double(v.real());
  }
  return "(" + format_double(v.real()) + "," + format_double(v.imag()) + ")";
}

std::string format_q(const char* symbol, int half_units) {
  if (half_units % 2 == 0) return std::string(symbol) + "^(" + std::to_string(half_units / 2) + ")";
  return std::string(symbol) + "^(" + std::to_string(half_units) + "/2)";
}

}  // namespace

NCExpr parse(std::string_view text, const LetterTable& table) { return Parser(text, table).parse_all(); }

std::string to_string(const NCExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < e.terms().size(); ++i) {
    const Term& t = e.terms()[i];
    std::vector<std::string> factors;
    const bool unit = t.coeff.value == Complex{1.0, 0.0};
    if (!unit || (t.word.empty() && t.coeff.qpow == 0 && t.coeff.qbar_pow == 0)) {
      factors.push_back(format_value(t.coeff.value));
    }
    if (t.coeff.qpow != 0) factors.push_back(format_q("q", t.coeff.qpow));
    if (t.coeff.qbar_pow != 0) factors.push_back(format_q("qbar", t.coeff.qbar_pow));
    factors.insert(factors.end(), t.word.begin(), t.word.end());
    if (i > 0) out += " + ";
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k > 0) out += "*";
      out += factors[k];
    }
  }
  return out;
}

NCExpr adjoint(const NCExpr& e, const LetterTable& table) {
  std::vector<Term> terms;
  terms.reserve(e.terms().size());
  for (const auto& t : e.terms()) {
    Word w;
    w.reserve(t.word.size());
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) w.push_back(table.adjoint(*it));
    terms.push_back(Term{QScalar{std::conj(t.coeff.value), t.coeff.qbar_pow, t.coeff.qpow}, std::move(w)});
  }
  return NCExpr(std::move(terms));
}

NCExpr scale_letter(const NCExpr& e, const std::map<std::string, QScalar>& factors) {
  std::vector<Term> terms = e.terms();
  for (auto& t : terms) {
    for (const auto& letter : t.word) {
      if (auto it = factors.find(letter); it != factors.end()) t.coeff = t.coeff * it->second;
    }
  }
  return NCExpr(std::move(terms));
}

NCExpr substitute_letter(const NCExpr& e, const std::string& name, const Term& replacement) {
  std::vector<Term> terms;
  terms.reserve(e.terms().size());
  for (const auto& t : e.terms()) {
    Term out{t.coeff, {}};
    for (const auto& letter : t.word) {
      if (letter == name) {
        out.coeff = out.coeff * replacement.coeff;
        out.word.insert(out.word.end(), replacement.word.begin(), replacement.word.end());
      } else {
        out.word.push_back(letter);
      }
    }
    terms.push_back(std::move(out));
  }
  return NCExpr(std::move(terms));
}

Matrix evaluate(const NCExpr& e, const Representation& rep) { return evaluate(e, rep, rep.q); }

Matrix evaluate(const NCExpr& e, const Representation& rep, Complex q) {
  using Sparse = Eigen::SparseMatrix<Complex>;
  struct Operand {
    const Matrix* dense = nullptr;
    std::optional<Sparse> sparse;
  };
  const Eigen::Index dim = rep.dimension();
  // Fock-space bindings are mostly a few diagonals; multiply those sparsely.
  std::map<std::string, Operand, std::less<>> operands;
  const auto operand = [&](const std::string& name) -> const Operand& {
    auto it = operands.find(name);
    if (it != operands.end()) return it->second;
    const Matrix& m = rep.binding(name);
    if (m.rows() != dim || m.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "binding '" + name + "' has the wrong shape");
    }
    Operand op{&m, std::nullopt};
    const auto nonzero = (m.array() != Complex{0.0, 0.0}).count();
    if (nonzero * 10 < m.size()) op.sparse = m.sparseView(Complex{0.0, 0.0}, 0.0);
    return operands.emplace(name, std::move(op)).first->second;
  };

  Matrix result = Matrix::Zero(dim, dim);
  for (const auto& t : e.terms()) {
    const Complex c = t.coeff.evaluate(q);
    if (t.word.empty()) {
      result.diagonal().array() += c;
      continue;
    }
    std::optional<Sparse> sp;
    std::optional<Matrix> dn;
    for (const auto& letter : t.word) {
      const Operand& op = operand(letter);
      if (!sp && !dn) {
        if (op.sparse) {
          sp = *op.sparse;
        } else {
          dn = *op.dense;
        }
      } else if (dn) {
        if (op.sparse) {
          dn = Matrix(*dn * *op.sparse);
        } else {
          dn = Matrix(*dn * *op.dense);
        }
      } else if (op.sparse) {
        sp = Sparse(*sp * *op.sparse);
      } else {
        dn = Matrix(*sp * *op.dense);
        sp.reset();
      }
    }
    if (dn) {
      result += c * *dn;
    } else {
      for (Eigen::Index k = 0; k < sp->outerSize(); ++k) {
        for (Sparse::InnerIterator it(*sp, k); it; ++it) result(it.row(), it.col()) += c * it.value();
      }
    }
  }
  return result;
}

Parity word_parity(const Word& word, const LetterTable& table) {
  Parity p = Parity::Even;
  for (const auto& letter : word) p = p + table.parity(letter);
  return p;
}

int headroom_degree(const NCExpr& e, const std::map<std::string, int>& headroom) {
  int best = 0;
  for (const auto& t : e.terms()) {
    int sum = 0;
    for (const auto& letter : t.word) {
      if (auto it = headroom.find(letter); it != headroom.end()) sum += it->second;
    }
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace superosc
