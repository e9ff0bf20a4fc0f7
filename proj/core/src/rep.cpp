#include "superosc/rep.hpp"

#include <cmath>
#include <numbers>

#include "superosc/error.hpp"

namespace superosc {

// ---------------------------------------------------------------------------
// Representation

Eigen::Index Representation::dimension() const {
  Eigen::Index d = 1;
  for (const auto& f : factors) d *= f.dim;
  return d;
}

std::vector<int> Representation::dims() const {
  std::vector<int> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.dim);
  return out;
}

bool Representation::binds(std::string_view name) const { return bindings.find(name) != bindings.end(); }

const Matrix& Representation::binding(std::string_view name) const {
  auto it = bindings.find(name);
  if (it == bindings.end()) throw Error(ErrorCode::UnboundLetter, std::string(name));
  return it->second;
}

int Representation::level(Eigen::Index basis, std::size_t factor) const {
  Eigen::Index stride = 1;
  for (std::size_t k = factors.size(); k-- > factor + 1;) stride *= factors[k].dim;
  return static_cast<int>((basis / stride) % factors[factor].dim);
}

// ---------------------------------------------------------------------------
// Brackets

Complex bracket(int n, Complex q, BracketKind kind) {
  if (q == Complex{0.0, 0.0}) throw Error(ErrorCode::InvalidQ, "q must be nonzero");
  const double limit_eps = 1e-8;
  if (kind == BracketKind::Symmetric) {
    if (std::abs(q - 1.0) < limit_eps) return static_cast<double>(n);
    if (std::abs(q + 1.0) < limit_eps) return ((n - 1) % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(n);
    const Complex den = q - 1.0 / q;
    if (std::abs(den) < 1e-14) throw Error(ErrorCode::DivergentBracket, "q - 1/q vanishes");
    return (std::pow(q, n) - std::pow(q, -n)) / den;
  }
  const Complex den = q + 1.0 / q;
  if (std::abs(den) < 1e-12) throw Error(ErrorCode::DivergentBracket, "q + 1/q vanishes");
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return (std::pow(q, -n) - sign * std::pow(q, n)) / den;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

// Lowering operator with <n-1|x|n> = amplitude(n), n = 1..d-1.
Matrix lowering(int d, const std::function<Complex(int)>& amplitude) {
  Matrix m = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) m(n - 1, n) = amplitude(n);
  return m;
}

Matrix diagonal(int d, const std::function<Complex(int)>& value) {
  Vector v(d);
  for (int n = 0; n < d; ++n) v(n) = value(n);
  return v.asDiagonal();
}

// I (x) ... (x) op (x) ... (x) I with op at position `at`.
Matrix embed(const Matrix& op, std::size_t at, const std::vector<Factor>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    out = kron(out, k == at ? op : Matrix(Matrix::Identity(factors[k].dim, factors[k].dim)));
  }
  return out;
}

Complex half_power_real(double q, double exponent) { return std::pow(q, exponent); }

void require_real_positive(Complex q) {
  if (!(q.real() > 0.0) || q.imag() != 0.0 || !std::isfinite(q.real())) {
    throw Error(ErrorCode::InvalidQ, "q must be real and positive");
  }
}

void require_dim(int dim, int minimum) {
  if (dim < minimum) throw Error(ErrorCode::InvalidDimension, "dimension must be at least " + std::to_string(minimum));
}

// Boson ladder letters on factor `at`: annihilator, creator, number operator and
// q^(+-N/2).
void bind_ladder(Representation& rep, std::size_t at, const std::string& lower, const std::string& raise,
                 const std::string& number, const std::string& half, const std::string& half_inv,
                 const std::function<Complex(int)>& amplitude) {
  const int d = rep.factors[at].dim;
  const double q = rep.q.real();
  Matrix x = embed(lowering(d, amplitude), at, rep.factors);
  rep.bindings[raise] = x.adjoint();
  rep.bindings[lower] = std::move(x);
  rep.bindings[number] = embed(diagonal(d, [](int n) { return Complex(n); }), at, rep.factors);
  rep.bindings[half] = embed(diagonal(d, [q](int n) { return half_power_real(q, 0.5 * n); }), at, rep.factors);
  rep.bindings[half_inv] = embed(diagonal(d, [q](int n) { return half_power_real(q, -0.5 * n); }), at, rep.factors);
  rep.table.declare_pair(lower, raise, Parity::Even);
  rep.table.declare_self_adjoint(number, Parity::Even);
  rep.table.declare_self_adjoint(half, Parity::Even);
  rep.table.declare_self_adjoint(half_inv, Parity::Even);
  rep.headroom[lower] = 0;
  rep.headroom[raise] = 1;
  rep.headroom[number] = 0;
  rep.headroom[half] = 0;
  rep.headroom[half_inv] = 0;
}

// Two-level fermion letters; the diagonal `twist` is applied on the left (Jordan-Wigner string).
void bind_fermion(Representation& rep, std::size_t at, const Vector& twist, const std::string& lower,
                  const std::string& raise, const std::string& number, const std::string& half,
                  const std::string& half_inv) {
  const double q = rep.q.real();
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(0, 1) = 1.0;
  Matrix x = twist.asDiagonal() * embed(sigma, at, rep.factors);
  rep.bindings[raise] = x.adjoint();
  rep.bindings[lower] = std::move(x);
  rep.bindings[number] = embed(diagonal(2, [](int n) { return Complex(n); }), at, rep.factors);
  rep.bindings[half] = embed(diagonal(2, [q](int n) { return half_power_real(q, 0.5 * n); }), at, rep.factors);
  rep.bindings[half_inv] = embed(diagonal(2, [q](int n) { return half_power_real(q, -0.5 * n); }), at, rep.factors);
  rep.table.declare_pair(lower, raise, Parity::Odd);
  rep.table.declare_self_adjoint(number, Parity::Even);
  rep.table.declare_self_adjoint(half, Parity::Even);
  rep.table.declare_self_adjoint(half_inv, Parity::Even);
  for (const auto* name : {&lower, &raise, &number, &half, &half_inv}) rep.headroom[*name] = 0;
}

// (-1)^(sum of levels of the listed factors).
ParityVector parity_from(const Representation& rep, const std::vector<std::size_t>& odd_factors) {
  ParityVector p(static_cast<std::size_t>(rep.dimension()), 0);
  for (Eigen::Index i = 0; i < rep.dimension(); ++i) {
    int total = 0;
    for (auto f : odd_factors) total += rep.level(i, f);
    p[static_cast<std::size_t>(i)] = total % 2;
  }
  return p;
}

Representation build_boson_like(int dim, Complex q, const std::string& lower, const std::string& raise,
                                const std::function<Complex(int)>& amplitude) {
  Representation rep;
  rep.q = q;
  rep.factors = {Factor{FactorKind::Boson, dim}};
  bind_ladder(rep, 0, lower, raise, "N", "qN2", "qN2i", amplitude);
  rep.parity = parity_from(rep, {});
  return rep;
}

Representation build_single_fermion(Complex q) {
  Representation rep;
  rep.q = q;
  rep.factors = {Factor{FactorKind::Fermion, 2}};
  bind_fermion(rep, 0, Vector::Ones(2), "c", "cd", "M", "qM2", "qM2i");
  rep.parity = parity_from(rep, {0});
  return rep;
}

}  // namespace

Representation build_rep(RepKind kind, const RepParams& params) {
  require_real_positive(params.q);
  const double q = params.q.real();
  switch (kind) {
    case RepKind::Boson:
      require_dim(params.dim, 2);
      return build_boson_like(params.dim, params.q, "b", "bd", [](int n) { return std::sqrt(Complex(n)); });

    case RepKind::QBoson:
      require_dim(params.dim, 2);
      return build_boson_like(params.dim, params.q, "a", "ad",
                              [q](int n) { return std::sqrt(bracket(n, q, BracketKind::Symmetric)); });

    case RepKind::Fermion:
      if (params.dim != 2) throw Error(ErrorCode::InvalidDimension, "a fermion mode has dimension 2");
      return build_single_fermion(params.q);

    case RepKind::QFermion: {
      if (params.dim != 2) throw Error(ErrorCode::InvalidDimension, "a fermion mode has dimension 2");
      Representation rep = build_single_fermion(params.q);
      rep.bindings["f"] = rep.binding("qM2") * rep.binding("c");
      rep.bindings["fd"] = rep.binding("cd") * rep.binding("qM2");
      rep.table.declare_pair("f", "fd", Parity::Odd);
      rep.headroom["f"] = 0;
      rep.headroom["fd"] = 0;
      return rep;
    }

    case RepKind::QFermionParth: {
      require_dim(params.dim, 2);
      Representation rep;
      rep.q = params.q;
      rep.factors = {Factor{FactorKind::Boson, params.dim}};
      bind_ladder(rep, 0, "b", "bd", "M", "qM2", "qM2i", [](int n) { return std::sqrt(Complex(n)); });
      // phi(M) = sqrt([M+1]^f/(M+1)), principal branch. The creator is
      // b^+ phi(M) with the same branch (no conjugation), so that f^+ f = [M]^f
      // holds with its sign.
      Matrix phi = diagonal(params.dim, [q](int n) {
        return std::sqrt(bracket(n + 1, q, BracketKind::Fermionic) / static_cast<double>(n + 1));
      });
      rep.bindings["f"] = phi * rep.binding("b");
      rep.bindings["fd"] = rep.binding("bd") * phi;
      rep.table.declare_pair("f", "fd", Parity::Odd);
      rep.headroom["f"] = 0;
      rep.headroom["fd"] = 2;
      rep.parity = parity_from(rep, {0});
      return rep;
    }
  }
  throw Error(ErrorCode::InvalidFormat, "unknown representation kind");
}

Representation root_of_unity_qboson(int m) {
  require_dim(m, 2);
  const Complex q = std::polar(1.0, std::numbers::pi / m);
  Representation rep;
  rep.q = q;
  rep.factors = {Factor{FactorKind::Exact, m}};
  // [n] = sin(n pi/m)/sin(pi/m) is real and nonnegative for 0 <= n <= m.
  Matrix a = lowering(m, [m](int n) {
    return Complex(std::sqrt(std::max(0.0, std::sin(n * std::numbers::pi / m) / std::sin(std::numbers::pi / m))));
  });
  rep.bindings["ad"] = a.adjoint();
  rep.bindings["a"] = std::move(a);
  rep.bindings["N"] = diagonal(m, [](int n) { return Complex(n); });
  const Complex root = std::sqrt(q);
  rep.bindings["qN2"] = diagonal(m, [root](int n) { return std::pow(root, n); });
  rep.bindings["qN2i"] = diagonal(m, [root](int n) { return std::pow(root, -n); });
  rep.table.declare_pair("a", "ad", Parity::Even);
  rep.table.declare_self_adjoint("N", Parity::Even);
  // q^(N/2) is not self-adjoint for complex q; no partner is declared.
  rep.table.declare("qN2", Parity::Even);
  rep.table.declare("qN2i", Parity::Even);
  for (const char* name : {"a", "ad", "N", "qN2", "qN2i"}) rep.headroom[name] = 0;
  rep.parity = ParityVector(static_cast<std::size_t>(m), 0);
  return rep;
}

Representation apply_diagonal_map(const Representation& rep, const DiagonalMap& phi, const std::string& source,
                                  const std::string& target, const std::string& target_adjoint) {
  const Matrix& x = rep.binding(source);
  std::size_t ladder = rep.factors.size();
  for (std::size_t k = 0; k < rep.factors.size(); ++k) {
    if (rep.factors[k].kind == FactorKind::Boson || rep.factors[k].kind == FactorKind::Exact) {
      if (ladder != rep.factors.size()) {
        throw Error(ErrorCode::InvalidDimension, "representation has more than one ladder factor");
      }
      ladder = k;
    }
  }
  if (ladder == rep.factors.size()) throw Error(ErrorCode::InvalidDimension, "representation has no ladder factor");

  Vector values(rep.dimension());
  for (Eigen::Index i = 0; i < rep.dimension(); ++i) values(i) = phi(rep.level(i, ladder));

  Representation out = rep;
  Matrix mapped = values.asDiagonal() * x;
  out.bindings[target_adjoint] = x.adjoint() * values.conjugate().asDiagonal();
  out.bindings[target] = std::move(mapped);
  out.table.declare_pair(target, target_adjoint, rep.table.parity(source));
  const auto partner = rep.table.has_adjoint(source) ? rep.table.adjoint(source) : source;
  out.headroom[target] = rep.headroom.count(source) ? rep.headroom.at(source) : 0;
  out.headroom[target_adjoint] = rep.headroom.count(partner) ? rep.headroom.at(partner) : 0;
  return out;
}

Representation tensor_pair(int dim, double q) {
  require_dim(dim, 2);
  require_real_positive(q);
  Representation rep;
  rep.q = q;
  rep.factors = {Factor{FactorKind::Boson, dim}, Factor{FactorKind::Fermion, 2}};
  bind_ladder(rep, 0, "b", "bd", "N", "qN2", "qN2i",
              [q](int n) { return std::sqrt(bracket(n, q, BracketKind::Symmetric)); });
  bind_fermion(rep, 1, Vector::Ones(2 * dim), "f", "fd", "M", "qM2", "qM2i");
  rep.parity = parity_from(rep, {1});
  return rep;
}

Representation supercovariant_rep(int dim, double q) {
  Representation rep = tensor_pair(dim, q);
  const Matrix& qM2i = rep.binding("qM2i");
  Matrix big_b = rep.binding("qN2i") * qM2i * qM2i * rep.binding("b");
  Matrix big_f = qM2i * rep.binding("f");
  rep.bindings["Bd"] = big_b.adjoint();
  rep.bindings["B"] = std::move(big_b);
  rep.bindings["Fd"] = big_f.adjoint();
  rep.bindings["F"] = std::move(big_f);
  rep.table.declare_pair("B", "Bd", Parity::Even);
  rep.table.declare_pair("F", "Fd", Parity::Odd);
  rep.headroom["B"] = 0;
  rep.headroom["Bd"] = 1;
  rep.headroom["F"] = 0;
  rep.headroom["Fd"] = 0;
  return rep;
}

Representation two_mode_rep(int dim, double q) {
  require_dim(dim, 2);
  require_real_positive(q);
  Representation rep;
  rep.q = q;
  rep.factors = {Factor{FactorKind::Boson, dim}, Factor{FactorKind::Boson, dim}, Factor{FactorKind::Fermion, 2},
                 Factor{FactorKind::Fermion, 2}};
  const auto amplitude = [q](int n) { return std::sqrt(bracket(n, q, BracketKind::Symmetric)); };
  bind_ladder(rep, 0, "b1", "bd1", "N1", "qN1", "qN1i", amplitude);
  bind_ladder(rep, 1, "b2", "bd2", "N2", "qN2", "qN2i", amplitude);
  bind_fermion(rep, 2, Vector::Ones(rep.dimension()), "f1", "fd1", "M1", "qM1", "qM1i");
  const Vector string = embed(parity_operator(ParityVector{0, 1}), 2, rep.factors).diagonal();
  bind_fermion(rep, 3, string, "f2", "fd2", "M2", "qM2", "qM2i");
  rep.parity = parity_from(rep, {2, 3});
  return rep;
}

Representation unitary_transform(const Representation& rep, const Matrix& v) {
  if (v.rows() != rep.dimension() || v.cols() != rep.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "transform has the wrong size");
  }
  Representation out = rep;
  const Matrix vd = v.adjoint();
  for (auto& [name, m] : out.bindings) m = v * m * vd;
  return out;
}

Representation canonical_rep(std::string_view algebra, int dim, double q) {
  if (algebra == "heisenberg") return build_rep(RepKind::Boson, {dim, q});
  if (algebra == "fermion") return build_rep(RepKind::Fermion, {2, q});
  if (algebra == "qboson") return build_rep(RepKind::QBoson, {dim, q});
  if (algebra == "qfermion") return build_rep(RepKind::QFermion, {2, q});
  if (algebra == "qfermion_parth") return build_rep(RepKind::QFermionParth, {dim, q});
  if (algebra == "qpair") return tensor_pair(dim, q);
  if (algebra == "supercov") return supercovariant_rep(dim, q);
  if (algebra == "qmulti2") return two_mode_rep(dim, q);
  throw Error(ErrorCode::UnknownAlgebra, std::string(algebra));
}

}  // namespace superosc
