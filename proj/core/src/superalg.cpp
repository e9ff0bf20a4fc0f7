#include "superosc/superalg.hpp"

#include <algorithm>

#include <Eigen/SparseCore>

#include "superosc/error.hpp"
#include "superosc/rep_io.hpp"

namespace superosc {

namespace {

constexpr int kBosonic = 2;
constexpr int kFermionic = 0;

struct RelationText {
  const char* name;
  const char* lhs;
  const char* rhs;
  int degree;
};

void declare_boson(LetterTable& t, const std::string& lower, const std::string& raise, const std::string& number,
                   const std::string& half, const std::string& half_inv) {
  t.declare_pair(lower, raise, Parity::Even);
  t.declare_self_adjoint(number, Parity::Even);
  t.declare_self_adjoint(half, Parity::Even);
  t.declare_self_adjoint(half_inv, Parity::Even);
}

void declare_fermion(LetterTable& t, const std::string& lower, const std::string& raise, const std::string& number,
                     const std::string& half, const std::string& half_inv) {
  t.declare_pair(lower, raise, Parity::Odd);
  t.declare_self_adjoint(number, Parity::Even);
  t.declare_self_adjoint(half, Parity::Even);
  t.declare_self_adjoint(half_inv, Parity::Even);
}

AlgebraSpec make_spec(std::string name, LetterTable table, const std::vector<RelationText>& rows) {
  AlgebraSpec spec;
  spec.name = std::move(name);
  spec.table = std::move(table);
  for (const auto& r : rows) {
    spec.relations.push_back(Relation{r.name, parse(r.lhs, spec.table), parse(r.rhs, spec.table), r.degree});
  }
  return spec;
}

// Graded brackets of every unordered pair of distinct letters that the
// two-mode algebra requires to vanish.
std::vector<RelationText> independent_mode_relations(std::vector<std::string>& storage) {
  const std::vector<std::pair<std::string, bool>> letters = {
      {"b1", false}, {"bd1", false}, {"f1", true}, {"fd1", true},
      {"b2", false}, {"bd2", false}, {"f2", true}, {"fd2", true}};
  auto partners = [](const std::string& x, const std::string& y) {
    auto base = [](std::string s) {
      if (s.size() > 2 && s[1] == 'd') s.erase(1, 1);
      return s;
    };
    return base(x) == base(y);
  };
  std::vector<std::tuple<std::string, std::string, std::string>> triples;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      const auto& [x, ox] = letters[i];
      const auto& [y, oy] = letters[j];
      if (partners(x, y)) continue;
      const char* sign = (ox && oy) ? " + " : " - ";
      triples.emplace_back("cross_" + x + "_" + y, x + "*" + y + sign + y + "*" + x, "0");
    }
  }
  for (const char* f : {"f1", "fd1", "f2", "fd2"}) {
    triples.emplace_back(std::string(f) + "_nilpotent", std::string(f) + "*" + f, "0");
  }
  storage.clear();
  storage.reserve(triples.size() * 3);
  for (auto& [n, l, r] : triples) {
    storage.push_back(n);
    storage.push_back(l);
    storage.push_back(r);
  }
  std::vector<RelationText> rows;
  for (std::size_t k = 0; k + 2 < storage.size(); k += 3) {
    rows.push_back({storage[k].c_str(), storage[k + 1].c_str(), storage[k + 2].c_str(), kBosonic});
  }
  return rows;
}

}  // namespace

std::vector<std::string> builtin_algebra_names() {
  return {"heisenberg", "fermion", "qboson", "qfermion", "qfermion_parth", "qpair", "supercov", "qmulti2"};
}

AlgebraSpec builtin_algebra(std::string_view name) {
  LetterTable t;
  if (name == "heisenberg") {
    declare_boson(t, "b", "bd", "N", "qN2", "qN2i");
    return make_spec("heisenberg", t, {{"b_ladder", "b*bd - bd*b", "1", 1}});
  }
  if (name == "fermion") {
    declare_fermion(t, "c", "cd", "M", "qM2", "qM2i");
    return make_spec("fermion", t, {{"c_anticommute", "c*cd + cd*c", "1", kFermionic}});
  }
  if (name == "qboson") {
    declare_boson(t, "a", "ad", "N", "qN2", "qN2i");
    return make_spec("qboson", t,
                     {{"a_ladder", "a*ad - q*ad*a", "qN2i*qN2i", kBosonic},
                      {"N_lowers_a", "N*a - a*N", "-a", kBosonic},
                      {"N_raises_ad", "N*ad - ad*N", "ad", kBosonic}});
  }
  if (name == "qfermion") {
    declare_fermion(t, "f", "fd", "M", "qM2", "qM2i");
    return make_spec("qfermion", t,
                     {{"f_ladder", "f*fd + q*fd*f", "qM2*qM2", kFermionic},
                      {"M_lowers_f", "M*f - f*M", "-f", kFermionic},
                      {"M_raises_fd", "M*fd - fd*M", "fd", kFermionic}});
  }
  if (name == "qfermion_parth") {
    declare_fermion(t, "f", "fd", "M", "qM2", "qM2i");
    return make_spec("qfermion_parth", t,
                     {{"f_ladder", "f*fd + q*fd*f", "qM2i*qM2i", kBosonic},
                      {"M_lowers_f", "M*f - f*M", "-f", kBosonic},
                      {"M_raises_fd", "M*fd - fd*M", "fd", kBosonic}});
  }
  if (name == "qpair" || name == "supercov") {
    declare_boson(t, "b", "bd", "N", "qN2", "qN2i");
    declare_fermion(t, "f", "fd", "M", "qM2", "qM2i");
    if (name == "qpair") {
      return make_spec("qpair", t,
                       {{"b_f_commute", "b*f - f*b", "0", kBosonic},
                        {"b_fd_commute", "b*fd - fd*b", "0", kBosonic},
                        {"f_nilpotent", "f*f", "0", kFermionic},
                        {"fd_nilpotent", "fd*fd", "0", kFermionic},
                        {"b_ladder", "b*bd - q^(-1)*bd*b", "qN2*qN2", kBosonic},
                        {"f_ladder", "f*fd + q*fd*f", "qM2*qM2", kFermionic},
                        {"N_lowers_b", "N*b - b*N", "-b", kBosonic},
                        {"N_raises_bd", "N*bd - bd*N", "bd", kBosonic},
                        {"M_lowers_f", "M*f - f*M", "-f", kFermionic},
                        {"M_raises_fd", "M*fd - fd*M", "fd", kFermionic}});
    }
    t.declare_pair("B", "Bd", Parity::Even);
    t.declare_pair("F", "Fd", Parity::Odd);
    return make_spec("supercov", t,
                     {{"BF_qcommute", "B*F", "q*F*B", kBosonic},
                      {"BdFd_qcommute", "Bd*Fd", "q^(-1)*Fd*Bd", kBosonic},
                      {"BFd_qcommute", "B*Fd", "q^(-1)*Fd*B", kBosonic},
                      {"BdF_qcommute", "Bd*F", "q*F*Bd", kBosonic},
                      {"F_nilpotent", "F*F", "0", kFermionic},
                      {"Fd_nilpotent", "Fd*Fd", "0", kFermionic},
                      {"B_ladder", "B*Bd - q^(-2)*Bd*B", "1 + (q^(-2) - 1)*Fd*F", kBosonic},
                      {"F_anticommute", "F*Fd + Fd*F", "1", kFermionic},
                      {"FdF_idempotent", "Fd*F*Fd*F", "Fd*F", kFermionic}});
  }
  if (name == "qmulti2") {
    std::vector<RelationText> rows;
    for (const char* k : {"1", "2"}) {
      const std::string s(k);
      declare_boson(t, "b" + s, "bd" + s, "N" + s, "qN" + s, "qN" + s + "i");
      declare_fermion(t, "f" + s, "fd" + s, "M" + s, "qM" + s, "qM" + s + "i");
    }
    static const std::vector<std::string> per_mode = [] {
      std::vector<std::string> v;
      for (const std::string s : {"1", "2"}) {
        v.insert(v.end(), {"b" + s + "_ladder", "b" + s + "*bd" + s + " - q^(-1)*bd" + s + "*b" + s,
                           "qN" + s + "*qN" + s});
        v.insert(v.end(), {"f" + s + "_ladder", "f" + s + "*fd" + s + " + q*fd" + s + "*f" + s,
                           "qM" + s + "*qM" + s});
        v.insert(v.end(), {"N" + s + "_lowers_b" + s, "N" + s + "*b" + s + " - b" + s + "*N" + s, "-b" + s});
        v.insert(v.end(), {"N" + s + "_raises_bd" + s, "N" + s + "*bd" + s + " - bd" + s + "*N" + s, "bd" + s});
        v.insert(v.end(), {"M" + s + "_lowers_f" + s, "M" + s + "*f" + s + " - f" + s + "*M" + s, "-f" + s});
        v.insert(v.end(), {"M" + s + "_raises_fd" + s, "M" + s + "*fd" + s + " - fd" + s + "*M" + s, "fd" + s});
      }
      return v;
    }();
    for (std::size_t k = 0; k + 2 < per_mode.size(); k += 3) {
      rows.push_back({per_mode[k].c_str(), per_mode[k + 1].c_str(), per_mode[k + 2].c_str(), kBosonic});
    }
    std::vector<std::string> storage;
    auto cross = independent_mode_relations(storage);
    rows.insert(rows.end(), cross.begin(), cross.end());
    return make_spec("qmulti2", t, rows);
  }
  throw Error(ErrorCode::UnknownAlgebra, std::string(name));
}

double VerificationReport::max_residual() const {
  double worst = 0.0;
  for (const auto& r : relations) worst = std::max(worst, r.residual);
  return worst;
}

std::vector<bool> interior_states(const Representation& rep, int levels) {
  const Eigen::Index dim = rep.dimension();
  std::vector<bool> keep(static_cast<std::size_t>(dim), true);
  if (levels <= 0) return keep;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (std::size_t f = 0; f < rep.factors.size(); ++f) {
      if (rep.factors[f].kind != FactorKind::Boson) continue;
      if (rep.level(i, f) >= rep.factors[f].dim - levels) {
        keep[static_cast<std::size_t>(i)] = false;
        break;
      }
    }
  }
  return keep;
}

Matrix mask_boundary(const Matrix& m, const Representation& rep, int levels) {
  if (m.rows() != rep.dimension() || m.cols() != rep.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix does not match representation dimension");
  }
  Matrix out = m;
  const auto keep = interior_states(rep, levels);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    if (keep[static_cast<std::size_t>(i)]) continue;
    out.row(i).setZero();
    out.col(i).setZero();
  }
  return out;
}

namespace {

// Largest singular value; power iteration on M^+ M above the exact-SVD size.
double spectral_estimate(const Matrix& m) {
  if (m.rows() <= 128) return spectral_norm(m);
  if (max_abs(m) == 0.0) return 0.0;
  const Eigen::SparseMatrix<Complex> s = m.sparseView(Complex{0.0, 0.0}, 0.0);
  const Eigen::SparseMatrix<Complex> sd = s.adjoint();
  Vector v = Vector::Ones(m.cols()).normalized();
  double sigma = 0.0;
  for (int it = 0; it < 60; ++it) {
    Vector w = sd * (s * v);
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    v = w / n;
    sigma = std::sqrt(n);
  }
  return sigma;
}

}  // namespace

VerificationReport verify(const Representation& rep, const AlgebraSpec& spec, double tol,
                          std::optional<int> headroom_override) {
  VerificationReport report;
  report.algebra = spec.name;
  report.q = spec.q.value_or(rep.q);
  report.dims = rep.dims();
  report.tolerance = tol;
  report.headroom_override = headroom_override;
  for (const auto& rel : spec.relations) {
    const Matrix diff = evaluate(rel.lhs, rep, report.q) - evaluate(rel.rhs, rep, report.q);
    const int levels = headroom_override.value_or(rel.ladder_degree);
    const Matrix masked = mask_boundary(diff, rep, levels);
    RelationResult r;
    r.name = rel.name;
    r.residual = max_abs(masked);
    r.spectral = spectral_estimate(masked);
    r.tolerance = tol;
    r.masked_levels = levels;
    r.pass = r.residual <= tol;
    report.relations.push_back(std::move(r));
  }
  std::sort(report.relations.begin(), report.relations.end(),
            [](const RelationResult& a, const RelationResult& b) { return a.name < b.name; });
  report.pass = std::all_of(report.relations.begin(), report.relations.end(),
                            [](const RelationResult& r) { return r.pass; });
  return report;
}

Matrix graded_bracket(const Matrix& x, const Matrix& y, Parity px, Parity py, Complex p, Complex r) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "graded bracket operands differ in shape");
  }
  if (px == Parity::Odd && py == Parity::Odd) return p * (x * y) + r * (y * x);
  return p * (x * y) - r * (y * x);
}

namespace {

void require_homogeneous(const Matrix& m, Parity declared, const ParityVector& parity, const char* which) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != parity.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::string("matrix ") + which + " does not match the parity vector");
  }
  const double wrong = declared == Parity::Even ? odd_part_max_abs(m, parity) : even_part_max_abs(m, parity);
  if (wrong > 1e-12 * std::max(1.0, max_abs(m))) {
    throw Error(ErrorCode::InhomogeneousMatrix, std::string("matrix ") + which + " is not homogeneous");
  }
}

}  // namespace

double jacobi_check(const GradedTriple& t, BracketSign sign) {
  require_homogeneous(t.a, t.pa, t.parity, "A");
  require_homogeneous(t.b, t.pb, t.parity, "B");
  require_homogeneous(t.c, t.pc, t.parity, "C");
  if (t.q1 == 0.0 || t.q2 == 0.0 || t.q3 == 0.0) throw Error(ErrorCode::InvalidQ, "Jacobi parameters must be nonzero");

  auto br = [sign](const Matrix& x, const Matrix& y, Parity px, Parity py, Complex p, Complex r) {
    if (sign == BracketSign::Flipped) return Matrix(p * (x * y) - r * (y * x));
    return graded_bracket(x, y, px, py, p, r);
  };
  const auto eta = [](Parity p) { return static_cast<int>(p); };
  const auto sgn = [](int e) { return (e % 2 == 0) ? 1.0 : -1.0; };

  const Matrix ab = br(t.a, t.b, t.pa, t.pb, t.q3, 1.0 / t.q3);
  const Matrix bc = br(t.b, t.c, t.pb, t.pc, t.q1, 1.0 / t.q1);
  const Matrix ca = br(t.c, t.a, t.pc, t.pa, t.q2, 1.0 / t.q2);
  const Matrix first = br(ab, t.c, t.pa + t.pb, t.pc, t.q1 / t.q2, t.q2 / t.q1);
  const Matrix second =
      sgn(eta(t.pa) * (eta(t.pb) + eta(t.pc))) * br(bc, t.a, t.pb + t.pc, t.pa, t.q2 / t.q3, t.q3 / t.q2);
  const Matrix third =
      sgn(eta(t.pc) * (eta(t.pa) + eta(t.pb))) * br(ca, t.b, t.pc + t.pa, t.pb, t.q3 / t.q1, t.q1 / t.q3);

  const double scale = std::max({max_abs(first), max_abs(second), max_abs(third), max_abs(ab), max_abs(bc),
                                 max_abs(ca)});
  if (scale == 0.0) return 0.0;
  return max_abs(first + second + third) / scale;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : report.relations) {
    rels.push_back({{"name", r.name},
                    {"residual", r.residual},
                    {"spectral", r.spectral},
                    {"masked_levels", r.masked_levels},
                    {"pass", r.pass}});
  }
  nlohmann::json j{{"algebra", report.algebra},
                   {"q", complex_to_json(report.q)},
                   {"dims", report.dims},
                   {"tol", report.tolerance},
                   {"relations", std::move(rels)},
                   {"pass", report.pass}};
  if (report.headroom_override) j["headroom"] = *report.headroom_override;
  return j;
}

}  // namespace superosc
