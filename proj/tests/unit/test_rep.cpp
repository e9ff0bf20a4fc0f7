#include "support.hpp"

#include <numbers>

#include "superosc/rep.hpp"
#include "superosc/rep_io.hpp"
#include "superosc/superalg.hpp"

using namespace superosc;
using superosc::test::bracket_by_sum;
using superosc::test::error_code;
using superosc::test::lowering_oracle;

namespace {

bool is_real_diagonal(const Matrix& m) {
  return max_abs(m - Matrix(m.diagonal().asDiagonal())) == 0.0 && m.diagonal().imag().cwiseAbs().maxCoeff() == 0.0;
}

std::vector<Representation> all_builders(double q) {
  return {build_rep(RepKind::Boson, {10, q}), build_rep(RepKind::Fermion, {2, q}),
          build_rep(RepKind::QBoson, {10, q}), build_rep(RepKind::QFermion, {2, q}),
          tensor_pair(10, q),                  supercovariant_rep(10, q),
          two_mode_rep(4, q)};
}

}  // namespace

TEST_CASE("bracket values", "[rep][bracket]") {
  CHECK(bracket(0, 1.7, BracketKind::Symmetric) == Complex{0.0, 0.0});
  CHECK(std::abs(bracket(3, std::polar(1.0, std::numbers::pi / 3), BracketKind::Symmetric)) < 1e-15);
  CHECK(std::abs(bracket(2, 2.0, BracketKind::Symmetric) - 2.5) < 1e-15);
  CHECK(std::abs(bracket(2, 2.0, BracketKind::Fermionic) + 1.5) < 1e-15);
  CHECK(bracket(7, 1.0, BracketKind::Symmetric) == Complex{7.0, 0.0});
  CHECK(std::abs(bracket(7, 1.0 + 1e-10, BracketKind::Symmetric) - 7.0) < 1e-8);
  CHECK(error_code([] { bracket(2, 0.0, BracketKind::Symmetric); }) == ErrorCode::InvalidQ);
  CHECK(error_code([] { bracket(2, Complex{0.0, 1.0}, BracketKind::Fermionic); }) == ErrorCode::DivergentBracket);
}

TEST_CASE("bracket agrees with the geometric-sum oracle", "[rep][bracket][property]") {
  for (double q : {0.5, 1.3, 2.0}) {
    for (int n = 0; n < 32; ++n) {
      const Complex v = bracket(n, q, BracketKind::Symmetric);
      const double scale = std::max(1.0, std::abs(v));
      CHECK(std::abs(v - bracket_by_sum(n, q)) <= 1e-12 * scale);
      CHECK(std::abs(v - bracket(n, 1.0 / q, BracketKind::Symmetric)) <= 1e-13 * scale);
      const Complex next = bracket(n + 1, q, BracketKind::Symmetric);
      CHECK(std::abs(next - v / q - std::pow(q, n)) <= 1e-12 * std::max(1.0, std::abs(next)));
    }
  }
}

TEST_CASE("Fock ladders match hand-built matrices", "[rep][build]") {
  const Representation boson = build_rep(RepKind::Boson, {3, 1.0});
  CHECK(boson.binding("b")(0, 1) == Complex{1.0, 0.0});
  CHECK(std::abs(boson.binding("b")(1, 2) - std::sqrt(2.0)) < 1e-15);

  const Representation fermion = build_rep(RepKind::Fermion, {2, 1.0});
  Matrix c(2, 2);
  c << 0.0, 1.0, 0.0, 0.0;
  CHECK(max_abs(fermion.binding("c") - c) == 0.0);

  const Representation qb = build_rep(RepKind::QBoson, {3, 2.0});
  CHECK(std::abs(qb.binding("a")(1, 2) - std::sqrt(2.5)) < 1e-15);

  const Representation big = build_rep(RepKind::QBoson, {16, 1.3});
  const Matrix oracle = lowering_oracle(16, [](int n) { return std::sqrt(bracket_by_sum(n, 1.3)); });
  CHECK(max_abs(big.binding("a") - oracle) < 1e-13);

  CHECK(error_code([] { build_rep(RepKind::Boson, {1, 1.0}); }) == ErrorCode::InvalidDimension);
  CHECK(error_code([] { build_rep(RepKind::QBoson, {4, -1.0}); }) == ErrorCode::InvalidQ);
  CHECK(error_code([] { build_rep(RepKind::QBoson, {4, Complex{1.0, 1.0}}); }) == ErrorCode::InvalidQ);
  CHECK(error_code([] { build_rep(RepKind::Fermion, {3, 1.0}); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("representation invariants", "[rep][property]") {
  for (double q : {0.5, 1.3, 2.0}) {
    for (const auto& rep : all_builders(q)) {
      const auto n = rep.dimension();
      for (const auto& [name, m] : rep.bindings) {
        CHECK(m.rows() == n);
        CHECK(m.cols() == n);
        const auto& entry = rep.table.entries().at(name);
        if (!entry.adjoint.empty()) {
          CHECK(max_abs(rep.binding(entry.adjoint) - m.adjoint()) == 0.0);
        }
      }
      for (const char* number : {"N", "M", "N1", "N2", "M1", "M2"}) {
        if (rep.binds(number)) CHECK(is_real_diagonal(rep.binding(number)));
      }
      // parity = (-1)^(fermion number)
      Matrix fermions = Matrix::Zero(n, n);
      for (const char* number : {"M", "M1", "M2"}) {
        if (rep.binds(number) && rep.factors.size() > 1) fermions += rep.binding(number);
      }
      if (rep.factors.size() == 1 && rep.factors[0].kind == FactorKind::Fermion) fermions = rep.binding("M");
      for (Eigen::Index i = 0; i < n; ++i) {
        CHECK(rep.parity[static_cast<std::size_t>(i)] == static_cast<int>(std::lround(fermions(i, i).real())) % 2);
      }
    }
  }
}

TEST_CASE("number operators shift ladders exactly", "[rep][property]") {
  const Representation rep = tensor_pair(12, 1.3);
  const Matrix& b = rep.binding("b");
  const Matrix& n = rep.binding("N");
  CHECK(max_abs(commutator(n, b) + b) <= 1e-14);
  CHECK(max_abs(commutator(n, rep.binding("bd")) - rep.binding("bd")) <= 1e-14);
  CHECK(max_abs(commutator(rep.binding("M"), rep.binding("f")) + rep.binding("f")) <= 1e-14);
}

TEST_CASE("root-of-unity representation closes exactly", "[rep][root]") {
  for (int m : {3, 5, 8}) {
    const Representation rep = root_of_unity_qboson(m);
    CHECK(rep.dimension() == m);
    for (const auto& [name, h] : rep.headroom) CHECK(h == 0);
    const VerificationReport report = verify(rep, builtin_algebra("qboson"), 1e-12, 0);
    CHECK(report.pass);
    CHECK(report.max_residual() <= 1e-12);

    // (a a^+ - q a^+ a)|m-1> = q^-(m-1)|m-1>
    const Matrix& a = rep.binding("a");
    const Matrix lhs = a * rep.binding("ad") - rep.q * rep.binding("ad") * a;
    CHECK(std::abs(lhs(m - 1, m - 1) - std::pow(rep.q, -(m - 1))) < 1e-12);
  }
  const Representation two = root_of_unity_qboson(2);
  CHECK(max_abs(two.binding("a") * two.binding("a")) < 1e-15);
  CHECK(error_code([] { root_of_unity_qboson(1); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("diagonal maps transport the boson", "[rep][transport]") {
  const Representation boson = build_rep(RepKind::Boson, {10, 1.0});
  const Representation same = apply_diagonal_map(boson, [](int) { return Complex{1.0, 0.0}; }, "b", "a", "ad");
  CHECK(max_abs(same.binding("a") - boson.binding("b")) == 0.0);
  CHECK(same.binds("b"));

  const double q = 2.0;
  const auto phi = [q](int n) { return std::sqrt(bracket(n + 1, q, BracketKind::Symmetric) / double(n + 1)); };
  const Representation transported = apply_diagonal_map(boson, phi, "b", "a", "ad");
  const Matrix ada = transported.binding("ad") * transported.binding("a");
  for (int n = 0; n < 10; ++n) CHECK(std::abs(ada(n, n) - bracket_by_sum(n, q)) < 1e-12);

  const int m = 4;
  const Complex root = std::polar(1.0, std::numbers::pi / m);
  CHECK(std::abs(std::sqrt(bracket(m, root, BracketKind::Symmetric) / double(m))) < 1e-7);

  CHECK(error_code([&] { apply_diagonal_map(boson, phi, "x", "a", "ad"); }) == ErrorCode::UnboundLetter);
}

TEST_CASE("tensor pair and supercovariant family", "[rep][pair]") {
  const Representation pair = tensor_pair(12, 1.3);
  CHECK(pair.dimension() == 24);
  CHECK(pair.dims() == std::vector<int>{12, 2});
  CHECK(max_abs(commutator(pair.binding("b"), pair.binding("f"))) == 0.0);
  const Matrix m = pair.binding("M");
  for (Eigen::Index i = 0; i < 24; ++i) CHECK((m(i, i) == 0.0 || m(i, i) == 1.0));

  const Representation sc = supercovariant_rep(12, 1.3);
  const Matrix& f = sc.binding("F");
  const Matrix& fd = sc.binding("Fd");
  CHECK(max_abs(f * fd + fd * f - Matrix::Identity(24, 24)) <= 1e-15);
  const Matrix bf = sc.binding("B") * f - 1.3 * f * sc.binding("B");
  CHECK(max_abs(mask_boundary(bf, sc, 2)) <= 1e-12);

  const Representation classical = supercovariant_rep(12, 1.0);
  CHECK(max_abs(classical.binding("B") - classical.binding("b")) == 0.0);
  CHECK(max_abs(classical.binding("F") - classical.binding("f")) == 0.0);
}

TEST_CASE("two-mode fermions anticommute across modes", "[rep][two_mode]") {
  const Representation rep = two_mode_rep(3, 1.3);
  CHECK(rep.dims() == std::vector<int>{3, 3, 2, 2});
  CHECK(max_abs(anticommutator(rep.binding("f1"), rep.binding("f2"))) == 0.0);
  CHECK(max_abs(anticommutator(rep.binding("f1"), rep.binding("fd2"))) == 0.0);
  CHECK(max_abs(commutator(rep.binding("b1"), rep.binding("f2"))) == 0.0);
}

TEST_CASE("parth fermion keeps the sign of the fermionic bracket", "[rep][parth]") {
  // q <= 1: every [n]^f >= 0 and fd is the conjugate transpose of f.
  const Representation low = build_rep(RepKind::QFermionParth, {10, 0.5});
  CHECK(max_abs(low.binding("fd") - low.binding("f").adjoint()) == 0.0);
  // q > 1: f^+ f = [M]^f with negative entries.
  const Representation high = build_rep(RepKind::QFermionParth, {10, 2.0});
  const Matrix fdf = high.binding("fd") * high.binding("f");
  for (int n = 0; n < 10; ++n) CHECK(std::abs(fdf(n, n) - bracket(n, 2.0, BracketKind::Fermionic)) < 1e-12);
  CHECK(fdf(2, 2).real() < 0.0);
}

TEST_CASE("representation JSON round trip", "[rep][io][property]") {
  for (const auto& rep : {supercovariant_rep(5, 1.3), two_mode_rep(3, 0.5), root_of_unity_qboson(5)}) {
    const nlohmann::json j = to_json(rep);
    CHECK(j.contains("q"));
    CHECK(j.contains("dims"));
    CHECK(j.contains("parity"));
    CHECK(j.contains("bindings"));
    CHECK(j.contains("headroom"));
    const Representation back = representation_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.q == rep.q);
    CHECK(back.parity == rep.parity);
    CHECK(back.dims() == rep.dims());
    CHECK(back.headroom == rep.headroom);
    REQUIRE(back.bindings.size() == rep.bindings.size());
    for (const auto& [name, m] : rep.bindings) CHECK(max_abs(back.binding(name) - m) == 0.0);
    CHECK(to_json(back) == j);
  }
  CHECK(error_code([] { representation_from_json(nlohmann::json{{"q", 1}}); }) == ErrorCode::InvalidFormat);
}
