#include "support.hpp"

#include "superosc/grassmann.hpp"
#include "superosc/random.hpp"
#include "superosc/rep.hpp"
#include "superosc/superalg.hpp"

using namespace superosc;
using superosc::test::error_code;

namespace {

const Representation& rep() {
  static const Representation r = supercovariant_rep(6, 1.3);
  return r;
}

Matrix random_homogeneous(Rng& rng, Parity p) {
  const auto n = rep().dimension();
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if ((rep().parity[static_cast<std::size_t>(i)] ^ rep().parity[static_cast<std::size_t>(j)]) == static_cast<int>(p)) {
        m(i, j) = random_complex(rng);
      }
    }
  }
  return m;
}

Matrix random_generator(Rng& rng) {
  const Matrix x = random_homogeneous(rng, Parity::Odd);
  return x + x.adjoint();
}

}  // namespace

TEST_CASE("lift is an exact homomorphism", "[grassmann][lift]") {
  Rng rng(1);
  const auto n = rep().dimension();
  CHECK(max_abs(lift(Matrix::Identity(n, n), rep()).matrix() - Matrix::Identity(2 * n, 2 * n)) == 0.0);
  const Matrix x = random_homogeneous(rng, Parity::Even);
  const Matrix y = random_homogeneous(rng, Parity::Odd);
  CHECK(max_abs((lift(x, rep()) * lift(y, rep())).matrix() - lift(x * y, rep()).matrix()) == 0.0);
  CHECK(error_code([] { lift(Matrix::Zero(3, 3), rep()); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("theta realizes the Grassmann relations exactly", "[grassmann][theta]") {
  const DoubledOperator theta = theta_op(rep());
  CHECK(max_abs((theta * theta).matrix()) == 0.0);
  for (const char* odd : {"F", "Fd"}) {
    const DoubledOperator x = lift(rep().binding(odd), rep());
    CHECK(max_abs((theta * x + x * theta).matrix()) == 0.0);
  }
  for (const char* even : {"B", "Bd", "N", "M"}) {
    const DoubledOperator x = lift(rep().binding(even), rep());
    CHECK(max_abs((theta * x - x * theta).matrix()) == 0.0);
  }
}

TEST_CASE("Koszul sign for homogeneous lifts", "[grassmann][property]") {
  Rng rng(2);
  const DoubledOperator theta = theta_op(rep());
  for (int trial = 0; trial < 10; ++trial) {
    const Parity p = trial % 2 ? Parity::Odd : Parity::Even;
    const DoubledOperator x = lift(random_homogeneous(rng, p), rep());
    const double sign = p == Parity::Odd ? -1.0 : 1.0;
    CHECK(max_abs((theta * x).matrix() - sign * (x * theta).matrix()) == 0.0);
  }
}

TEST_CASE("doubled operators decompose and reassemble exactly", "[grassmann][property]") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix body = random_homogeneous(rng, Parity::Even) + random_homogeneous(rng, Parity::Odd);
    const Matrix theta_part = random_homogeneous(rng, trial % 2 ? Parity::Odd : Parity::Even);
    const DoubledOperator d = DoubledOperator::from_parts(body, theta_part, rep().parity);
    CHECK(max_abs(d.body() - body) == 0.0);
    CHECK(max_abs(d.theta_component() - theta_part) == 0.0);
    const DoubledOperator again(d.matrix(), rep().parity);
    CHECK(max_abs(again.matrix() - d.matrix()) == 0.0);
  }
  const auto n = rep().dimension();
  Matrix upper = Matrix::Zero(2 * n, 2 * n);
  upper(0, n) = 1.0;
  CHECK(error_code([&] { DoubledOperator(upper, rep().parity); }) == ErrorCode::DimensionMismatch);
  Matrix unequal = Matrix::Zero(2 * n, 2 * n);
  unequal(0, 0) = 1.0;
  CHECK(error_code([&] { DoubledOperator(unequal, rep().parity); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("superunitary pair", "[grassmann][superunitary]") {
  Rng rng(4);
  const auto n = rep().dimension();
  const Superunitary trivial = superunitary(Matrix::Zero(n, n), rep());
  CHECK(max_abs(trivial.u.matrix() - Matrix::Identity(2 * n, 2 * n)) == 0.0);

  for (int trial = 0; trial < 5; ++trial) {
    const Superunitary s = superunitary(random_generator(rng), rep());
    CHECK(max_abs((s.u * s.u_inv).matrix() - Matrix::Identity(2 * n, 2 * n)) == 0.0);
    CHECK(max_abs((s.u_inv * s.u).matrix() - Matrix::Identity(2 * n, 2 * n)) == 0.0);
  }

  const Matrix even = random_homogeneous(rng, Parity::Even);
  CHECK(error_code([&] { superunitary(even + even.adjoint(), rep()); }) == ErrorCode::NotOdd);
  CHECK(error_code([&] { superunitary(random_homogeneous(rng, Parity::Odd), rep()); }) == ErrorCode::NotSelfAdjoint);
}

TEST_CASE("conjugation adds theta times the graded bracket", "[grassmann][conjugate]") {
  Rng rng(5);
  const auto n = rep().dimension();
  const Matrix a = rep().binding("Fd") + rep().binding("F");
  const Superunitary s = superunitary(a, rep());
  CHECK(max_abs(conjugate(s, Matrix::Identity(n, n), rep()).matrix() - Matrix::Identity(2 * n, 2 * n)) == 0.0);

  const DoubledOperator theta = theta_op(rep());
  for (const char* letter : {"B", "N"}) {
    const Matrix& x = rep().binding(letter);
    const DoubledOperator expected = lift(x, rep()) + theta * lift(commutator(a, x), rep());
    CHECK(max_abs(conjugate(s, x, rep()).matrix() - expected.matrix()) == 0.0);
  }
  const Matrix& f = rep().binding("F");
  CHECK(max_abs(conjugate(s, f, rep()).matrix() - (lift(f, rep()) + theta * lift(anticommutator(a, f), rep())).matrix()) ==
        0.0);

  for (int trial = 0; trial < 10; ++trial) {
    const Matrix g = random_generator(rng);
    const Superunitary t = superunitary(g, rep());
    const Parity p = trial % 2 ? Parity::Odd : Parity::Even;
    const Matrix x = random_homogeneous(rng, p);
    const Matrix y = random_homogeneous(rng, Parity::Odd);
    const DoubledOperator cx = conjugate(t, x, rep());
    CHECK(max_abs(cx.theta_component() - graded_bracket(g, x, Parity::Odd, p, 1.0, 1.0)) <= 1e-13);
    CHECK(max_abs(cx.body() - x) == 0.0);
    const DoubledOperator product = conjugate(t, x * y, rep());
    CHECK(max_abs(product.matrix() - (cx * conjugate(t, y, rep())).matrix()) <= 1e-13);
  }
}

TEST_CASE("conjugated representation doubles every binding", "[grassmann][rep]") {
  const Matrix a = rep().binding("Fd") + rep().binding("F");
  const Representation primed = conjugated_representation(rep(), superunitary(a, rep()));
  CHECK(primed.dims().front() == 2);
  CHECK(primed.dimension() == 2 * rep().dimension());
  CHECK(primed.bindings.size() == rep().bindings.size());
  CHECK(primed.factors.front().kind == FactorKind::Grassmann);
  CHECK(verify(primed, builtin_algebra("supercov"), 1e-9).pass);
}
