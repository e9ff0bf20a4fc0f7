#include "support.hpp"

#include <algorithm>
#include <set>

#include "superosc/random.hpp"
#include "superosc/rep.hpp"
#include "superosc/superalg.hpp"

using namespace superosc;
using superosc::test::error_code;

namespace {

Parity bit(int combo, int mask) { return (combo & mask) ? Parity::Odd : Parity::Even; }

}  // namespace

TEST_CASE("builtin algebras", "[superalg][spec]") {
  CHECK(builtin_algebra("supercov").relations.size() == 9);
  const AlgebraSpec heis = builtin_algebra("heisenberg");
  REQUIRE(heis.relations.size() == 1);
  CHECK(heis.relations[0].ladder_degree == 1);
  CHECK(error_code([] { builtin_algebra("nosuch"); }) == ErrorCode::UnknownAlgebra);

  for (const auto& name : builtin_algebra_names()) {
    const AlgebraSpec spec = builtin_algebra(name);
    std::set<std::string> seen;
    const Representation rep = canonical_rep(name, 6, 1.3);
    for (const auto& r : spec.relations) {
      CHECK(seen.insert(r.name).second);
      CHECK(r.ladder_degree >= headroom_degree(r.lhs, rep.headroom));
      CHECK(r.ladder_degree >= headroom_degree(r.rhs, rep.headroom));
    }
  }
}

TEST_CASE("every builtin algebra closes on its canonical representation", "[superalg][verify]") {
  for (double q : {0.5, 1.3, 2.0}) {
    for (const auto& name : builtin_algebra_names()) {
      // supercov at q < 1 is checked relative to its entry scale below
      if (name == "supercov" && q < 1.0) continue;
      const int dim = name == "qmulti2" ? 8 : 16;
      const VerificationReport report = verify(canonical_rep(name, dim, q), builtin_algebra(name), 1e-10);
      INFO(name << " at q = " << q);
      CHECK(report.pass);
      CHECK(std::is_sorted(report.relations.begin(), report.relations.end(),
                           [](const auto& a, const auto& b) { return a.name < b.name; }));
    }
  }
}

TEST_CASE("supercov below q = 1 closes to rounding of its largest entries", "[superalg][verify]") {
  const Representation rep = supercovariant_rep(16, 0.5);
  const Matrix bbd = mask_boundary(evaluate(parse("B*Bd", rep.table), rep), rep, 2);
  const double scale = max_abs(bbd);
  CHECK(scale > 1e7);
  const VerificationReport report = verify(rep, builtin_algebra("supercov"), 1e-10);
  CHECK(report.max_residual() <= 8 * std::numeric_limits<double>::epsilon() * scale);
  CHECK(verify(supercovariant_rep(10, 0.5), builtin_algebra("supercov"), 1e-10).pass);
}

TEST_CASE("truncation boundary is visible unmasked", "[superalg][verify]") {
  const Representation boson = build_rep(RepKind::Boson, {12, 1.0});
  const VerificationReport masked = verify(boson, builtin_algebra("heisenberg"), 1e-10);
  CHECK(masked.pass);
  CHECK(masked.max_residual() <= 1e-14);

  // (b b^+ - b^+ b - 1)|11> = (0 - 11 - 1)|11>
  const VerificationReport raw = verify(boson, builtin_algebra("heisenberg"), 1e-10, 0);
  CHECK_FALSE(raw.pass);
  CHECK(raw.max_residual() == Catch::Approx(12.0).epsilon(1e-14));

  // wrong q in the spec
  AlgebraSpec at3 = builtin_algebra("qboson");
  at3.q = 3.0;
  CHECK_FALSE(verify(build_rep(RepKind::QBoson, {12, 2.0}), at3, 1e-10).pass);
}

TEST_CASE("masking is monotone in headroom", "[superalg][verify][property]") {
  for (const auto& name : {"qboson", "qpair", "supercov", "qmulti2"}) {
    const Representation rep = canonical_rep(name, 8, 1.3);
    double previous = std::numeric_limits<double>::infinity();
    for (int h = 0; h <= 4; ++h) {
      const double r = verify(rep, builtin_algebra(name), 1e-10, h).max_residual();
      CHECK(r <= previous);
      previous = r;
    }
  }
  const Representation rep = canonical_rep("qpair", 8, 1.3);
  const auto keep = interior_states(rep, 2);
  const Matrix ones = Matrix::Ones(rep.dimension(), rep.dimension());
  const Matrix masked = mask_boundary(ones, rep, 2);
  for (Eigen::Index i = 0; i < rep.dimension(); ++i) {
    CHECK((masked(i, i) == 1.0) == keep[static_cast<std::size_t>(i)]);
  }
  CHECK(std::count(keep.begin(), keep.end(), true) == 12);
}

TEST_CASE("graded bracket sign rule", "[superalg][bracket]") {
  Rng rng(3);
  const Matrix x = Matrix::Random(5, 5);
  const Matrix y = Matrix::Random(5, 5);
  CHECK(max_abs(graded_bracket(x, y, Parity::Even, Parity::Even, 1.0, 1.0) - commutator(x, y)) == 0.0);
  CHECK(max_abs(graded_bracket(x, y, Parity::Odd, Parity::Even, 1.0, 1.0) - commutator(x, y)) == 0.0);
  CHECK(max_abs(graded_bracket(x, y, Parity::Odd, Parity::Odd, 1.0, 1.0) - anticommutator(x, y)) == 0.0);
  const Complex s{0.3, -1.2};
  for (Parity py : {Parity::Even, Parity::Odd}) {
    CHECK(max_abs(graded_bracket(x, y, Parity::Odd, py, s, s) - s * graded_bracket(x, y, Parity::Odd, py, 1.0, 1.0)) <
          1e-15);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const GradedTriple t = random_graded_triple(rng, 8, bit(trial, 1), bit(trial, 2), Parity::Even);
    const Complex p = random_complex(rng), r = random_complex(rng);
    const Matrix lhs = graded_bracket(t.a, t.b, t.pa, t.pb, p, r).adjoint();
    const Matrix rhs = graded_bracket(t.b.adjoint(), t.a.adjoint(), t.pb, t.pa, std::conj(p), std::conj(r));
    CHECK(max_abs(lhs - rhs) <= 1e-14);
  }
}

TEST_CASE("graded q-Jacobi identity", "[superalg][jacobi]") {
  Rng rng(42);
  SECTION("classical parameters") {
    for (int combo = 0; combo < 8; ++combo) {
      GradedTriple t = random_graded_triple(rng, 8, bit(combo, 4), bit(combo, 2), bit(combo, 1));
      t.q1 = t.q2 = t.q3 = 1.0;
      CHECK(jacobi_check(t) < 1e-12);
    }
  }
  SECTION("random parameters") {
    for (int trial = 0; trial < 64; ++trial) {
      const int combo = trial % 8;
      const GradedTriple t = random_graded_triple(rng, 8, bit(combo, 4), bit(combo, 2), bit(combo, 1));
      CHECK(jacobi_check(t) < 1e-10);
    }
  }
  SECTION("flipped odd/odd sign breaks it when two entries are odd") {
    for (int combo : {0b110, 0b101, 0b011}) {
      const GradedTriple t = random_graded_triple(rng, 8, bit(combo, 4), bit(combo, 2), bit(combo, 1));
      CHECK(jacobi_check(t, BracketSign::Flipped) > 0.1);
    }
  }
  SECTION("relative residual is scale invariant") {
    for (int combo : {0b110, 0b011}) {
      GradedTriple t = random_graded_triple(rng, 6, bit(combo, 4), bit(combo, 2), bit(combo, 1));
      const double before = jacobi_check(t, BracketSign::Flipped);
      t.b *= Complex{-3.5, 2.0};
      CHECK(std::abs(jacobi_check(t, BracketSign::Flipped) - before) <= 1e-12);
    }
  }
  SECTION("preconditions") {
    GradedTriple t = random_graded_triple(rng, 6, Parity::Odd, Parity::Even, Parity::Even);
    GradedTriple bad = t;
    bad.pa = Parity::Even;
    CHECK(error_code([&] { jacobi_check(bad); }) == ErrorCode::InhomogeneousMatrix);
    bad = t;
    bad.q2 = 0.0;
    CHECK(error_code([&] { jacobi_check(bad); }) == ErrorCode::InvalidQ);
    bad = t;
    bad.c = Matrix::Zero(3, 3);
    CHECK(error_code([&] { jacobi_check(bad); }) == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("report JSON layout", "[superalg][io]") {
  const VerificationReport report = verify(canonical_rep("qpair", 6, 1.3), builtin_algebra("qpair"), 1e-10);
  const nlohmann::json j = to_json(report);
  for (const char* key : {"algebra", "q", "dims", "tol", "relations", "pass"}) CHECK(j.contains(key));
  for (const auto& r : j["relations"]) {
    for (const char* key : {"name", "residual", "spectral", "pass"}) CHECK(r.contains(key));
  }
}
