#include "superosc/random.hpp"

#include <algorithm>
#include <numbers>

#include <Eigen/QR>

#include "superosc/error.hpp"

namespace superosc {

namespace {

void append_words(std::vector<Word>& out, Word& prefix, const std::vector<std::string>& letters, int remaining) {
  out.push_back(prefix);
  if (remaining == 0) return;
  for (const auto& l : letters) {
    prefix.push_back(l);
    append_words(out, prefix, letters, remaining - 1);
    prefix.pop_back();
  }
}

Matrix homogeneous(Rng& rng, const ParityVector& parity, Parity p) {
  const auto n = static_cast<Eigen::Index>(parity.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const int shift = parity[static_cast<std::size_t>(i)] ^ parity[static_cast<std::size_t>(j)];
      if (shift == static_cast<int>(p)) m(i, j) = random_complex(rng);
    }
  }
  return m;
}

}  // namespace

Complex random_complex(Rng& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

NCExpr random_polynomial(Rng& rng, const std::vector<std::string>& letters, int max_degree) {
  if (max_degree < 0) throw Error(ErrorCode::BadExponent, "negative polynomial degree");
  std::vector<Word> words;
  Word prefix;
  append_words(words, prefix, letters, max_degree);
  std::vector<Term> terms;
  terms.reserve(words.size());
  for (auto& w : words) terms.push_back(Term{QScalar{random_complex(rng), 0, 0}, std::move(w)});
  return NCExpr(std::move(terms));
}

Matrix random_unitary(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      z(i, j) = {re, im};
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Complex random_q(Rng& rng, double min_modulus, double max_modulus) {
  std::uniform_real_distribution<double> mod(min_modulus, max_modulus);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double r = mod(rng);
  return std::polar(r, phase(rng));
}

GradedTriple random_graded_triple(Rng& rng, int max_dim, Parity pa, Parity pb, Parity pc) {
  if (max_dim < 2) throw Error(ErrorCode::InvalidDimension, "graded triples need dimension >= 2");
  std::uniform_int_distribution<int> dim_dist(2, max_dim);
  const int n = dim_dist(rng);
  std::uniform_int_distribution<int> odd_dist(1, n - 1);
  const int odd = odd_dist(rng);
  ParityVector parity(static_cast<std::size_t>(n), 0);
  for (int k = n - odd; k < n; ++k) parity[static_cast<std::size_t>(k)] = 1;
  std::shuffle(parity.begin(), parity.end(), rng);

  GradedTriple t;
  t.parity = parity;
  t.pa = pa;
  t.pb = pb;
  t.pc = pc;
  t.a = homogeneous(rng, parity, pa);
  t.b = homogeneous(rng, parity, pb);
  t.c = homogeneous(rng, parity, pc);
  t.q1 = random_q(rng, 0.5, 2.0);
  t.q2 = random_q(rng, 0.5, 2.0);
  t.q3 = random_q(rng, 0.5, 2.0);
  return t;
}

}  // namespace superosc
