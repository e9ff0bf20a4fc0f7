#include "superosc/matrix.hpp"

#include <algorithm>

#include "superosc/error.hpp"

namespace superosc {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "commutator operands differ in shape");
  }
  return x * y - y * x;
}

Matrix anticommutator(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "anticommutator operands differ in shape");
  }
  return x * y + y * x;
}

namespace {

double graded_max_abs(const Matrix& m, std::span<const int> parity, bool same) {
  if (static_cast<Eigen::Index>(parity.size()) != m.rows() || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "parity vector does not match matrix");
  }
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if ((parity[i] == parity[j]) == same) best = std::max(best, std::abs(m(i, j)));
    }
  }
  return best;
}

}  // namespace

double even_part_max_abs(const Matrix& m, std::span<const int> parity) {
  return graded_max_abs(m, parity, true);
}

double odd_part_max_abs(const Matrix& m, std::span<const int> parity) {
  return graded_max_abs(m, parity, false);
}

Matrix parity_operator(std::span<const int> parity) {
  Vector diag(static_cast<Eigen::Index>(parity.size()));
  for (std::size_t i = 0; i < parity.size(); ++i) diag(i) = parity[i] ? -1.0 : 1.0;
  return diag.asDiagonal();
}

double hermiticity_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

}  // namespace superosc
