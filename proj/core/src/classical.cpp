#include <Eigen/SVD>

#include "superosc/error.hpp"
#include "superosc/intertwine.hpp"

namespace superosc {

namespace {

constexpr double kNullThreshold = 1e-10;

Vector vacuum(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kNullThreshold * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index null_dim = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) null_dim += sv(k) < cutoff ? 1 : 0;
  if (null_dim == 0) throw Error(ErrorCode::NoVacuum, "annihilator has no null vector");
  if (null_dim > 1) {
    throw Error(ErrorCode::ReducibleRepresentation,
                "annihilator null space has dimension " + std::to_string(null_dim));
  }
  return svd.matrixV().col(x.cols() - 1);
}

// Orthonormal columns |n> proportional to (x^+)^n |0>.
Matrix ladder_basis(const Matrix& x, const Matrix& xd) {
  const Eigen::Index n = x.rows();
  Matrix basis(n, n);
  Vector v = vacuum(x);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    const double norm = v.norm();
    if (norm < kNullThreshold) {
      throw Error(ErrorCode::ReducibleRepresentation, "ladder from the vacuum spans only " + std::to_string(k) + " states");
    }
    basis.col(k) = v / norm;
    v = xd * basis.col(k);
  }
  return basis;
}

}  // namespace

Matrix classical_intertwiner(const Representation& rep_a, const Representation& rep_b, const std::string& letter) {
  if (!rep_a.table.has_adjoint(letter) || !rep_b.table.has_adjoint(letter)) {
    throw Error(ErrorCode::UnboundLetter, "'" + letter + "' has no adjoint partner");
  }
  const Matrix& xa = rep_a.binding(letter);
  const Matrix& xb = rep_b.binding(letter);
  if (xa.rows() != xb.rows()) throw Error(ErrorCode::DimensionMismatch, "representations differ in dimension");
  const Matrix basis_a = ladder_basis(xa, rep_a.binding(rep_a.table.adjoint(letter)));
  const Matrix basis_b = ladder_basis(xb, rep_b.binding(rep_b.table.adjoint(letter)));
  Matrix u = basis_b * basis_a.adjoint();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (std::abs(u(i, 0)) > kNullThreshold) {
      u *= std::conj(u(i, 0)) / std::abs(u(i, 0));
      break;
    }
  }
  return u;
}

}  // namespace superosc
