#include "superosc/grassmann.hpp"

#include "superosc/error.hpp"

namespace superosc {

namespace {

constexpr double kStructureTol = 1e-12;

ParityVector doubled_parity(const ParityVector& base) {
  ParityVector out(base.size() * 2);
  for (std::size_t i = 0; i < base.size(); ++i) {
    out[i] = base[i];
    out[i + base.size()] = 1 - base[i];
  }
  return out;
}

}  // namespace

DoubledOperator::DoubledOperator(Matrix m, ParityVector parity) : m_(std::move(m)), parity_(std::move(parity)) {
  const auto d = static_cast<Eigen::Index>(parity_.size());
  if (m_.rows() != 2 * d || m_.cols() != 2 * d) {
    throw Error(ErrorCode::DimensionMismatch, "doubled operator must be 2d x 2d");
  }
  if (max_abs(m_.topRightCorner(d, d)) != 0.0 ||
      max_abs(m_.topLeftCorner(d, d) - m_.bottomRightCorner(d, d)) > kStructureTol * std::max(1.0, max_abs(m_))) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not of the form X0 + theta X1");
  }
}

DoubledOperator DoubledOperator::from_parts(const Matrix& body, const Matrix& theta_component,
                                            const ParityVector& parity) {
  const auto d = static_cast<Eigen::Index>(parity.size());
  if (body.rows() != d || theta_component.rows() != d) {
    throw Error(ErrorCode::DimensionMismatch, "parts do not match the parity vector");
  }
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = body;
  m.bottomRightCorner(d, d) = body;
  m.bottomLeftCorner(d, d) = parity_operator(parity) * theta_component;
  return DoubledOperator(std::move(m), parity);
}

Matrix DoubledOperator::body() const { return m_.topLeftCorner(base_dimension(), base_dimension()); }

Matrix DoubledOperator::lower_block() const { return m_.bottomLeftCorner(base_dimension(), base_dimension()); }

Matrix DoubledOperator::theta_component() const { return parity_operator(parity_) * lower_block(); }

DoubledOperator operator*(const DoubledOperator& a, const DoubledOperator& b) {
  if (a.parity_ != b.parity_) throw Error(ErrorCode::DimensionMismatch, "operands live on different spaces");
  // [[X0,0],[Y,X0]] [[Z0,0],[W,Z0]] = [[X0 Z0, 0], [Y Z0 + X0 W, X0 Z0]]
  const Eigen::Index d = a.base_dimension();
  const Matrix x0 = a.body(), z0 = b.body();
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  const Matrix top = x0 * z0;
  m.topLeftCorner(d, d) = top;
  m.bottomRightCorner(d, d) = top;
  m.bottomLeftCorner(d, d) = a.lower_block() * z0 + x0 * b.lower_block();
  return DoubledOperator(std::move(m), a.parity_);
}

DoubledOperator operator+(const DoubledOperator& a, const DoubledOperator& b) {
  return DoubledOperator(a.m_ + b.m_, a.parity_);
}

DoubledOperator operator-(const DoubledOperator& a, const DoubledOperator& b) {
  return DoubledOperator(a.m_ - b.m_, a.parity_);
}

DoubledOperator lift(const Matrix& x, const Representation& rep) {
  const Eigen::Index d = rep.dimension();
  if (x.rows() != d || x.cols() != d) throw Error(ErrorCode::DimensionMismatch, "lift operand has the wrong size");
  return DoubledOperator::from_parts(x, Matrix::Zero(d, d), rep.parity);
}

DoubledOperator theta_op(const Representation& rep) {
  const Eigen::Index d = rep.dimension();
  return DoubledOperator::from_parts(Matrix::Zero(d, d), Matrix::Identity(d, d), rep.parity);
}

Superunitary superunitary(const Matrix& a, const Representation& rep) {
  const Eigen::Index d = rep.dimension();
  if (a.rows() != d || a.cols() != d) throw Error(ErrorCode::DimensionMismatch, "generator has the wrong size");
  if (even_part_max_abs(a, rep.parity) > kStructureTol) throw Error(ErrorCode::NotOdd, "generator has an even part");
  if (hermiticity_defect(a) > kStructureTol) throw Error(ErrorCode::NotSelfAdjoint, "generator is not Hermitian");
  const Matrix identity = Matrix::Identity(d, d);
  return Superunitary{DoubledOperator::from_parts(identity, a, rep.parity),
                      DoubledOperator::from_parts(identity, -a, rep.parity)};
}

DoubledOperator conjugate(const Superunitary& s, const Matrix& x, const Representation& rep) {
  return s.u * lift(x, rep) * s.u_inv;
}

Representation conjugated_representation(const Representation& rep, const Superunitary& s) {
  Representation out;
  out.q = rep.q;
  out.factors.reserve(rep.factors.size() + 1);
  out.factors.push_back(Factor{FactorKind::Grassmann, 2});
  out.factors.insert(out.factors.end(), rep.factors.begin(), rep.factors.end());
  out.parity = doubled_parity(rep.parity);
  out.headroom = rep.headroom;
  out.table = rep.table;
  for (const auto& [name, m] : rep.bindings) out.bindings[name] = conjugate(s, m, rep).matrix();
  return out;
}

}  // namespace superosc
