#pragma once

#include "superosc/matrix.hpp"
#include "superosc/rep.hpp"

namespace superosc {

// An operator X0 + theta X1 on H (x) Lambda(theta), stored as a 2d x 2d matrix with
// the Lambda index {1, theta} varying slowest. The representation is
// E0 (x) X0 + E1 (x) Y where E1 = |theta><1| is nilpotent; the theta component in
// the sense X0 + theta_hat lift(X1) is X1 = P Y with P the parity operator.
class DoubledOperator {
 public:
  DoubledOperator() = default;
  // Throws DimensionMismatch unless m has the block form [[X0, 0], [Y, X0]].
  DoubledOperator(Matrix m, ParityVector parity);

  static DoubledOperator from_parts(const Matrix& body, const Matrix& theta_component, const ParityVector& parity);

  const Matrix& matrix() const { return m_; }
  const ParityVector& parity() const { return parity_; }
  Eigen::Index base_dimension() const { return m_.rows() / 2; }

  Matrix body() const;             // X0
  Matrix lower_block() const;      // Y
  Matrix theta_component() const;  // X1 = P Y

  friend DoubledOperator operator*(const DoubledOperator& a, const DoubledOperator& b);
  friend DoubledOperator operator+(const DoubledOperator& a, const DoubledOperator& b);
  friend DoubledOperator operator-(const DoubledOperator& a, const DoubledOperator& b);

 private:
  Matrix m_;
  ParityVector parity_;
};

DoubledOperator lift(const Matrix& x, const Representation& rep);

// theta_hat = E1 (x) P: squares to zero, anticommutes with odd lifts and
// commutes with even ones.
DoubledOperator theta_op(const Representation& rep);

struct Superunitary {
  DoubledOperator u;      // 1 + theta_hat lift(A)
  DoubledOperator u_inv;  // 1 - theta_hat lift(A)
};

// Requires A odd and Hermitian to within 1e-12 (NotOdd / NotSelfAdjoint).
Superunitary superunitary(const Matrix& a, const Representation& rep);

// U lift(X) U^-1.
DoubledOperator conjugate(const Superunitary& s, const Matrix& x, const Representation& rep);

// Representation on the doubled space whose bindings are the conjugates of all
// of rep's bindings. Dims gain a leading Grassmann factor of size 2.
Representation conjugated_representation(const Representation& rep, const Superunitary& s);

}  // namespace superosc
