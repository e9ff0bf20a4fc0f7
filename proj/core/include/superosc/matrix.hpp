#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace superosc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Per-basis-state grading: 0 = even, 1 = odd.
using ParityVector = std::vector<int>;

double max_abs(const Matrix& m);

// Largest singular value.
double spectral_norm(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

Matrix commutator(const Matrix& x, const Matrix& y);
Matrix anticommutator(const Matrix& x, const Matrix& y);

// Max-abs of the entries that connect states of equal parity (the even part of m).
double even_part_max_abs(const Matrix& m, std::span<const int> parity);
// Max-abs of the entries that connect states of opposite parity.
double odd_part_max_abs(const Matrix& m, std::span<const int> parity);

// Diagonal matrix diag(+1/-1) built from a parity vector.
Matrix parity_operator(std::span<const int> parity);

// Max-abs of m - m^+.
double hermiticity_defect(const Matrix& m);

}  // namespace superosc
