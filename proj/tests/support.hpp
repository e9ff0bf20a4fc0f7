#pragma once

#include <functional>
#include <optional>

#include <catch2/catch_amalgamated.hpp>

#include "superosc/error.hpp"
#include "superosc/matrix.hpp"

namespace superosc::test {

// Code of the superosc::Error thrown by f, or nullopt if none is thrown.
template <class F>
std::optional<ErrorCode> error_code(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// [n] as the finite geometric sum q^(n-1) + q^(n-3) + ... + q^(1-n).
inline Complex bracket_by_sum(int n, Complex q) {
  Complex s{0.0, 0.0};
  for (int k = 0; k < n; ++k) s += std::pow(q, n - 1 - 2 * k);
  return s;
}

// Lowering matrix with x|n> = amplitude(n)|n-1>, built entry by entry.
inline Matrix lowering_oracle(int d, const std::function<Complex(int)>& amplitude) {
  Matrix m = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) m(n - 1, n) = amplitude(n);
  return m;
}

}  // namespace superosc::test
