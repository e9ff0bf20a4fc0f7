#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "superosc/expr.hpp"
#include "superosc/superalg.hpp"

namespace superosc {

// The one generator every seeded run draws from.
using Rng = std::mt19937_64;

Complex random_complex(Rng& rng, double scale = 1.0);

// Every word over `letters` of length <= max_degree, each with an independent
// complex coefficient in the unit square.
NCExpr random_polynomial(Rng& rng, const std::vector<std::string>& letters, int max_degree);

// Haar-distributed unitary (QR of a complex Gaussian matrix, phases fixed).
Matrix random_unitary(Rng& rng, Eigen::Index n);

// q with |q| uniform in [min_modulus, max_modulus] and uniform phase.
Complex random_q(Rng& rng, double min_modulus, double max_modulus);

// Homogeneous matrices of the requested parities on a random grading with both
// sectors nonempty, dim in [2, max_dim].
GradedTriple random_graded_triple(Rng& rng, int max_dim, Parity pa, Parity pb, Parity pc);

}  // namespace superosc
