#pragma once

#include <optional>
#include <vector>

#include "twc/matrix.hpp"

namespace twc {

/// Rank by Gaussian elimination with the fixed pivot rule: columns left to
/// right, first remaining row with a nonzero entry. Deterministic and exact.
int rank(const Matrix& a);

/// One solution of A x = b if b lies in the image, std::nullopt otherwise.
/// Free variables are set to zero, so the result is deterministic.
std::optional<std::vector<Rational>> solve_affine(const Matrix& a, const std::vector<Rational>& b);

/// Exact inverse; std::nullopt when singular.
std::optional<Matrix> try_inverse(const Matrix& a);

}  // namespace twc
