#pragma once

#include <vector>

#include "core/matrix.hpp"
#include "core/polynomial.hpp"

namespace qes {

/// det(lambda*I - M) as a monic polynomial in lambda.
///
/// Fraction-free (Bareiss) elimination over F[lambda]: every intermediate entry
/// is a polynomial and every division is exact. The pivots are leading
/// principal minors of lambda*I - M, which are monic, so no pivoting is needed.
Polynomial characteristic_polynomial(const Matrix& m);

/// Basis of the null space of an exact matrix, one column vector per entry,
/// from a reduced row echelon form. Free variables are set to one in turn.
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m);

}  // namespace qes
