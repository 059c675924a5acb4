#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "core/polynomial.hpp"

namespace qes {

struct PolynomialRoot {
  std::complex<double> value;
  unsigned multiplicity = 1;
  /// Set when the root was certified by exact evaluation: zero roots, roots
  /// of linear factors, rational roots, and for Q[x] the irrational roots of
  /// a leftover quadratic factor (as elements of Q(sqrt disc)).
  std::optional<Scalar> exact;
};

/// All roots with multiplicity, sorted by (real, imag). Exact roots are peeled
/// off by exact deflation; the rest come from the eigenvalues of the balanced
/// companion matrix, polished by Newton steps and clustered within 1e-9.
std::vector<PolynomialRoot> find_roots(const Polynomial& p);

/// Roots of a float coefficient vector (index k multiplies x^k), clustered.
std::vector<PolynomialRoot> float_roots(const std::vector<double>& coeffs);

}  // namespace qes
