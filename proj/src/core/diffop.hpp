#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/matrix.hpp"
#include "core/polynomial.hpp"

namespace qes {

/// Linear differential operator sum_k p_k(z) (d/dz)^k in normal form
/// (coefficients on the left). Trailing zero coefficients are trimmed, so two
/// operators are equal exactly when their coefficient lists are.
class LinearDiffOp {
 public:
  LinearDiffOp() = default;
  explicit LinearDiffOp(std::vector<Polynomial> coeffs);

  static LinearDiffOp multiplication(const Polynomial& p) { return LinearDiffOp({p}); }
  /// (d/dz)^k with unit coefficient in `field`.
  static LinearDiffOp derivative(unsigned k, const Field& field);

  /// Highest k with p_k != 0; -1 for the zero operator.
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::optional<Field> field() const;
  /// p_k, or the zero polynomial past the order.
  const Polynomial& coeff(int k) const;
  const std::vector<Polynomial>& coeffs() const { return coeffs_; }

  Polynomial apply(const Polynomial& p) const;
  /// The conjugated operator e^{-c z} L e^{c z}, i.e. d/dz replaced by d/dz + c.
  LinearDiffOp gauge_shift(const Scalar& c) const;

  std::string str() const;

  LinearDiffOp& operator+=(const LinearDiffOp& rhs);
  LinearDiffOp& operator-=(const LinearDiffOp& rhs);
  LinearDiffOp operator-() const;
  friend LinearDiffOp operator+(LinearDiffOp a, const LinearDiffOp& b) { return a += b; }
  friend LinearDiffOp operator-(LinearDiffOp a, const LinearDiffOp& b) { return a -= b; }
  friend LinearDiffOp operator*(const Scalar& s, const LinearDiffOp& op);
  friend LinearDiffOp operator*(const Rational& r, const LinearDiffOp& op);
  /// Left multiplication by a polynomial: p(z) * L.
  friend LinearDiffOp operator*(const Polynomial& p, const LinearDiffOp& op);

  friend bool operator==(const LinearDiffOp& a, const LinearDiffOp& b);

 private:
  void trim();

  std::vector<Polynomial> coeffs_;
};

/// L1 o L2, normalized with the Leibniz rule
/// (a D^i)(b D^j) = sum_m C(i,m) a b^{(m)} D^{i-m+j}.
LinearDiffOp compose(const LinearDiffOp& l1, const LinearDiffOp& l2);
LinearDiffOp commutator(const LinearDiffOp& l1, const LinearDiffOp& l2);

/// True iff L maps span{1, ..., z^n} into itself.
bool preserves_space(const LinearDiffOp& op, unsigned n);

/// Raised by restriction_matrix when some L z^k leaves P_{n+1}.
class SpaceNotPreservedError : public Error {
 public:
  SpaceNotPreservedError(unsigned monomial, int degree, unsigned n);
  unsigned monomial() const { return monomial_; }
  int image_degree() const { return degree_; }

 private:
  unsigned monomial_;
  int degree_;
};

/// Matrix of L on the monomial basis {1, z, ..., z^n}: column j holds the
/// coordinates of L z^j. For float operators, spill-over coefficients above
/// z^n no larger than `float_tolerance` times the column's largest
/// coefficient are treated as rounding noise.
Matrix restriction_matrix(const LinearDiffOp& op, unsigned n, double float_tolerance = 1e-9);

}  // namespace qes
