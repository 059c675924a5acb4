#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/scalar.hpp"

namespace qes {

/// Dense univariate polynomial; coeffs()[k] multiplies z^k.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no stored
/// coefficients, no field, and degree kZeroDegree. All stored coefficients
/// share one field.
class Polynomial {
 public:
  static constexpr int kZeroDegree = -1;

  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs);
  Polynomial(std::initializer_list<Scalar> coeffs) : Polynomial(std::vector<Scalar>(coeffs)) {}

  static Polynomial constant(const Scalar& c) { return Polynomial({c}); }
  /// c * z^k.
  static Polynomial monomial(const Scalar& c, int k);
  /// The variable z in the given field.
  static Polynomial variable(const Field& field) { return monomial(field.one(), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::optional<Field> field() const;
  std::span<const Scalar> coeffs() const { return coeffs_; }

  /// Coefficient of z^k; zero of `field` past the degree.
  Scalar coeff(int k, const Field& field) const;
  /// Coefficient of z^k; requires a nonzero polynomial.
  Scalar coeff(int k) const;
  const Scalar& leading() const;

  Polynomial derivative(unsigned order = 1) const;
  Scalar evaluate(const Scalar& x) const;
  Polynomial embed(const Field& target) const;

  /// Euclidean division: *this = q * divisor + r with deg r < deg divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  /// Human-readable form in the variable `var`, highest power first.
  std::string str(const std::string& var = "z") const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& p, const Scalar& s);
  friend Polynomial operator*(const Scalar& s, const Polynomial& p) { return p * s; }
  friend Polynomial operator*(const Polynomial& p, const Rational& r);
  friend Polynomial operator*(const Rational& r, const Polynomial& p) { return p * r; }

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void trim();

  std::vector<Scalar> coeffs_;
};

}  // namespace qes
