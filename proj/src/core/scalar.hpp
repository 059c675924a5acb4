#pragma once

#include <optional>
#include <string>
#include <variant>

#include "core/rational.hpp"

namespace qes {

enum class ScalarKind { Rational, QuadExt, Float };

class Scalar;

/// Identifies the field a Scalar lives in: Q, Q(sqrt d) for a fixed positive
/// rational d, or IEEE doubles. Also serves as the factory for constants.
class Field {
 public:
  static Field rationals() { return Field(ScalarKind::Rational, Rational(0)); }
  /// Requires d > 0.
  static Field quadratic(const Rational& d);
  static Field floating() { return Field(ScalarKind::Float, Rational(0)); }

  ScalarKind kind() const { return kind_; }
  bool is_exact() const { return kind_ != ScalarKind::Float; }
  /// d for Q(sqrt d); zero for the other fields.
  const Rational& discriminant() const { return d_; }

  Scalar operator()(const Rational& value) const;
  Scalar zero() const;
  Scalar one() const;
  /// sqrt(d) as a field element. Only defined for quadratic fields.
  Scalar generator() const;

  std::string str() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.d_ == b.d_;
  }

 private:
  Field(ScalarKind kind, Rational d) : kind_(kind), d_(std::move(d)) {}

  ScalarKind kind_;
  Rational d_;
};

/// Element of one of the three supported fields.
///
/// Scalar-with-Scalar arithmetic requires both operands to be in the same
/// field (same kind, and for Q(sqrt d) the same d); anything else raises
/// IncompatibleField. A Rational constant mixed with a Scalar is interpreted
/// in the Scalar's field, which is how formula literals such as 2 or n/2 are
/// written. Moving an exact value into a larger field is explicit (embed).
class Scalar {
 public:
  struct Quad {
    Rational a, b, d;  // a + b*sqrt(d)
  };

  Scalar() = default;  // rational zero
  explicit Scalar(Rational value) : value_(std::move(value)) {}
  static Scalar quad(Rational a, Rational b, Rational d);
  static Scalar real(double value) { return Scalar(Storage(value)); }

  ScalarKind kind() const { return static_cast<ScalarKind>(value_.index()); }
  Field field() const;
  bool is_exact() const { return kind() != ScalarKind::Float; }

  bool is_zero() const;
  /// Exact for Rational and QuadExt.
  int sign() const;
  double to_double() const;
  /// Canonical text: "3/4", "(-1/2)+(1/2)√(16/25)", or shortest round-trip double.
  std::string str() const;

  /// The value as a rational number when it is one (a quad element with b = 0
  /// or a perfect-square discriminant counts).
  std::optional<Rational> as_rational() const;
  const Rational& rational() const;  // requires kind Rational
  const Quad& quad_parts() const;    // requires kind QuadExt
  double real_value() const;         // requires kind Float

  /// Constant of this scalar's field.
  Scalar lift(const Rational& value) const { return field()(value); }
  /// Same value viewed in `target`: identity, Q into Q(sqrt d), or exact into
  /// floats. Anything else raises IncompatibleField.
  Scalar embed(const Field& target) const;

  Scalar inv() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend Scalar operator+(Scalar a, const Rational& b) { return a += a.lift(b); }
  friend Scalar operator-(Scalar a, const Rational& b) { return a -= a.lift(b); }
  friend Scalar operator*(Scalar a, const Rational& b) { return a *= a.lift(b); }
  friend Scalar operator/(Scalar a, const Rational& b) { return a /= a.lift(b); }
  friend Scalar operator+(const Rational& a, const Scalar& b) { return b.lift(a) + b; }
  friend Scalar operator-(const Rational& a, const Scalar& b) { return b.lift(a) - b; }
  friend Scalar operator*(const Rational& a, const Scalar& b) { return b.lift(a) * b; }
  friend Scalar operator/(const Rational& a, const Scalar& b) { return b.lift(a) / b; }

  /// Value equality; raises IncompatibleField across fields.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Rational& b) { return a == a.lift(b); }

 private:
  using Storage = std::variant<Rational, Quad, double>;
  explicit Scalar(Storage value) : value_(std::move(value)) {}

  Storage value_;
};

/// Raises IncompatibleField unless a and b share a field.
void require_same_field(const Field& a, const Field& b, const char* context);

/// sqrt(x) inside Q(sqrt x): returns the generator of Q(sqrt x) for exact
/// positive x, std::sqrt for floats.
Scalar sqrt_generator(const Scalar& x);

}  // namespace qes
