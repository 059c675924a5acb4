#pragma once

#include <array>
#include <optional>
#include <string>

#include "core/diffop.hpp"

namespace qes {

/// First-order realization of sl(2) on functions of z:
///   J+ = z^2 d - n z,   J0 = z d - n/2,   J- = d.
/// The commutation relations hold for any n; for a nonnegative integer n the
/// three operators preserve span{1, ..., z^n}.
struct Sl2Generators {
  LinearDiffOp plus;
  LinearDiffOp zero;
  LinearDiffOp minus;
};

Sl2Generators sl2_generators(const Scalar& n);

/// X d^2 + Y d + Z with deg X <= 4, deg Y <= 3, deg Z <= 2; a[k], b[k], c[k]
/// are the coefficients of z^k in X, Y, Z.
class HeunCoefficients {
 public:
  explicit HeunCoefficients(const Field& field);
  /// Raises NotHeunOperator if the order or a coefficient degree is too high.
  static HeunCoefficients from_operator(const LinearDiffOp& op, const Field& field);

  const Field& field() const { return field_; }
  LinearDiffOp to_operator() const;

  std::array<Scalar, 5> a;
  std::array<Scalar, 4> b;
  std::array<Scalar, 3> c;

 private:
  Field field_;
};

/// Coefficients of an ordered-monomial expansion in J+, J0, J-:
///
///   A++ J+J+ + A+0 J+J0 + A00 J0J0 + A0- J0J- + A-- J-J-
///   + A+ J+ + A0 J0 + A- J- + A*
///
/// plus, for fourth-order operators, the monomials J+(J-)^3, J+(J-)^2, J0(J-)^2.
struct Sl2Combination {
  struct Quartic {
    Scalar plus_minus3;  // J+ (J-)^3
    Scalar plus_minus2;  // J+ (J-)^2
    Scalar zero_minus2;  // J0 (J-)^2
  };

  Scalar n;
  Scalar plus_plus, plus_zero, zero_zero, zero_minus, minus_minus;
  Scalar plus, zero, minus;
  Scalar constant;
  std::optional<Quartic> quartic;

  /// All-zero combination over the field of n.
  static Sl2Combination zeros(const Scalar& n);
  Field field() const { return n.field(); }
  std::string str() const;
};

LinearDiffOp sl2_compose(const Sl2Combination& c);

struct AlgebraizationResiduals {
  Scalar r1;  // b3 + 2(n-1) a4
  Scalar r2;  // c2 - n(n-1) a4
  Scalar r3;  // c1 + n[(n-1) a3 + b2]
  bool all_zero() const { return r1.is_zero() && r2.is_zero() && r3.is_zero(); }
};

/// Vanish exactly when the Heun operator is a quadratic combination of the
/// generators at this n.
AlgebraizationResiduals algebraization_residuals(const HeunCoefficients& h, const Scalar& n);

class NotAlgebraizableError : public Error {
 public:
  NotAlgebraizableError(const AlgebraizationResiduals& residuals, const std::string& context);
  const AlgebraizationResiduals& residuals() const { return residuals_; }

 private:
  AlgebraizationResiduals residuals_;
};

/// Reads off the generator coefficients of a Heun operator with vanishing
/// residuals; raises NotAlgebraizableError otherwise. No approximate fits.
Sl2Combination sl2_decompose_quadratic(const HeunCoefficients& h, const Scalar& n);

/// Fourth-order operators whose d^4 coefficient is a multiple of z^2 and whose
/// d^3 coefficient has no constant term. The top-order part is rewritten with
///   z^2 d^4 = J+(J-)^3 + n z d^3
///   z^2 d^3 = J+(J-)^2 + n z d^2
///   z   d^3 = J0(J-)^2 + (n/2) d^2
/// and the second-order remainder goes through sl2_decompose_quadratic.
/// Raises WrongLeadingShape if the top-order part is not of that form.
Sl2Combination sl2_decompose_quartic(const LinearDiffOp& op, const Scalar& n);

}  // namespace qes
