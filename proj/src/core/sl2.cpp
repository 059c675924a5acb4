#include "core/sl2.hpp"

namespace qes {

Sl2Generators sl2_generators(const Scalar& n) {
  const Field f = n.field();
  const Scalar zero = f.zero();
  const Scalar one = f.one();
  return {
      LinearDiffOp({Polynomial({zero, -n}), Polynomial({zero, zero, one})}),
      LinearDiffOp({Polynomial({-(n / Rational(2))}), Polynomial({zero, one})}),
      LinearDiffOp({Polynomial(), Polynomial({one})}),
  };
}

HeunCoefficients::HeunCoefficients(const Field& field)
    : a{field.zero(), field.zero(), field.zero(), field.zero(), field.zero()},
      b{field.zero(), field.zero(), field.zero(), field.zero()},
      c{field.zero(), field.zero(), field.zero()},
      field_(field) {}

HeunCoefficients HeunCoefficients::from_operator(const LinearDiffOp& op, const Field& field) {
  if (auto f = op.field()) require_same_field(field, *f, "Heun operator");
  if (op.order() > 2) {
    throw Error(ErrorCode::NotHeunOperator, "Heun operator has order " + std::to_string(op.order()));
  }
  const int limits[3] = {2, 3, 4};
  for (int k = 0; k <= 2; ++k) {
    if (op.coeff(k).degree() > limits[k]) {
      throw Error(ErrorCode::NotHeunOperator, "coefficient of d^" + std::to_string(k) + " has degree " +
                                                  std::to_string(op.coeff(k).degree()));
    }
  }
  HeunCoefficients h(field);
  for (int k = 0; k <= 4; ++k) h.a[k] = op.coeff(2).coeff(k, field);
  for (int k = 0; k <= 3; ++k) h.b[k] = op.coeff(1).coeff(k, field);
  for (int k = 0; k <= 2; ++k) h.c[k] = op.coeff(0).coeff(k, field);
  return h;
}

LinearDiffOp HeunCoefficients::to_operator() const {
  return LinearDiffOp({
      Polynomial({c[0], c[1], c[2]}),
      Polynomial({b[0], b[1], b[2], b[3]}),
      Polynomial({a[0], a[1], a[2], a[3], a[4]}),
  });
}

Sl2Combination Sl2Combination::zeros(const Scalar& n) {
  const Scalar z = n.field().zero();
  return Sl2Combination{n, z, z, z, z, z, z, z, z, z, std::nullopt};
}

std::string Sl2Combination::str() const {
  std::string out;
  auto term = [&](const Scalar& s, const char* name) {
    if (s.is_zero()) return;
    if (!out.empty()) out += " + ";
    out += "(" + s.str() + ")" + name;
  };
  if (quartic) {
    term(quartic->plus_minus3, "J+J-J-J-");
    term(quartic->plus_minus2, "J+J-J-");
    term(quartic->zero_minus2, "J0J-J-");
  }
  term(plus_plus, "J+J+");
  term(plus_zero, "J+J0");
  term(zero_zero, "J0J0");
  term(zero_minus, "J0J-");
  term(minus_minus, "J-J-");
  term(plus, "J+");
  term(zero, "J0");
  term(minus, "J-");
  term(constant, "");
  return out.empty() ? "0" : out + "  [n=" + n.str() + "]";
}

LinearDiffOp sl2_compose(const Sl2Combination& c) {
  const auto j = sl2_generators(c.n);
  LinearDiffOp out;
  auto add = [&out](const Scalar& coeff, const LinearDiffOp& op) {
    if (!coeff.is_zero()) out += coeff * op;
  };
  const LinearDiffOp minus2 = compose(j.minus, j.minus);
  if (c.quartic) {
    add(c.quartic->plus_minus3, compose(j.plus, compose(j.minus, minus2)));
    add(c.quartic->plus_minus2, compose(j.plus, minus2));
    add(c.quartic->zero_minus2, compose(j.zero, minus2));
  }
  add(c.plus_plus, compose(j.plus, j.plus));
  add(c.plus_zero, compose(j.plus, j.zero));
  add(c.zero_zero, compose(j.zero, j.zero));
  add(c.zero_minus, compose(j.zero, j.minus));
  add(c.minus_minus, minus2);
  add(c.plus, j.plus);
  add(c.zero, j.zero);
  add(c.minus, j.minus);
  if (!c.constant.is_zero()) out += LinearDiffOp::multiplication(Polynomial::constant(c.constant));
  return out;
}

AlgebraizationResiduals algebraization_residuals(const HeunCoefficients& h, const Scalar& n) {
  require_same_field(h.field(), n.field(), "algebraization residuals");
  return {
      h.b[3] + Rational(2) * (n - Rational(1)) * h.a[4],
      h.c[2] - n * (n - Rational(1)) * h.a[4],
      h.c[1] + n * ((n - Rational(1)) * h.a[3] + h.b[2]),
  };
}

NotAlgebraizableError::NotAlgebraizableError(const AlgebraizationResiduals& residuals, const std::string& context)
    : Error(ErrorCode::NotAlgebraizable, context + ": nonzero residuals (r1, r2, r3) = (" + residuals.r1.str() +
                                             ", " + residuals.r2.str() + ", " + residuals.r3.str() + ")"),
      residuals_(residuals) {}

Sl2Combination sl2_decompose_quadratic(const HeunCoefficients& h, const Scalar& n) {
  const auto residuals = algebraization_residuals(h, n);
  if (!residuals.all_zero()) throw NotAlgebraizableError(residuals, "sl2_decompose_quadratic");

  const Scalar half_n = n / Rational(2);
  Sl2Combination c = Sl2Combination::zeros(n);
  c.plus_plus = h.a[4];
  c.plus_zero = h.a[3];
  c.zero_zero = h.a[2];
  c.zero_minus = h.a[1];
  c.minus_minus = h.a[0];
  c.plus = (Rational(3) * n - Rational(2)) / Rational(2) * h.a[3] + h.b[2];
  c.zero = (n - Rational(1)) * h.a[2] + h.b[1];
  c.minus = half_n * h.a[1] + h.b[0];
  c.constant = half_n * ((half_n - Rational(1)) * h.a[2] + h.b[1]) + h.c[0];
  return c;
}

Sl2Combination sl2_decompose_quartic(const LinearDiffOp& op, const Scalar& n) {
  const Field f = n.field();
  if (auto of = op.field()) require_same_field(f, *of, "sl2_decompose_quartic");
  if (op.order() > 4) {
    throw Error(ErrorCode::WrongLeadingShape, "operator order " + std::to_string(op.order()) + " exceeds 4");
  }
  const Polynomial& p4 = op.coeff(4);
  const Polynomial& p3 = op.coeff(3);
  const bool p4_ok = p4.is_zero() || (p4.degree() == 2 && p4.coeff(0).is_zero() && p4.coeff(1).is_zero());
  if (!p4_ok) {
    throw Error(ErrorCode::WrongLeadingShape, "d^4 coefficient is not a multiple of z^2: " + p4.str());
  }
  if (p3.degree() > 2 || !p3.coeff(0, f).is_zero()) {
    throw Error(ErrorCode::WrongLeadingShape, "d^3 coefficient is not of the form b z^2 + c z: " + p3.str());
  }

  const Scalar alpha = p4.coeff(2, f);
  const Scalar beta = p3.coeff(2, f);
  // alpha z^2 d^4 leaves alpha n z d^3 behind, which joins the z d^3 term.
  const Scalar gamma = p3.coeff(1, f) + alpha * n;

  // beta z^2 d^3 -> beta n z d^2 and gamma z d^3 -> gamma n/2 d^2.
  const Polynomial shifted_p2 = op.coeff(2) + Polynomial({gamma * n / Rational(2), beta * n});
  const LinearDiffOp remainder({op.coeff(0), op.coeff(1), shifted_p2});

  Sl2Combination c = sl2_decompose_quadratic(HeunCoefficients::from_operator(remainder, f), n);
  c.quartic = Sl2Combination::Quartic{alpha, beta, gamma};
  return c;
}

}  // namespace qes
