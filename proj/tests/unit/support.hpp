#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "core/diffop.hpp"
#include "core/errors.hpp"
#include "core/matrix.hpp"
#include "core/models.hpp"
#include "core/polynomial.hpp"
#include "core/rational.hpp"
#include "core/scalar.hpp"

namespace qes {

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }
inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

}  // namespace qes

namespace qes::test {

inline Rational R(long p, long q = 1) { return Rational(p, q); }
inline Scalar S(long p, long q = 1) { return Scalar(Rational(p, q)); }

/// Polynomial from rational coefficients, lowest power first.
inline Polynomial P(std::initializer_list<Rational> cs) {
  std::vector<Scalar> v;
  for (const auto& c : cs) v.emplace_back(c);
  return Polynomial(v);
}

inline Polynomial z() { return Polynomial::variable(Field::rationals()); }
inline LinearDiffOp D(unsigned k = 1) { return LinearDiffOp::derivative(k, Field::rationals()); }
inline LinearDiffOp mul(const Polynomial& p) { return LinearDiffOp::multiplication(p); }

template <typename F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}
  Rational rational(long span = 9) {
    std::uniform_int_distribution<long> num(-span, span), den(1, span);
    return Rational(num(rng_), den(rng_));
  }
  Rational nonzero(long span = 9) {
    Rational r = rational(span);
    while (r.is_zero()) r = rational(span);
    return r;
  }
  Polynomial poly(int degree) {
    std::vector<Scalar> v;
    for (int k = 0; k <= degree; ++k) v.emplace_back(rational());
    return Polynomial(v);
  }
  LinearDiffOp op(int order, int degree) {
    std::vector<Polynomial> v;
    for (int k = 0; k <= order; ++k) v.push_back(poly(degree));
    return LinearDiffOp(v);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

inline ModelParams rabi(Rational g, Rational delta_level = 1, Rational drive = 0, Branch b = Branch::Minus,
                        Rational omega = 1) {
  ModelParams p;
  p.kind = ModelKind::Rabi;
  p.omega = Scalar(omega);
  p.coupling = Scalar(g);
  p.level_splitting = Scalar(delta_level);
  p.drive = Scalar(drive);
  p.branch = b;
  return p;
}

inline ModelParams twophoton(Rational g, Rational q, Rational delta_level = 1, Rational omega = 1) {
  ModelParams p;
  p.kind = ModelKind::TwoPhoton;
  p.omega = Scalar(omega);
  p.coupling = Scalar(g);
  p.level_splitting = Scalar(delta_level);
  p.bargmann_index = Scalar(q);
  return p;
}

inline ModelParams twomode(Rational g, Rational kappa, Rational delta_level = 1, Rational omega = 1) {
  ModelParams p = twophoton(g, kappa, delta_level, omega);
  p.kind = ModelKind::TwoMode;
  return p;
}

inline ModelParams floating(ModelParams p) {
  const auto f = [](const Scalar& s) { return Scalar::real(s.to_double()); };
  p.omega = f(p.omega);
  p.coupling = f(p.coupling);
  p.level_splitting = f(p.level_splitting);
  p.drive = f(p.drive);
  if (p.bargmann_index) p.bargmann_index = f(*p.bargmann_index);
  return p;
}

/// Determinant by cofactor expansion along the first row. Exponential, only
/// meant as an independent check on small matrices.
inline Scalar laplace_det(const std::vector<std::vector<Scalar>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Scalar total = m[0][0] - m[0][0];
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Scalar>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Scalar> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    const Scalar term = m[0][j] * laplace_det(minor);
    total = (j % 2 == 0) ? total + term : total - term;
  }
  return total;
}

/// det(lambda I - M) at a given lambda, via laplace_det.
inline Scalar char_poly_at(const Matrix& m, const Scalar& lambda) {
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = (r == c ? lambda : lambda - lambda) - m(r, c);
  return laplace_det(a);
}

}  // namespace qes::test
