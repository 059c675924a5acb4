#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace qes;
using namespace qes::test;

TEST_SUITE("polyalg") {

TEST_CASE("rational parsing is exact and canonical") {
  CHECK(Rational::parse("0.3") == R(3, 10));
  CHECK(Rational::parse("-6/8") == R(-3, 4));
  CHECK(Rational::parse("1e-3") == R(1, 1000));
  CHECK(Rational::parse("2.5E+2") == R(250));
  CHECK(R(6, -8).str() == "-3/4");
  CHECK(R(4, 2).str() == "2");
  CHECK(error_of([] { Rational::parse("1/0"); }) != ErrorCode{});
  CHECK(error_of([] { Rational::parse("abc"); }) != ErrorCode{});
}

TEST_CASE("rational to_double rounds to nearest") {
  CHECK(R(-1, 5).to_double() == -0.2);
  CHECK(R(1, 10).to_double() == 0.1);
  CHECK(R(2, 3).to_double() == 2.0 / 3.0);
  CHECK(R(91, 100).to_double() == 0.91);
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const long p = rng.integer(-100000, 100000), q = rng.integer(1, 100000);
    CHECK(R(p, q).to_double() == static_cast<double>(p) / static_cast<double>(q));
  }
}

TEST_CASE("quadratic extension arithmetic") {
  const Rational d(9, 25);
  const Scalar x = Scalar::quad(R(1), R(2), d);
  const Scalar three = Scalar::quad(R(3), R(0), d);
  const Scalar prod = x * three;
  CHECK(prod.quad_parts().a == R(3));
  CHECK(prod.quad_parts().b == R(6));

  const Scalar root = Scalar::quad(R(0), R(1), R(16, 25));
  const Scalar sq = root * root;
  CHECK(sq.as_rational() == R(16, 25));

  const Scalar y = Scalar::quad(R(1), R(1), R(9, 16));
  const Scalar inv = y.inv();
  CHECK((inv * y) == R(1));
  CHECK(inv.as_rational() == R(4, 7));
}

TEST_CASE("mixed fields are rejected") {
  const Scalar a = Scalar::quad(R(1), R(1), R(2));
  const Scalar b = Scalar::quad(R(1), R(1), R(3));
  CHECK(error_of([&] { (void)(a + b); }) == ErrorCode::IncompatibleField);
  CHECK(error_of([&] { (void)(S(1) * Scalar::real(1.0)); }) == ErrorCode::IncompatibleField);
  CHECK(error_of([&] { (void)(S(1) / S(0)); }) == ErrorCode::DivisionByZero);
  CHECK(error_of([&] { (void)Scalar::quad(R(0), R(0), R(2)).inv(); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("field axioms on random samples") {
  Rng rng(20240101);
  const Rational d(7, 3);
  for (int i = 0; i < 200; ++i) {
    const Scalar x = Scalar::quad(rng.rational(), rng.rational(), d);
    const Scalar y = Scalar::quad(rng.rational(), rng.rational(), d);
    const Scalar w = Scalar::quad(rng.rational(), rng.rational(), d);
    CHECK((x * y) * w == x * (y * w));
    CHECK((x + y) * w == x * w + y * w);
    if (!x.is_zero()) CHECK(x * x.inv() == R(1));
    const Scalar a(rng.rational()), b(rng.rational());
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("Omega squared is rational") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Rational w = rng.nonzero().abs();
    const Rational g = rng.rational() * w / R(3);
    const Rational d = R(1) - R(4) * g * g / (w * w);
    if (d.sign() <= 0) continue;
    const Scalar omega = sqrt_generator(Scalar(d));
    CHECK((omega * omega).as_rational() == d);
  }
}

TEST_CASE("quad to_double is accurate") {
  const Scalar x = Scalar::quad(R(-1, 2), R(1, 2), R(16, 25));
  CHECK(x.to_double() == -0.1);
  const Scalar y = Scalar::quad(R(1), R(1), R(2));
  CHECK(y.to_double() == 1.0 + std::sqrt(2.0));
  CHECK(x.str() == "(-1/2)+(1/2)√(16/25)");
  CHECK(Scalar::quad(R(3, 4), R(0), R(2)).str() == "3/4");
}

TEST_CASE("polynomial ring operations") {
  CHECK(P({R(-1), R(1)}) * P({R(1), R(1)}) == P({R(-1), R(0), R(1)}));
  const Polynomial sum = P({R(0), R(0), R(1)}) + P({R(0), R(0), R(-1)});
  CHECK(sum.is_zero());
  CHECK(sum.degree() == Polynomial::kZeroDegree);
  const Rational g(1, 2);
  const Polynomial x = P({-g, R(1)}) * P({g, R(1)});
  CHECK(x == P({R(-1, 4), R(0), R(1)}));
  CHECK(error_of([] { (void)(P({R(1), R(1)}) + Polynomial({Scalar::real(1.0)})); }) == ErrorCode::IncompatibleField);
}

TEST_CASE("polynomial derivative") {
  CHECK(P({R(0), R(0), R(0), R(1)}).derivative() == P({R(0), R(0), R(3)}));
  CHECK(P({R(0), R(1)}).derivative(2).is_zero());
  CHECK(P({R(7, 3), R(1)}).derivative() == P({R(1)}));
}

TEST_CASE("Leibniz rule on random polynomials") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Polynomial p = rng.poly(rng.integer(0, 5)), q = rng.poly(rng.integer(0, 5));
    CHECK((p * q).derivative() == p.derivative() * q + p * q.derivative());
    CHECK((p * q).degree() == (p.is_zero() || q.is_zero() ? Polynomial::kZeroDegree : p.degree() + q.degree()));
    CHECK((p + q).degree() <= std::max(p.degree(), q.degree()));
  }
}

TEST_CASE("polynomial division") {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const Polynomial a = rng.poly(rng.integer(0, 6));
    Polynomial b = rng.poly(rng.integer(0, 3));
    if (b.is_zero()) continue;
    const auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
}

}  // TEST_SUITE
