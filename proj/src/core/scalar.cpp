#include "core/scalar.hpp"

#include <charconv>
#include <cmath>

#include "core/errors.hpp"

namespace qes {

namespace {

[[noreturn]] void incompatible(const Field& a, const Field& b, const char* context) {
  throw Error(ErrorCode::IncompatibleField,
              std::string(context) + ": cannot combine " + a.str() + " with " + b.str());
}

bool quad_is_zero(const Scalar::Quad& q) {
  if (q.b.is_zero()) return q.a.is_zero();
  // a + b*sqrt(d) = 0 needs a, b of opposite signs and a^2 = b^2 d.
  return q.a.sign() * q.b.sign() < 0 && q.a * q.a == q.b * q.b * q.d;
}

int quad_sign(const Scalar::Quad& q) {
  const int sa = q.a.sign();
  const int sb = q.b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const auto lhs = q.a * q.a;
  const auto rhs = q.b * q.b * q.d;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

Field Field::quadratic(const Rational& d) {
  if (d.sign() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "quadratic extension needs d > 0, got " + d.str());
  }
  return Field(ScalarKind::QuadExt, d);
}

Scalar Field::operator()(const Rational& value) const {
  switch (kind_) {
    case ScalarKind::Rational: return Scalar(value);
    case ScalarKind::QuadExt: return Scalar::quad(value, Rational(0), d_);
    case ScalarKind::Float: return Scalar::real(value.to_double());
  }
  return Scalar(value);
}

Scalar Field::zero() const { return (*this)(Rational(0)); }
Scalar Field::one() const { return (*this)(Rational(1)); }

Scalar Field::generator() const {
  if (kind_ != ScalarKind::QuadExt) {
    throw Error(ErrorCode::InvalidArgument, "generator() needs a quadratic field, have " + str());
  }
  return Scalar::quad(Rational(0), Rational(1), d_);
}

std::string Field::str() const {
  switch (kind_) {
    case ScalarKind::Rational: return "Q";
    case ScalarKind::QuadExt: return "Q(√" + d_.str() + ")";
    case ScalarKind::Float: return "float64";
  }
  return "?";
}

void require_same_field(const Field& a, const Field& b, const char* context) {
  if (!(a == b)) incompatible(a, b, context);
}

Scalar Scalar::quad(Rational a, Rational b, Rational d) {
  if (d.sign() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "quadratic extension needs d > 0, got " + d.str());
  }
  return Scalar(Storage(Quad{std::move(a), std::move(b), std::move(d)}));
}

Field Scalar::field() const {
  switch (kind()) {
    case ScalarKind::Rational: return Field::rationals();
    case ScalarKind::QuadExt: return Field::quadratic(std::get<Quad>(value_).d);
    case ScalarKind::Float: return Field::floating();
  }
  return Field::rationals();
}

bool Scalar::is_zero() const {
  switch (kind()) {
    case ScalarKind::Rational: return std::get<Rational>(value_).is_zero();
    case ScalarKind::QuadExt: return quad_is_zero(std::get<Quad>(value_));
    case ScalarKind::Float: return std::get<double>(value_) == 0.0;
  }
  return false;
}

int Scalar::sign() const {
  switch (kind()) {
    case ScalarKind::Rational: return std::get<Rational>(value_).sign();
    case ScalarKind::QuadExt: return quad_sign(std::get<Quad>(value_));
    case ScalarKind::Float: {
      const double v = std::get<double>(value_);
      return (v > 0) - (v < 0);
    }
  }
  return 0;
}

double Scalar::to_double() const {
  switch (kind()) {
    case ScalarKind::Rational: return std::get<Rational>(value_).to_double();
    case ScalarKind::QuadExt: {
      const auto& q = std::get<Quad>(value_);
      if (auto r = as_rational()) return r->to_double();
      if (auto root = q.d.sqrt()) return (q.a + q.b * *root).to_double();
      mpf_class root(q.d.value(), 256);
      mpf_sqrt(root.get_mpf_t(), root.get_mpf_t());
      mpf_class v(q.b.value(), 256);
      v *= root;
      v += mpf_class(q.a.value(), 256);
      return Rational(mpq_class(v)).to_double();
    }
    case ScalarKind::Float: return std::get<double>(value_);
  }
  return 0.0;
}

std::string Scalar::str() const {
  switch (kind()) {
    case ScalarKind::Rational: return std::get<Rational>(value_).str();
    case ScalarKind::QuadExt: {
      const auto& q = std::get<Quad>(value_);
      if (q.b.is_zero()) return q.a.str();
      return "(" + q.a.str() + ")+(" + q.b.str() + ")√(" + q.d.str() + ")";
    }
    case ScalarKind::Float: return format_double(std::get<double>(value_));
  }
  return "?";
}

std::optional<Rational> Scalar::as_rational() const {
  switch (kind()) {
    case ScalarKind::Rational: return std::get<Rational>(value_);
    case ScalarKind::QuadExt: {
      const auto& q = std::get<Quad>(value_);
      if (q.b.is_zero()) return q.a;
      if (auto root = q.d.sqrt()) return q.a + q.b * *root;
      return std::nullopt;
    }
    case ScalarKind::Float: return std::nullopt;
  }
  return std::nullopt;
}

const Rational& Scalar::rational() const {
  if (kind() != ScalarKind::Rational) {
    throw Error(ErrorCode::IncompatibleField, "expected a rational scalar, have " + field().str());
  }
  return std::get<Rational>(value_);
}

const Scalar::Quad& Scalar::quad_parts() const {
  if (kind() != ScalarKind::QuadExt) {
    throw Error(ErrorCode::IncompatibleField, "expected a quadratic-extension scalar, have " + field().str());
  }
  return std::get<Quad>(value_);
}

double Scalar::real_value() const {
  if (kind() != ScalarKind::Float) {
    throw Error(ErrorCode::IncompatibleField, "expected a float scalar, have " + field().str());
  }
  return std::get<double>(value_);
}

Scalar Scalar::embed(const Field& target) const {
  const Field source = field();
  if (source == target) return *this;
  if (target.kind() == ScalarKind::Float) return real(to_double());
  if (source.kind() == ScalarKind::Rational && target.kind() == ScalarKind::QuadExt) {
    return quad(std::get<Rational>(value_), Rational(0), target.discriminant());
  }
  incompatible(source, target, "embed");
}

Scalar Scalar::inv() const {
  switch (kind()) {
    case ScalarKind::Rational: {
      const auto& r = std::get<Rational>(value_);
      if (r.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
      return Scalar(Rational(1) / r);
    }
    case ScalarKind::QuadExt: {
      const auto& q = std::get<Quad>(value_);
      if (quad_is_zero(q)) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
      const Rational norm = q.a * q.a - q.b * q.b * q.d;
      if (!norm.is_zero()) return quad(q.a / norm, -q.b / norm, q.d);
      // Zero norm with a nonzero value only happens for a perfect-square d
      // with a = b*sqrt(d); the value is then the rational 2a.
      return quad(Rational(1) / (q.a + q.a), Rational(0), q.d);
    }
    case ScalarKind::Float: {
      const double v = std::get<double>(value_);
      if (v == 0.0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
      return real(1.0 / v);
    }
  }
  return *this;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_field(field(), rhs.field(), "add");
  switch (kind()) {
    case ScalarKind::Rational: std::get<Rational>(value_) += std::get<Rational>(rhs.value_); break;
    case ScalarKind::QuadExt: {
      auto& q = std::get<Quad>(value_);
      const auto& r = std::get<Quad>(rhs.value_);
      q.a += r.a;
      q.b += r.b;
      break;
    }
    case ScalarKind::Float: std::get<double>(value_) += std::get<double>(rhs.value_); break;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_field(field(), rhs.field(), "sub");
  switch (kind()) {
    case ScalarKind::Rational: std::get<Rational>(value_) -= std::get<Rational>(rhs.value_); break;
    case ScalarKind::QuadExt: {
      auto& q = std::get<Quad>(value_);
      const auto& r = std::get<Quad>(rhs.value_);
      q.a -= r.a;
      q.b -= r.b;
      break;
    }
    case ScalarKind::Float: std::get<double>(value_) -= std::get<double>(rhs.value_); break;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_field(field(), rhs.field(), "mul");
  switch (kind()) {
    case ScalarKind::Rational: std::get<Rational>(value_) *= std::get<Rational>(rhs.value_); break;
    case ScalarKind::QuadExt: {
      auto& q = std::get<Quad>(value_);
      const auto& r = std::get<Quad>(rhs.value_);
      Rational a = q.a * r.a + q.b * r.b * q.d;
      Rational b = q.a * r.b + q.b * r.a;
      q.a = std::move(a);
      q.b = std::move(b);
      break;
    }
    case ScalarKind::Float: std::get<double>(value_) *= std::get<double>(rhs.value_); break;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_field(field(), rhs.field(), "div");
  return *this *= rhs.inv();
}

Scalar Scalar::operator-() const {
  switch (kind()) {
    case ScalarKind::Rational: return Scalar(-std::get<Rational>(value_));
    case ScalarKind::QuadExt: {
      const auto& q = std::get<Quad>(value_);
      return quad(-q.a, -q.b, q.d);
    }
    case ScalarKind::Float: return real(-std::get<double>(value_));
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  require_same_field(a.field(), b.field(), "compare");
  if (a.kind() == ScalarKind::Float) return std::get<double>(a.value_) == std::get<double>(b.value_);
  return (a - b).is_zero();
}

Scalar sqrt_generator(const Scalar& x) {
  if (x.kind() == ScalarKind::Float) {
    if (x.real_value() < 0) throw Error(ErrorCode::InvalidArgument, "square root of a negative number");
    return Scalar::real(std::sqrt(x.real_value()));
  }
  const auto r = x.as_rational();
  if (!r) throw Error(ErrorCode::IncompatibleField, "square root of an irrational quadratic element");
  return Field::quadratic(*r).generator();
}

}  // namespace qes
