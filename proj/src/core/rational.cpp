#include "core/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

#include "core/errors.hpp"

namespace qes {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw Error(ErrorCode::InvalidArgument, "not a rational literal: '" + std::string(text) + "'");
}

mpz_class parse_integer(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad_literal(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  mpq_class result;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_literal(text);
    const mpz_class d = parse_integer(den);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    result = mpq_class(parse_integer(num), d);
  } else {
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      if (!all_digits(exp_part) || exp_part.size() > 6) bad_literal(text);
      exponent = std::stol(std::string(exp_part));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad_literal(text);
    if (!int_part.empty() && !all_digits(int_part)) bad_literal(text);
    if (!frac_part.empty() && !all_digits(frac_part)) bad_literal(text);

    const std::string digits = std::string(int_part) + std::string(frac_part);
    const mpz_class mantissa = parse_integer(digits);
    exponent -= static_cast<long>(frac_part.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    result = exponent < 0 ? mpq_class(mantissa, scale) : mpq_class(mantissa * scale);
  }
  result.canonicalize();
  if (negative) result = -result;
  return Rational(result);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::pow(unsigned exponent) const {
  Rational result(1);
  for (unsigned i = 0; i < exponent; ++i) result *= *this;
  return result;
}

double Rational::to_double() const {
  if (is_zero()) return 0.0;
  const mpz_class num = ::abs(value_.get_num());
  const mpz_class& den = value_.get_den();
  const long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  // quotient scaled into [2^54, 2^56), remainder folded into a sticky bit
  const long shift = 55 - e;
  mpz_class scaled = num, q, r;
  if (shift > 0) mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), shift);
  mpz_class d = den;
  if (shift < 0) mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), -shift);
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), d.get_mpz_t());
  std::uint64_t m = mpz_get_ui(q.get_mpz_t());
  if (r != 0) m |= 1;
  const double v = std::ldexp(static_cast<double>(m), static_cast<int>(-shift));
  return sign() < 0 ? -v : v;
}

std::optional<Rational> Rational::sqrt() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class num = numerator();
  const mpz_class den = denominator();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(mpq_class(r));
}

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IncompatibleField: return "IncompatibleField";
    case ErrorCode::SpaceNotPreserved: return "SpaceNotPreserved";
    case ErrorCode::NotHeunOperator: return "NotHeunOperator";
    case ErrorCode::NotAlgebraizable: return "NotAlgebraizable";
    case ErrorCode::WrongLeadingShape: return "WrongLeadingShape";
    case ErrorCode::DecoupledModel: return "DecoupledModel";
    case ErrorCode::CouplingOutOfRange: return "CouplingOutOfRange";
    case ErrorCode::ZeroCoupling: return "ZeroCoupling";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::InputOutOfValidatedRange: return "InputOutOfValidatedRange";
    case ErrorCode::InvalidRange: return "InvalidRange";
  }
  return "Unknown";
}

}  // namespace qes
