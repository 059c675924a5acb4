#include "core/polynomial.hpp"

#include "core/errors.hpp"

namespace qes {

Polynomial::Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
  if (!coeffs_.empty()) {
    const Field f = coeffs_.front().field();
    for (const auto& c : coeffs_) require_same_field(f, c.field(), "polynomial");
  }
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(const Scalar& c, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative monomial exponent");
  std::vector<Scalar> v(static_cast<std::size_t>(k) + 1, c.field().zero());
  v.back() = c;
  return Polynomial(std::move(v));
}

std::optional<Field> Polynomial::field() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.front().field();
}

Scalar Polynomial::coeff(int k, const Field& field) const {
  if (k < 0 || k > degree()) return field.zero();
  require_same_field(field, coeffs_[k].field(), "coeff");
  return coeffs_[k];
}

Scalar Polynomial::coeff(int k) const {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "coefficient of the zero polynomial needs a field");
  return coeff(k, coeffs_.front().field());
}

const Scalar& Polynomial::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Polynomial Polynomial::derivative(unsigned order) const {
  if (order == 0) return *this;
  if (degree() < static_cast<int>(order)) return {};
  std::vector<Scalar> out;
  out.reserve(coeffs_.size() - order);
  for (std::size_t k = order; k < coeffs_.size(); ++k) {
    Rational falling(1);
    for (unsigned j = 0; j < order; ++j) falling *= Rational(static_cast<long>(k - j));
    out.push_back(coeffs_[k] * falling);
  }
  return Polynomial(std::move(out));
}

Scalar Polynomial::evaluate(const Scalar& x) const {
  Scalar acc = x.lift(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::embed(const Field& target) const {
  std::vector<Scalar> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.embed(target));
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (is_zero()) return {};
  require_same_field(*field(), *divisor.field(), "divmod");
  const int dd = divisor.degree();
  if (degree() < dd) return {Polynomial(), *this};

  std::vector<Scalar> rem = coeffs_;
  std::vector<Scalar> quot(static_cast<std::size_t>(degree() - dd + 1), field()->zero());
  const Scalar lead_inv = divisor.leading().inv();
  for (int k = degree(); k >= dd; --k) {
    const Scalar c = rem[k] * lead_inv;
    quot[k - dd] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= c * divisor.coeffs_[j];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::string Polynomial::str(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    if (coeffs_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += coeffs_[k].str();
    if (k >= 1) out += "*" + var;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.empty()) return *this;
  if (coeffs_.empty()) return *this = rhs;
  require_same_field(*field(), *rhs.field(), "polynomial add");
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), field()->zero());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial Polynomial::operator-() const {
  Polynomial out;
  out.coeffs_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.coeffs_.push_back(-c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  require_same_field(*a.field(), *b.field(), "polynomial mul");
  std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, a.field()->zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& p, const Scalar& s) {
  if (p.is_zero()) return {};
  std::vector<Scalar> out;
  out.reserve(p.coeffs_.size());
  for (const auto& c : p.coeffs_) out.push_back(c * s);
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& p, const Rational& r) {
  if (p.is_zero()) return {};
  return p * p.coeffs_.front().lift(r);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
    if (!(a.coeffs_[k] == b.coeffs_[k])) return false;
  }
  return true;
}

}  // namespace qes
