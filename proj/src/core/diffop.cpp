#include "core/diffop.hpp"

#include <algorithm>
#include <cmath>

namespace qes {

namespace {

const Polynomial& zero_polynomial() {
  static const Polynomial zero;
  return zero;
}

}  // namespace

LinearDiffOp::LinearDiffOp(std::vector<Polynomial> coeffs) : coeffs_(std::move(coeffs)) {
  std::optional<Field> f;
  for (const auto& p : coeffs_) {
    if (auto pf = p.field()) {
      if (f) require_same_field(*f, *pf, "operator");
      f = pf;
    }
  }
  trim();
}

void LinearDiffOp::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

LinearDiffOp LinearDiffOp::derivative(unsigned k, const Field& field) {
  std::vector<Polynomial> c(k + 1);
  c[k] = Polynomial::constant(field.one());
  return LinearDiffOp(std::move(c));
}

std::optional<Field> LinearDiffOp::field() const {
  for (const auto& p : coeffs_) {
    if (auto f = p.field()) return f;
  }
  return std::nullopt;
}

const Polynomial& LinearDiffOp::coeff(int k) const {
  if (k < 0 || k > order()) return zero_polynomial();
  return coeffs_[k];
}

Polynomial LinearDiffOp::apply(const Polynomial& p) const {
  Polynomial out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    out += coeffs_[k] * p.derivative(static_cast<unsigned>(k));
  }
  return out;
}

LinearDiffOp LinearDiffOp::gauge_shift(const Scalar& c) const {
  // p_k (D + c)^k = p_k sum_j C(k,j) c^{k-j} D^j
  std::vector<Polynomial> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    Scalar power = c.lift(1);
    for (std::size_t j = k + 1; j-- > 0;) {
      out[j] += coeffs_[k] * (power * binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)));
      power *= c;
    }
  }
  return LinearDiffOp(std::move(out));
}

std::string LinearDiffOp::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = order(); k >= 0; --k) {
    if (coeffs_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[k].str() + ")";
    if (k >= 1) out += "*d";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

LinearDiffOp& LinearDiffOp::operator+=(const LinearDiffOp& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

LinearDiffOp& LinearDiffOp::operator-=(const LinearDiffOp& rhs) { return *this += -rhs; }

LinearDiffOp LinearDiffOp::operator-() const {
  LinearDiffOp out;
  out.coeffs_.reserve(coeffs_.size());
  for (const auto& p : coeffs_) out.coeffs_.push_back(-p);
  return out;
}

LinearDiffOp operator*(const Scalar& s, const LinearDiffOp& op) {
  std::vector<Polynomial> out;
  out.reserve(op.coeffs_.size());
  for (const auto& p : op.coeffs_) out.push_back(p * s);
  return LinearDiffOp(std::move(out));
}

LinearDiffOp operator*(const Rational& r, const LinearDiffOp& op) {
  std::vector<Polynomial> out;
  out.reserve(op.coeffs_.size());
  for (const auto& p : op.coeffs_) out.push_back(p * r);
  return LinearDiffOp(std::move(out));
}

LinearDiffOp operator*(const Polynomial& q, const LinearDiffOp& op) {
  std::vector<Polynomial> out;
  out.reserve(op.coeffs_.size());
  for (const auto& p : op.coeffs_) out.push_back(q * p);
  return LinearDiffOp(std::move(out));
}

bool operator==(const LinearDiffOp& a, const LinearDiffOp& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
    if (!(a.coeffs_[k] == b.coeffs_[k])) return false;
  }
  return true;
}

LinearDiffOp compose(const LinearDiffOp& l1, const LinearDiffOp& l2) {
  if (l1.is_zero() || l2.is_zero()) return {};
  std::vector<Polynomial> out(static_cast<std::size_t>(l1.order() + l2.order() + 1));
  for (int i = 0; i <= l1.order(); ++i) {
    const Polynomial& a = l1.coeff(i);
    if (a.is_zero()) continue;
    for (int j = 0; j <= l2.order(); ++j) {
      const Polynomial& b = l2.coeff(j);
      if (b.is_zero()) continue;
      for (int m = 0; m <= i; ++m) {
        const Polynomial bm = b.derivative(static_cast<unsigned>(m));
        if (bm.is_zero()) break;
        out[i - m + j] += (a * bm) * binomial(static_cast<unsigned>(i), static_cast<unsigned>(m));
      }
    }
  }
  return LinearDiffOp(std::move(out));
}

LinearDiffOp commutator(const LinearDiffOp& l1, const LinearDiffOp& l2) {
  return compose(l1, l2) - compose(l2, l1);
}

bool preserves_space(const LinearDiffOp& op, unsigned n) {
  const auto f = op.field();
  if (!f) return true;
  for (unsigned k = 0; k <= n; ++k) {
    if (op.apply(Polynomial::monomial(f->one(), static_cast<int>(k))).degree() > static_cast<int>(n)) {
      return false;
    }
  }
  return true;
}

SpaceNotPreservedError::SpaceNotPreservedError(unsigned monomial, int degree, unsigned n)
    : Error(ErrorCode::SpaceNotPreserved,
            "operator maps z^" + std::to_string(monomial) + " to degree " + std::to_string(degree) +
                ", outside P_" + std::to_string(n + 1)),
      monomial_(monomial),
      degree_(degree) {}

Matrix restriction_matrix(const LinearDiffOp& op, unsigned n, double float_tolerance) {
  const Field f = op.field().value_or(Field::rationals());
  Matrix m(n + 1, n + 1, f);
  if (op.is_zero()) return m;
  for (unsigned j = 0; j <= n; ++j) {
    const Polynomial image = op.apply(Polynomial::monomial(f.one(), static_cast<int>(j)));
    if (image.degree() > static_cast<int>(n)) {
      bool noise = false;
      if (!f.is_exact()) {
        double scale = 0.0;
        for (const auto& c : image.coeffs()) scale = std::max(scale, std::abs(c.to_double()));
        noise = true;
        for (int k = static_cast<int>(n) + 1; k <= image.degree(); ++k) {
          if (std::abs(image.coeffs()[k].to_double()) > float_tolerance * scale) noise = false;
        }
      }
      if (!noise) throw SpaceNotPreservedError(j, image.degree(), n);
    }
    for (unsigned i = 0; i <= n && static_cast<int>(i) <= image.degree(); ++i) m(i, j) = image.coeffs()[i];
  }
  return m;
}

}  // namespace qes
