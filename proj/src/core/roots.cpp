#include "core/roots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "core/errors.hpp"

namespace qes {

namespace {

using cplx = std::complex<double>;

// sqrt(disc) = scale * sqrt(core) with core a squarefree integer, as far as
// trial division by small primes can tell.
std::pair<Rational, Rational> split_square(const Rational& disc) {
  mpz_class n = disc.numerator() * disc.denominator();
  mpz_class scale = 1;
  for (unsigned long p = 2; p < 100000 && p * p <= n; ++p) {
    const mpz_class sq = p * p;
    while (mpz_divisible_p(n.get_mpz_t(), sq.get_mpz_t())) {
      n /= sq;
      scale *= p;
    }
  }
  return {Rational(mpq_class(scale, disc.denominator())), Rational(mpq_class(n))};
}

// Parlett-Reinsch balancing with radix 2; keeps eigenvalues, tames the spread
// of companion entries.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      double g = r / 2.0;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::complex<long double> horner(const std::vector<double>& c, std::complex<long double> x,
                                 std::complex<long double>* derivative) {
  std::complex<long double> p = 0, dp = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * x + p;
    p = p * x + static_cast<long double>(c[k]);
  }
  if (derivative) *derivative = dp;
  return p;
}

cplx polish(const std::vector<double>& c, cplx root) {
  std::complex<long double> x(root.real(), root.imag());
  std::complex<long double> dp;
  long double best = std::abs(horner(c, x, &dp));
  for (int it = 0; it < 20 && best > 0; ++it) {
    if (std::abs(dp) == 0) break;
    const auto next = x - horner(c, x, nullptr) / dp;
    std::complex<long double> dnext;
    const long double value = std::abs(horner(c, next, &dnext));
    if (!(value < best)) break;
    x = next;
    dp = dnext;
    best = value;
  }
  return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

bool root_less(const PolynomialRoot& a, const PolynomialRoot& b) {
  if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
  return a.value.imag() < b.value.imag();
}

std::vector<PolynomialRoot> cluster(std::vector<cplx> values) {
  std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<PolynomialRoot> out;
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    cplx sum = values[i];
    unsigned count = 1;
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(values[j] - values[i]) <= 1e-9 * std::max(1.0, std::abs(values[i]))) {
        used[j] = true;
        sum += values[j];
        ++count;
      }
    }
    cplx mean = sum / static_cast<double>(count);
    if (std::abs(mean.imag()) <= 1e-9 * std::max(1.0, std::abs(mean))) mean = {mean.real(), 0.0};
    out.push_back({mean, count, std::nullopt});
  }
  std::sort(out.begin(), out.end(), root_less);
  return out;
}

// Continued-fraction convergents of x with denominators below 1e12.
std::vector<Rational> convergents(double x) {
  std::vector<Rational> out;
  if (!std::isfinite(x)) return out;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = x;
  for (int k = 0; k < 40; ++k) {
    const double a = std::floor(rest);
    if (std::abs(a) > 1e15) break;
    const long ai = static_cast<long>(a);
    const __int128 p2 = static_cast<__int128>(ai) * p1 + p0;
    const __int128 q2 = static_cast<__int128>(ai) * q1 + q0;
    if (q2 > 1'000'000'000'000 || p2 > 1'000'000'000'000'000'000 || p2 < -1'000'000'000'000'000'000) break;
    p0 = p1;
    q0 = q1;
    p1 = static_cast<long>(p2);
    q1 = static_cast<long>(q2);
    out.emplace_back(p1, q1);
    const double frac = rest - a;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  return out;
}

std::vector<double> to_doubles(const Polynomial& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& s : p.coeffs()) c.push_back(s.to_double());
  return c;
}

// Divides out (x - r) as often as it divides exactly; returns the count.
unsigned deflate(Polynomial& p, const Scalar& r) {
  const Field f = r.field();
  const Polynomial factor({-r, f.one()});
  unsigned m = 0;
  while (p.degree() >= 1 && p.evaluate(r).is_zero()) {
    p = p.divmod(factor).first;
    ++m;
  }
  return m;
}

}  // namespace

std::vector<PolynomialRoot> float_roots(const std::vector<double>& coeffs) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == 0.0) --hi;
  if (hi == 0) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  std::size_t lo = 0;
  while (coeffs[lo] == 0.0) ++lo;
  std::vector<double> c(coeffs.begin() + static_cast<std::ptrdiff_t>(lo), coeffs.begin() + static_cast<std::ptrdiff_t>(hi));

  std::vector<cplx> values(lo, cplx(0.0, 0.0));
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  if (n == 1) {
    values.emplace_back(-c[0] / c[1], 0.0);
  } else if (n > 1) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) comp(0, j) = -c[static_cast<std::size_t>(n - 1 - j)] / c[static_cast<std::size_t>(n)];
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    balance(comp);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "companion eigenvalues did not converge");
    for (Eigen::Index i = 0; i < n; ++i) values.push_back(polish(c, solver.eigenvalues()[i]));
  }
  return cluster(std::move(values));
}

std::vector<PolynomialRoot> find_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  const Field f = *p.field();
  if (!f.is_exact()) return float_roots(to_doubles(p));

  std::vector<PolynomialRoot> out;
  Polynomial rest = p;
  if (const unsigned zeros = deflate(rest, f.zero()); zeros > 0) out.push_back({0.0, zeros, f.zero()});

  while (rest.degree() >= 1) {
    if (rest.degree() == 1) {
      const Scalar r = -rest.coeff(0, f) / rest.leading();
      out.push_back({r.to_double(), deflate(rest, r), r});
      break;
    }
    bool found = false;
    for (const auto& approx : float_roots(to_doubles(rest))) {
      if (approx.value.imag() != 0.0 && std::abs(approx.value.imag()) > 1e-6 * std::max(1.0, std::abs(approx.value))) {
        continue;
      }
      const double x = approx.value.real();
      for (const auto& candidate : convergents(x)) {
        if (std::abs(candidate.to_double() - x) > 1e-6 * std::max(1.0, std::abs(x))) continue;
        const Scalar r = f(candidate);
        if (!rest.evaluate(r).is_zero()) continue;
        out.push_back({r.to_double(), deflate(rest, r), r});
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) break;
  }

  if (rest.degree() == 2 && f.kind() == ScalarKind::Rational) {
    const Rational a = rest.coeff(2).rational();
    const Rational b = rest.coeff(1, f).rational();
    const Rational c = rest.coeff(0, f).rational();
    const Rational disc = b * b - Rational(4) * a * c;
    if (disc.sign() >= 0) {
      if (disc.is_zero()) {
        const Scalar r(-b / (Rational(2) * a));
        out.push_back({r.to_double(), 2, r});
      } else {
        const auto [scale, core] = split_square(disc);
        const Scalar s = Field::quadratic(core).generator() * scale;
        for (int sign : {-1, 1}) {
          const Scalar r = (Rational(sign) * s - Rational(b)) / Rational(Rational(2) * a);
          out.push_back({r.to_double(), 1, r});
        }
      }
      rest = Polynomial::constant(f.one());
    }
  }
  if (rest.degree() >= 1) {
    for (auto& r : float_roots(to_doubles(rest))) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), root_less);
  return out;
}

}  // namespace qes
