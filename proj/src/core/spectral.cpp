#include "core/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "core/parallel.hpp"

namespace qes {

Field common_field(const Field& a, const Field& b) {
  if (a == b) return a;
  if (!a.is_exact()) return a;
  if (!b.is_exact()) return b;
  if (a.kind() == ScalarKind::Rational) return b;
  if (b.kind() == ScalarKind::Rational) return a;
  throw Error(ErrorCode::IncompatibleField, "no common field for " + a.str() + " and " + b.str());
}

LinearDiffOp embed(const LinearDiffOp& op, const Field& field) {
  std::vector<Polynomial> c;
  c.reserve(op.coeffs().size());
  for (const auto& p : op.coeffs()) c.push_back(p.embed(field));
  return LinearDiffOp(std::move(c));
}

Matrix embed(const Matrix& m, const Field& field) {
  Matrix out(m.rows(), m.cols(), field);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).embed(field);
  return out;
}

namespace {

Field field_of(const Polynomial& p, const Field& fallback) { return p.field().value_or(fallback); }

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_double();
  return out;
}

double max_abs(const Polynomial& p) {
  double m = 0.0;
  for (const auto& c : p.coeffs()) m = std::max(m, std::abs(c.to_double()));
  return m;
}

Polynomial normalize(const Polynomial& phi) {
  if (phi.is_zero()) return phi;
  const Field f = *phi.field();
  const double scale = max_abs(phi);
  for (const auto& c : phi.coeffs()) {
    if (f.is_exact() ? c.is_zero() : std::abs(c.to_double()) <= 1e-8 * scale) continue;
    return phi * c.inv();
  }
  return phi;
}

unsigned root_multiplicity(Polynomial p, const Scalar& r) {
  const Polynomial factor({-r, r.field().one()});
  unsigned m = 0;
  while (p.degree() >= 1 && p.evaluate(r).is_zero()) {
    p = p.divmod(factor).first;
    ++m;
  }
  return m;
}

ModelParams with_unit_splitting(ModelParams p) {
  p.level_splitting = p.field().one();
  return p;
}

struct Prepared {
  Scalar energy;
  EliminatedOperator op;
  Matrix restriction;
};

Prepared prepare(const ModelParams& p, unsigned n) {
  const Scalar e = exceptional_energy(p, n);
  EliminatedOperator op = model_operator(p, e);
  Matrix m = restriction_matrix(op.op, n);
  return {e, std::move(op), std::move(m)};
}

std::vector<ExceptionalSolution> solve(const ModelParams& p, unsigned n, const Scalar& target,
                                       std::optional<Scalar> delta) {
  const Prepared prep = prepare(p, n);
  Field f = common_field(prep.restriction.field(), target.field());
  if (delta) f = common_field(f, delta->field());
  const int sign = prep.op.target_sign;

  std::vector<Polynomial> kernel;
  unsigned multiplicity = 0;
  if (f.is_exact()) {
    const Scalar t = target.embed(f);
    Matrix shifted = embed(prep.restriction, f);
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= t;
    for (auto& v : kernel_basis(shifted)) kernel.push_back(Polynomial(std::move(v)));
    multiplicity = root_multiplicity(characteristic_polynomial(prep.restriction).embed(f), t);
  } else {
    const double t = target.to_double();
    Eigen::MatrixXd m = to_eigen(prep.restriction);
    m.diagonal().array() -= t;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) > 1e-10 * scale) continue;
      std::vector<Scalar> c;
      for (Eigen::Index i = 0; i < m.rows(); ++i) c.push_back(Scalar::real(svd.matrixV()(i, k)));
      kernel.push_back(Polynomial(std::move(c)));
    }
    const auto cp = characteristic_polynomial(prep.restriction);
    for (const auto& r : find_roots(cp)) {
      if (std::abs(r.value - std::complex<double>(t, 0.0)) <= 1e-7 * std::max(1.0, std::abs(t))) {
        multiplicity += r.multiplicity;
      }
    }
  }
  if (kernel.empty()) {
    throw Error(ErrorCode::NotAnEigenvalue,
                target.str() + " is not an eigenvalue of the restricted operator at n=" + std::to_string(n));
  }

  // Delta from the target when the caller did not give one.
  if (!delta) {
    const Scalar s = target.embed(f) * Rational(sign);
    if (!f.is_exact()) {
      if (s.to_double() >= -1e-12 * std::max(1.0, std::abs(s.to_double()))) {
        delta = Scalar::real(std::sqrt(std::max(0.0, s.to_double())));
      }
    } else if (const auto r = s.as_rational(); r && r->sign() >= 0) {
      if (const auto root = r->sqrt()) {
        delta = f(*root);
      } else if (f.kind() == ScalarKind::Rational) {
        f = Field::quadratic(*r);
        delta = f.generator();
      }
    }
  }

  std::optional<CoupledSystem> system;
  try {
    system = coupled_system(with_unit_splitting(p), prep.energy);
  } catch (const Error&) {
  }

  std::vector<ExceptionalSolution> out;
  for (const auto& v : kernel) {
    ExceptionalSolution sol;
    sol.n = n;
    sol.energy = prep.energy;
    sol.target = target.embed(f);
    sol.delta = delta ? std::optional<Scalar>(delta->embed(f)) : std::nullopt;
    sol.multiplicity = multiplicity;
    sol.kernel_dim = static_cast<unsigned>(kernel.size());
    sol.phi = normalize(v).embed(f);
    sol.kept = prep.op.kept;
    if (system) sol.gauge_exponent = system->gauge_exponent;

    const Polynomial res = verify_target(p, prep.energy, sol.target, sol.phi);
    if (f.is_exact() ? !res.is_zero()
                     : max_abs(res) > 1e-10 * std::max(1.0, max_abs(embed(prep.op.op, f).apply(sol.phi)))) {
      throw Error(ErrorCode::NumericalFailure, "eigenpolynomial residual " + res.str() + " is not zero");
    }
    if (system && sol.delta && !sol.delta->is_zero()) sol.companion = companion_component(sol, *system);
    out.push_back(std::move(sol));
  }
  return out;
}

}  // namespace

ConstraintPolynomial constraint_polynomial(const ModelParams& p, unsigned n) {
  Prepared prep = prepare(p, n);
  return {characteristic_polynomial(prep.restriction),
          p.kind,
          p.branch,
          n,
          prep.op.target_sign,
          prep.energy,
          std::move(prep.restriction)};
}

std::vector<ExceptionalSolution> eigenpolynomials(const ModelParams& p, unsigned n, const Scalar& delta) {
  const int sign = model_operator(p, exceptional_energy(p, n)).target_sign;
  return solve(p, n, delta * delta * Rational(sign), delta);
}

std::vector<ExceptionalSolution> eigenpolynomials_at(const ModelParams& p, unsigned n, const Scalar& target) {
  return solve(p, n, target, std::nullopt);
}

Polynomial companion_component(const ExceptionalSolution& sol, const CoupledSystem& system) {
  if (!sol.delta || sol.delta->is_zero()) {
    throw Error(ErrorCode::DecoupledModel, "companion component needs a nonzero Delta");
  }
  Field f = common_field(field_of(sol.phi, sol.delta->field()), sol.delta->field());
  if (auto sf = system.plus_op.field()) f = common_field(f, *sf);
  const bool plus = sol.kept == Component::Plus;
  const LinearDiffOp op = embed(plus ? system.plus_op : system.minus_op, f);
  const int sign = plus ? system.plus_sign : system.minus_sign;
  return op.apply(sol.phi.embed(f)) * (sol.delta->embed(f) * Rational(sign)).inv();
}

Polynomial verify_target(const ModelParams& p, const Scalar& energy, const Scalar& target, const Polynomial& phi) {
  const EliminatedOperator op = model_operator(p, energy);
  Field f = common_field(op.op.field().value_or(model_field(p)), target.field());
  f = common_field(f, field_of(phi, f));
  const Polynomial x = phi.embed(f);
  return embed(op.op, f).apply(x) - x * target.embed(f);
}

Polynomial verify_solution(const ModelParams& p, const Scalar& energy, const Scalar& delta, const Polynomial& phi) {
  const int sign = model_operator(p, energy).target_sign;
  return verify_target(p, energy, delta * delta * Rational(sign), phi);
}

std::pair<Polynomial, Polynomial> coupled_residuals(const CoupledSystem& system, const Scalar& delta,
                                                    const Polynomial& phi_plus, const Polynomial& phi_minus) {
  Field f = delta.field();
  if (auto sf = system.plus_op.field()) f = common_field(f, *sf);
  f = common_field(f, field_of(phi_plus, f));
  f = common_field(f, field_of(phi_minus, f));
  const Scalar d = delta.embed(f);
  const Polynomial a = phi_plus.embed(f);
  const Polynomial b = phi_minus.embed(f);
  return {embed(system.plus_op, f).apply(a) - b * (d * Rational(system.plus_sign)),
          embed(system.minus_op, f).apply(b) - a * (d * Rational(system.minus_sign))};
}

namespace {

ModelParams to_float(const ModelParams& p) {
  const Field fl = Field::floating();
  ModelParams q = p;
  q.omega = p.omega.embed(fl);
  q.coupling = p.coupling.embed(fl);
  q.level_splitting = p.level_splitting.embed(fl);
  q.drive = p.drive.embed(fl);
  if (p.bargmann_index) q.bargmann_index = p.bargmann_index->embed(fl);
  return q;
}

}  // namespace

std::vector<ExceptionalPoint> exceptional_points(const ModelParams& p, unsigned n, double delta, double lo,
                                                 double hi, unsigned grid, unsigned jobs) {
  if (!(lo < hi) || grid < 2 || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::InvalidRange, "need lo < hi and grid >= 2");
  }
  if (delta == 0.0 || !std::isfinite(delta)) {
    throw Error(ErrorCode::DecoupledModel, "exceptional_points needs a nonzero Delta");
  }
  const ModelParams base = to_float(p);
  const bool skip_zero = p.kind != ModelKind::Rabi;
  auto params_at = [&](double g) {
    ModelParams q = base;
    q.coupling = Scalar::real(g);
    return q;
  };
  for (double g : {lo, hi}) {
    if (!(skip_zero && g == 0.0)) validate(params_at(g));
  }
  const int sign = p.kind == ModelKind::Rabi ? 1 : -1;
  const double target = sign * delta * delta;

  auto f = [&](double g) {
    const ModelParams q = params_at(g);
    const Scalar e = exceptional_energy(q, n);
    Eigen::MatrixXd m = to_eigen(restriction_matrix(model_operator(q, e).op, n));
    m.diagonal().array() -= target;
    return m.partialPivLu().determinant();
  };

  const double step = (hi - lo) / static_cast<double>(grid - 1);
  std::vector<double> nodes(grid);
  for (unsigned i = 0; i < grid; ++i) {
    nodes[i] = i + 1 == grid ? hi : lo + step * i;
    if (skip_zero && nodes[i] == 0.0) nodes[i] = (i == 0 ? 1.0 : -1.0) * 1e-9 * step;
  }
  std::vector<double> values(grid);
  parallel_for(grid, jobs, [&](std::size_t i) { values[i] = f(nodes[i]); });

  struct Bracket {
    double a, b;
    bool tangential;
  };
  std::vector<Bracket> brackets;
  std::vector<double> roots;
  for (unsigned i = 0; i < grid; ++i) {
    if (values[i] == 0.0) roots.push_back(nodes[i]);
    if (i + 1 < grid && values[i] * values[i + 1] < 0.0) brackets.push_back({nodes[i], nodes[i + 1], false});
    if (i > 0 && i + 1 < grid) {
      const double d0 = values[i] - values[i - 1];
      const double d1 = values[i + 1] - values[i];
      const bool same_sign = values[i - 1] * values[i] > 0.0 && values[i] * values[i + 1] > 0.0;
      if (d0 * d1 < 0.0 && same_sign && std::abs(values[i]) < std::min(std::abs(values[i - 1]), std::abs(values[i + 1]))) {
        brackets.push_back({nodes[i - 1], nodes[i + 1], true});
      }
    }
  }

  std::vector<std::optional<double>> refined(brackets.size());
  parallel_for(brackets.size(), jobs, [&](std::size_t k) {
    double a = brackets[k].a, b = brackets[k].b;
    if (!brackets[k].tangential) {
      double fa = f(a);
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      refined[k] = 0.5 * (a + b);
      return;
    }
    // golden-section minimization of |f|
    const double ends = std::max(std::abs(f(a)), std::abs(f(b)));
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    for (int it = 0; it < 200 && b - a > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - r * (b - a);
        fc = std::abs(f(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r * (b - a);
        fd = std::abs(f(d));
      }
    }
    const double g = fc < fd ? c : d;
    if (std::min(fc, fd) <= 1e-9 * ends) refined[k] = g;
  });
  for (const auto& r : refined)
    if (r) roots.push_back(*r);

  std::sort(roots.begin(), roots.end());
  std::vector<ExceptionalPoint> out;
  for (double g : roots) {
    if (!out.empty() && std::abs(g - out.back().g) <= 1e-9 * std::max(1.0, std::abs(g))) continue;
    out.push_back({g, exceptional_energy(params_at(g), n).to_double()});
  }
  return out;
}

}  // namespace qes
