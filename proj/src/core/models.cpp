#include "core/models.hpp"

#include <cmath>

namespace qes {

namespace {

bool is_twophoton_index(const Scalar& q) {
  if (q.is_exact()) {
    const auto r = q.as_rational();
    return r && (*r == Rational(1, 4) || *r == Rational(3, 4));
  }
  const double v = q.to_double();
  return v == 0.25 || v == 0.75;
}

bool is_positive_half_integer(const Scalar& k) {
  if (k.sign() <= 0) return false;
  if (k.is_exact()) {
    const auto r = k.as_rational();
    return r && (*r * Rational(2)).is_integer();
  }
  const double twice = 2.0 * k.to_double();
  return twice == std::floor(twice);
}

// 1 - c g^2 / omega^2 with c = 4 (two-photon) or 1 (two-mode).
Scalar radicand(const ModelParams& p) {
  const Rational c = p.kind == ModelKind::TwoPhoton ? Rational(4) : Rational(1);
  return Rational(1) - c * p.coupling * p.coupling / (p.omega * p.omega);
}

void require_coupled(const ModelParams& p) {
  if (p.level_splitting.is_zero()) {
    throw Error(ErrorCode::DecoupledModel, "level splitting is zero; the two equations decouple");
  }
}

void require_coupling(const ModelParams& p) {
  if (p.coupling.is_zero()) {
    throw Error(ErrorCode::ZeroCoupling, std::string(model_name(p.kind)) + " gauge needs a nonzero coupling");
  }
}

LinearDiffOp constant_op(const Scalar& c) { return LinearDiffOp::multiplication(Polynomial::constant(c)); }

}  // namespace

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Rabi:
      return "rabi";
    case ModelKind::TwoPhoton:
      return "2photon";
    case ModelKind::TwoMode:
      return "2mode";
  }
  return "?";
}

const char* branch_name(Branch branch) { return branch == Branch::Minus ? "minus" : "plus"; }

void validate(const ModelParams& p) {
  const Field f = p.field();
  if (f.kind() == ScalarKind::QuadExt) {
    throw Error(ErrorCode::InvalidArgument, "model parameters must be rational or floating point");
  }
  require_same_field(f, p.coupling.field(), "coupling");
  require_same_field(f, p.level_splitting.field(), "level splitting");
  require_same_field(f, p.drive.field(), "drive");
  if (p.bargmann_index) require_same_field(f, p.bargmann_index->field(), "Bargmann index");
  if (p.omega.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "omega must be positive");

  if (p.kind == ModelKind::Rabi) return;

  if (!p.drive.is_zero()) {
    throw Error(ErrorCode::InvalidArgument, std::string(model_name(p.kind)) + " model has no drive term");
  }
  if (p.branch != Branch::Minus) {
    throw Error(ErrorCode::InvalidArgument, std::string(model_name(p.kind)) + " model has a single gauge branch");
  }
  if (!p.bargmann_index) {
    throw Error(ErrorCode::InvalidArgument, std::string(model_name(p.kind)) + " model needs a Bargmann index");
  }
  if (p.kind == ModelKind::TwoPhoton && !is_twophoton_index(*p.bargmann_index)) {
    throw Error(ErrorCode::InvalidArgument, "two-photon Bargmann index must be 1/4 or 3/4, got " +
                                                p.bargmann_index->str());
  }
  if (p.kind == ModelKind::TwoMode && !is_positive_half_integer(*p.bargmann_index)) {
    throw Error(ErrorCode::InvalidArgument, "two-mode Bargmann index must be a positive half-integer, got " +
                                                p.bargmann_index->str());
  }
  if (radicand(p).sign() <= 0) {
    throw Error(ErrorCode::CouplingOutOfRange,
                p.kind == ModelKind::TwoPhoton ? "two-photon model needs |2g/omega| < 1"
                                               : "two-mode model needs |g/omega| < 1");
  }
}

Field model_field(const ModelParams& p) {
  validate(p);
  if (p.kind == ModelKind::Rabi || !p.field().is_exact()) return p.field();
  const Rational r = radicand(p).rational();
  if (r.sqrt()) return Field::rationals();
  return Field::quadratic(r);
}

Scalar spectral_root(const ModelParams& p) {
  const Field f = model_field(p);
  if (p.kind == ModelKind::Rabi) return f.one();
  if (f.kind() == ScalarKind::Rational) return f(*radicand(p).rational().sqrt());
  if (f.is_exact()) return f.generator();
  return Scalar::real(std::sqrt(radicand(p).to_double()));
}

LiftedParams lift(const ModelParams& p) {
  const Field f = model_field(p);
  const Scalar index = p.bargmann_index ? p.bargmann_index->embed(f) : f.zero();
  return {p.omega.embed(f), p.coupling.embed(f), p.level_splitting.embed(f),
          p.drive.embed(f),  index,                spectral_root(p)};
}

CoupledSystem bargmann_system(const ModelParams& p, const Scalar& energy) {
  const LiftedParams l = lift(p);
  const Field f = l.omega.field();
  const Scalar e = energy.embed(f);
  const Polynomial z = Polynomial::variable(f);

  LinearDiffOp diag, offdiag;  // H_{++} = diag + offdiag, H_{--} = diag - offdiag
  Scalar bias = f.zero();
  switch (p.kind) {
    case ModelKind::Rabi: {
      const LinearDiffOp create = LinearDiffOp::multiplication(z);
      const LinearDiffOp annihilate = LinearDiffOp::derivative(1, f);
      diag = l.omega * compose(create, annihilate);
      offdiag = l.g * (create + annihilate);
      bias = l.drive;
      break;
    }
    case ModelKind::TwoPhoton: {
      const auto k = twophoton_su11(l.index);
      diag = (Rational(2) * l.omega) * (k.k0 - constant_op(f(Rational(1, 4))));
      offdiag = (Rational(2) * l.g) * (k.kplus + k.kminus);
      break;
    }
    case ModelKind::TwoMode: {
      const auto k = twomode_su11(l.index);
      diag = (Rational(2) * l.omega) * (k.k0 - constant_op(f(Rational(1, 2))));
      offdiag = l.g * (k.kplus + k.kminus);
      break;
    }
  }
  const LinearDiffOp plus_op = diag + offdiag + constant_op(bias - e);
  const LinearDiffOp minus_op = diag - offdiag - constant_op(bias + e);
  return {p.kind, p.branch, plus_op, minus_op, -1, -1, l.delta_level, f.zero()};
}

CoupledSystem coupled_system(const ModelParams& p, const Scalar& energy) {
  validate(p);
  require_coupled(p);
  CoupledSystem s = bargmann_system(p, energy);
  const LiftedParams l = lift(p);
  switch (p.kind) {
    case ModelKind::Rabi:
      s.gauge_exponent = (p.branch == Branch::Minus ? -l.g : l.g) / l.omega;
      break;
    case ModelKind::TwoPhoton:
      require_coupling(p);
      s.gauge_exponent = -(l.omega / (Rational(4) * l.g)) * (Rational(1) - l.root);
      break;
    case ModelKind::TwoMode:
      require_coupling(p);
      s.gauge_exponent = -(l.omega / l.g) * (Rational(1) - l.root);
      break;
  }
  s.plus_op = s.plus_op.gauge_shift(s.gauge_exponent);
  s.minus_op = s.minus_op.gauge_shift(s.gauge_exponent);
  if (p.kind != ModelKind::Rabi) {
    s.minus_op = -s.minus_op;
    s.minus_sign = 1;
  }
  return s;
}

CoupledSystem rabi_coupled_system(const ModelParams& p, const Scalar& energy) {
  if (p.kind != ModelKind::Rabi) throw Error(ErrorCode::InvalidArgument, "not a Rabi model");
  return coupled_system(p, energy);
}

Component default_component(const ModelParams& p) {
  return p.kind == ModelKind::Rabi && p.branch == Branch::Plus ? Component::Minus : Component::Plus;
}

EliminatedOperator eliminate(const CoupledSystem& s, Component keep) {
  // plus_op phi+ = s+ Delta phi-  =>  minus_op plus_op phi+ = s+ s- Delta^2 phi+
  const LinearDiffOp op = keep == Component::Plus ? compose(s.minus_op, s.plus_op) : compose(s.plus_op, s.minus_op);
  return {op, s.plus_sign * s.minus_sign, keep};
}

namespace {

HeunCoefficients rabi_heun_unchecked(const ModelParams& p, const Scalar& energy) {
  const LiftedParams l = lift(p);
  const Field f = l.omega.field();
  const Scalar e = energy.embed(f);
  const Scalar& w = l.omega;
  const Scalar& g = l.g;
  const Scalar& dr = l.drive;
  const Scalar g2w = g * g / w;
  HeunCoefficients h(f);
  h.a[2] = w * w;
  h.a[0] = -(g * g);
  h.b[1] = w * w - Rational(2) * w * e - Rational(2) * g * g;
  if (p.branch == Branch::Minus) {
    h.b[2] = -Rational(2) * g * w;
    h.b[0] = -g * (w + Rational(2) * (dr - g2w));
    h.c[1] = Rational(2) * g * (g2w - dr + e);
    h.c[0] = e * e - (dr - g2w) * (dr - g2w);
  } else {
    h.b[2] = Rational(2) * g * w;
    h.b[0] = g * (w - Rational(2) * (dr + g2w));
    h.c[1] = -Rational(2) * g * (g2w + dr + e);
    h.c[0] = e * e - (dr + g2w) * (dr + g2w);
  }
  return h;
}

LinearDiffOp twophoton_unchecked(const ModelParams& p, const Scalar& energy) {
  const LiftedParams l = lift(p);
  const Field f = l.omega.field();
  const Scalar e = energy.embed(f);
  const Scalar& w = l.omega;
  const Scalar& g = l.g;
  const Scalar& q = l.index;
  const Scalar& om = l.root;
  const Scalar qh = q + Rational(1, 2);
  const Scalar one_m = Rational(1) - om;
  const Scalar zero = f.zero();

  const Polynomial d4({zero, zero, Rational(16) * g * g});
  const Polynomial d3({zero, Rational(64) * g * g * qh, Rational(16) * g * w * (om - Rational(1))});
  const Polynomial d2({Rational(64) * g * g * q * qh,
                       Rational(16) * w * g * (Rational(3) * qh * om - Rational(3) * q - Rational(1)),
                       Rational(4) * w * w * (om * om - Rational(3) * om + Rational(1))});
  const Polynomial d1({Rational(32) * w * g * q * (qh * om - q),
                       Rational(8) * w * w * q * one_m + Rational(8) * w * w * qh * one_m * one_m +
                           Rational(4) * w * (e - Rational(2) * w * (q + Rational(1, 4))),
                       Rational(2) * (w * w * w / g) * om * one_m});
  const Scalar shifted = e - Rational(2) * w * (q - Rational(1, 4));
  const Polynomial d0({Rational(4) * w * w * q * q * one_m * one_m - shifted * shifted,
                       (w * w / g) * one_m * (Rational(2) * q * w * om - w / Rational(2) - e)});
  return LinearDiffOp({d0, d1, d2, d3, d4});
}

LinearDiffOp twomode_unchecked(const ModelParams& p, const Scalar& energy) {
  const LiftedParams l = lift(p);
  const Field f = l.omega.field();
  const Scalar e = energy.embed(f);
  const Scalar& w = l.omega;
  const Scalar& g = l.g;
  const Scalar& k = l.index;
  const Scalar& la = l.root;
  const Scalar kh = k + Rational(1, 2);
  const Scalar one_m = Rational(1) - la;
  const Scalar zero = f.zero();

  const Polynomial d4({zero, zero, g * g});
  const Polynomial d3({zero, Rational(4) * g * g * kh, Rational(4) * g * w * (la - Rational(1))});
  const Polynomial d2({Rational(4) * g * g * k * kh,
                       Rational(4) * w * g * (Rational(3) * kh * la - Rational(3) * k - Rational(1)),
                       Rational(4) * w * w * (la * la - Rational(3) * la + Rational(1))});
  const Polynomial d1({Rational(8) * w * g * k * (kh * la - k),
                       Rational(8) * w * w * k * one_m + Rational(8) * w * w * kh * one_m * one_m +
                           Rational(4) * w * (e - Rational(2) * w * k),
                       Rational(8) * (w * w * w / g) * la * one_m});
  const Scalar shifted = e - Rational(2) * w * (k - Rational(1, 2));
  const Polynomial d0({Rational(4) * w * w * k * k * one_m * one_m - shifted * shifted,
                       Rational(4) * (w * w / g) * one_m * (Rational(2) * k * w * la - w - e)});
  return LinearDiffOp({d0, d1, d2, d3, d4});
}

}  // namespace

HeunCoefficients rabi_heun(const ModelParams& p, const Scalar& energy) {
  if (p.kind != ModelKind::Rabi) throw Error(ErrorCode::InvalidArgument, "not a Rabi model");
  validate(p);
  require_coupled(p);
  return rabi_heun_unchecked(p, energy);
}

LinearDiffOp twophoton_operator(const ModelParams& p, const Scalar& energy) {
  if (p.kind != ModelKind::TwoPhoton) throw Error(ErrorCode::InvalidArgument, "not a two-photon model");
  validate(p);
  require_coupled(p);
  require_coupling(p);
  return twophoton_unchecked(p, energy);
}

LinearDiffOp twomode_operator(const ModelParams& p, const Scalar& energy) {
  if (p.kind != ModelKind::TwoMode) throw Error(ErrorCode::InvalidArgument, "not a two-mode model");
  validate(p);
  require_coupled(p);
  require_coupling(p);
  return twomode_unchecked(p, energy);
}

EliminatedOperator model_operator(const ModelParams& p, const Scalar& energy) {
  validate(p);
  switch (p.kind) {
    case ModelKind::Rabi:
      return {rabi_heun_unchecked(p, energy).to_operator(), 1, default_component(p)};
    case ModelKind::TwoPhoton:
      require_coupling(p);
      return {twophoton_unchecked(p, energy), -1, Component::Plus};
    case ModelKind::TwoMode:
      require_coupling(p);
      return {twomode_unchecked(p, energy), -1, Component::Plus};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model");
}

Scalar rabi_exceptional_energy(const ModelParams& p, unsigned n) {
  if (p.kind != ModelKind::Rabi) throw Error(ErrorCode::InvalidArgument, "not a Rabi model");
  validate(p);
  const Scalar& w = p.omega;
  const Scalar shift = p.branch == Branch::Minus ? p.drive : -p.drive;
  return w * Rational(static_cast<long>(n)) + shift - p.coupling * p.coupling / w;
}

Scalar twophoton_exceptional_energy(const ModelParams& p, unsigned n) {
  if (p.kind != ModelKind::TwoPhoton) throw Error(ErrorCode::InvalidArgument, "not a two-photon model");
  const LiftedParams l = lift(p);
  return -l.omega / Rational(2) +
         (Rational(2 * static_cast<long>(n)) + Rational(2) * l.index) * l.omega * l.root;
}

Scalar twomode_exceptional_energy(const ModelParams& p, unsigned n) {
  if (p.kind != ModelKind::TwoMode) throw Error(ErrorCode::InvalidArgument, "not a two-mode model");
  const LiftedParams l = lift(p);
  return -l.omega + (Rational(2 * static_cast<long>(n)) + Rational(2) * l.index) * l.omega * l.root;
}

Scalar exceptional_energy(const ModelParams& p, unsigned n) {
  switch (p.kind) {
    case ModelKind::Rabi:
      return rabi_exceptional_energy(p, n);
    case ModelKind::TwoPhoton:
      return twophoton_exceptional_energy(p, n);
    case ModelKind::TwoMode:
      return twomode_exceptional_energy(p, n);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model");
}

Su11Realization twophoton_su11(const Scalar& q) {
  const Field f = q.field();
  const Scalar zero = f.zero();
  return {LinearDiffOp({Polynomial({q}), Polynomial::variable(f)}),
          LinearDiffOp({Polynomial({zero, f(Rational(1, 2))})}),
          LinearDiffOp({Polynomial(), Polynomial({Rational(4) * q}), Polynomial({zero, f(Rational(2))})})};
}

Su11Realization twomode_su11(const Scalar& kappa) {
  const Field f = kappa.field();
  const Scalar zero = f.zero();
  return {LinearDiffOp({Polynomial({kappa}), Polynomial::variable(f)}),
          LinearDiffOp({Polynomial::variable(f)}),
          LinearDiffOp({Polynomial(), Polynomial({Rational(2) * kappa}), Polynomial::variable(f)})};
}

Sl2Combination rabi_algebraization_printed(const ModelParams& p, unsigned n) {
  if (p.kind != ModelKind::Rabi) throw Error(ErrorCode::InvalidArgument, "not a Rabi model");
  const LiftedParams l = lift(p);
  const Scalar& w = l.omega;
  const Scalar& g = l.g;
  const Scalar& dr = l.drive;
  const Scalar e = rabi_exceptional_energy(p, n);
  const Scalar nn = w.lift(Rational(static_cast<long>(n)));
  const Scalar g2w = g * g / w;
  const bool minus = p.branch == Branch::Minus;

  Sl2Combination c = Sl2Combination::zeros(nn);
  c.zero_zero = w * w;
  c.minus_minus = -(g * g);
  c.plus = minus ? -Rational(2) * g * w : Rational(2) * g * w;
  c.zero = nn * w * w - Rational(2) * g * g - Rational(2) * w * e;
  c.minus = minus ? -g * (w + Rational(2) * (dr - g2w)) : g * (w - Rational(2) * (dr + g2w));
  const Scalar shift = minus ? dr - g2w : dr + g2w;
  // printed with a bare g in the first bracket
  c.constant = nn * (nn * w * w / Rational(4) - g - w * e) + e * e - shift * shift;
  return c;
}

Sl2Combination twophoton_algebraization_printed(const ModelParams& p, unsigned n) {
  const Scalar e = twophoton_exceptional_energy(p, n);
  const LiftedParams l = lift(p);
  const Scalar& w = l.omega;
  const Scalar& g = l.g;
  const Scalar& q = l.index;
  const Scalar& om = l.root;
  const Scalar nn = w.lift(Rational(static_cast<long>(n)));
  const Scalar qh = q + Rational(1, 2);
  const Scalar one_m = Rational(1) - om;
  const Scalar quad = om * om - Rational(3) * om + Rational(1);
  const Scalar bracket = (om - Rational(1)) * nn + Rational(3) * qh * om - Rational(3) * q - Rational(1);
  const Scalar e_quarter = e - Rational(2) * w * (q + Rational(1, 4));
  const Scalar e_shift = e - Rational(2) * w * (q - Rational(1, 4));

  Sl2Combination c = Sl2Combination::zeros(nn);
  c.quartic = Sl2Combination::Quartic{Rational(16) * g * g, Rational(16) * g * w * (om - Rational(1)),
                                      Rational(16) * g * g * (nn + Rational(2) * (Rational(2) * q + Rational(1)))};
  c.zero_zero = Rational(4) * w * w * quad;
  c.zero_minus = Rational(16) * w * g * bracket;
  c.minus_minus = Rational(8) * g * g * nn * (nn + Rational(4) * qh) + Rational(64) * g * g * q * qh;
  c.plus = Rational(2) * (w * w * w / g) * om * one_m;
  c.zero = Rational(4) * w * w * (nn - Rational(1)) * quad + Rational(8) * w * w * q * one_m +
           Rational(8) * w * w * qh * one_m * one_m + Rational(4) * w * e_quarter;
  c.minus = Rational(8) * g * w * nn * bracket + Rational(32) * w * g * q * (qh * om - q);
  c.constant = nn * (nn - Rational(2)) * w * w * quad + Rational(4) * nn * w * w * q * one_m +
               Rational(4) * nn * w * w * qh * one_m * one_m + w * nn * e_quarter +
               Rational(4) * w * w * q * q * one_m * one_m - e_shift * e_shift;
  return c;
}

Sl2Combination twomode_algebraization_printed(const ModelParams& p, unsigned n) {
  const Scalar e = twomode_exceptional_energy(p, n);
  const LiftedParams l = lift(p);
  const Scalar& w = l.omega;
  const Scalar& g = l.g;
  const Scalar& k = l.index;
  const Scalar& la = l.root;
  const Scalar nn = w.lift(Rational(static_cast<long>(n)));
  const Scalar kh = k + Rational(1, 2);
  const Scalar one_m = Rational(1) - la;
  const Scalar quad = la * la - Rational(3) * la + Rational(1);
  const Scalar bracket = (la - Rational(1)) * nn + Rational(3) * kh * la - Rational(3) * k - Rational(1);
  const Scalar e_k = e - Rational(2) * w * k;
  const Scalar e_shift = e - Rational(2) * w * (k - Rational(1, 2));

  Sl2Combination c = Sl2Combination::zeros(nn);
  // printed as g rather than g^2
  c.quartic = Sl2Combination::Quartic{g, Rational(4) * g * w * (la - Rational(1)),
                                      g * g * (nn + Rational(4) * kh)};
  c.zero_zero = Rational(4) * w * w * quad;
  c.zero_minus = Rational(4) * w * g * bracket;
  c.minus_minus = g * g * (nn / Rational(2)) * (nn + Rational(4) * kh) + Rational(4) * g * g * k * kh;
  c.plus = Rational(8) * (w * w * w / g) * la * one_m;
  c.zero = Rational(4) * w * w * (nn - Rational(1)) * quad + Rational(8) * w * w * k * one_m +
           Rational(8) * w * w * kh * one_m * one_m + Rational(4) * w * e_k;
  c.minus = Rational(2) * nn * w * g * bracket + Rational(8) * w * g * k * (kh * la - k);
  c.constant = nn * (nn - Rational(2)) * w * w * quad + Rational(4) * nn * w * w * k * one_m +
               Rational(4) * nn * w * w * kh * one_m * one_m + Rational(2) * nn * w * e_k +
               Rational(4) * w * w * k * k * one_m * one_m - e_shift * e_shift;
  return c;
}

std::vector<std::string> combination_mismatches(const Sl2Combination& a, const Sl2Combination& b) {
  std::vector<std::string> out;
  auto check = [&out](const Scalar& x, const Scalar& y, const char* name) {
    if (!(x == y)) out.emplace_back(name);
  };
  const Field f = a.field();
  const Sl2Combination::Quartic none{f.zero(), f.zero(), f.zero()};
  const auto& qa = a.quartic ? *a.quartic : none;
  const auto& qb = b.quartic ? *b.quartic : none;
  check(qa.plus_minus3, qb.plus_minus3, "J+J-J-J-");
  check(qa.plus_minus2, qb.plus_minus2, "J+J-J-");
  check(qa.zero_minus2, qb.zero_minus2, "J0J-J-");
  check(a.plus_plus, b.plus_plus, "J+J+");
  check(a.plus_zero, b.plus_zero, "J+J0");
  check(a.zero_zero, b.zero_zero, "J0J0");
  check(a.zero_minus, b.zero_minus, "J0J-");
  check(a.minus_minus, b.minus_minus, "J-J-");
  check(a.plus, b.plus, "J+");
  check(a.zero, b.zero, "J0");
  check(a.minus, b.minus, "J-");
  check(a.constant, b.constant, "constant");
  return out;
}

}  // namespace qes
