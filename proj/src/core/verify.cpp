#include "core/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include <Eigen/Core>

#include "core/fock.hpp"
#include "core/spectral.hpp"

namespace qes {

namespace {

class Collector {
 public:
  std::vector<CheckResult> results;

  void add(const std::string& suite, const std::string& identity, const std::string& params,
           const std::function<std::string()>& check, std::string note = {}) {
    CheckResult r{suite, identity, params, false, {}, std::move(note)};
    try {
      r.counterexample = check();
      r.passed = r.counterexample.empty();
    } catch (const Error& e) {
      r.counterexample = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    results.push_back(std::move(r));
  }
};

std::string expect_equal(const LinearDiffOp& lhs, const LinearDiffOp& rhs) {
  if (lhs == rhs) return {};
  return "lhs - rhs = " + (lhs - rhs).str();
}

std::string describe(const ModelParams& p) {
  std::string s = std::string("model=") + model_name(p.kind);
  if (p.kind == ModelKind::Rabi) s += std::string(" branch=") + branch_name(p.branch);
  s += " omega=" + p.omega.str() + " g=" + p.coupling.str() + " Delta=" + p.level_splitting.str();
  if (p.kind == ModelKind::Rabi) s += " delta=" + p.drive.str();
  if (p.bargmann_index) s += std::string(p.kind == ModelKind::TwoPhoton ? " q=" : " kappa=") + p.bargmann_index->str();
  return s;
}

std::string with_n(const std::string& base, unsigned n) { return base + " n=" + std::to_string(n); }

std::vector<ModelParams> expand_branches(const std::vector<ModelParams>& models) {
  std::vector<ModelParams> out;
  for (const auto& m : models) {
    if (m.kind == ModelKind::Rabi) {
      for (Branch b : {Branch::Minus, Branch::Plus}) {
        ModelParams c = m;
        c.branch = b;
        out.push_back(c);
      }
    } else {
      out.push_back(m);
    }
  }
  return out;
}

class RandomRationals {
 public:
  explicit RandomRationals(std::uint64_t seed) : rng_(seed) {}
  Rational next() {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    return Rational(num(rng_), den(rng_));
  }
  Rational nonzero() {
    Rational r = next();
    while (r.is_zero()) r = next();
    return r;
  }
  std::size_t pick(std::size_t count) { return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------- sl(2)

void sl2_suite(Collector& c, const VerifyOptions& o) {
  std::vector<Rational> ns;
  for (unsigned n = o.n_min; n <= o.n_max; ++n) ns.emplace_back(static_cast<long>(n));
  ns.emplace_back(1, 2);
  ns.emplace_back(7, 3);
  for (const auto& nr : ns) {
    const Scalar n(nr);
    const auto j = sl2_generators(n);
    const std::string params = "n=" + nr.str();
    c.add("sl2", "[J0,J+] = J+", params, [&] { return expect_equal(commutator(j.zero, j.plus), j.plus); });
    c.add("sl2", "[J0,J-] = -J-", params, [&] { return expect_equal(commutator(j.zero, j.minus), -j.minus); });
    c.add("sl2", "[J+,J-] = -2J0", params,
          [&] { return expect_equal(commutator(j.plus, j.minus), Rational(-2) * j.zero); });
    if (nr.is_integer()) {
      const auto k = static_cast<unsigned>(nr.numerator().get_ui());
      c.add("sl2", "generators preserve P_{n+1}", params, [&]() -> std::string {
        for (const auto* op : {&j.plus, &j.zero, &j.minus}) {
          if (!preserves_space(*op, k)) return "generator " + op->str() + " leaves P_{n+1}";
        }
        return {};
      });
    }
  }
}

// ---------------------------------------------------------------- Proposition

Sl2Combination random_combination(RandomRationals& r, const Scalar& n) {
  Sl2Combination c = Sl2Combination::zeros(n);
  for (Scalar* s : {&c.plus_plus, &c.plus_zero, &c.zero_zero, &c.zero_minus, &c.minus_minus, &c.plus, &c.zero,
                    &c.minus, &c.constant}) {
    *s = Scalar(r.next());
  }
  return c;
}

HeunCoefficients random_admissible(RandomRationals& r, const Scalar& n) {
  HeunCoefficients h(Field::rationals());
  for (auto& a : h.a) a = Scalar(r.next());
  for (int k = 0; k <= 2; ++k) h.b[k] = Scalar(r.next());
  h.c[0] = Scalar(r.next());
  h.b[3] = -Rational(2) * (n - Rational(1)) * h.a[4];
  h.c[2] = n * (n - Rational(1)) * h.a[4];
  h.c[1] = -n * ((n - Rational(1)) * h.a[3] + h.b[2]);
  return h;
}

bool same_combination(const Sl2Combination& a, const Sl2Combination& b) { return combination_mismatches(a, b).empty(); }

void proposition_suite(Collector& c, const VerifyOptions& o) {
  RandomRationals rng(o.seed);
  for (unsigned k = o.n_min; k <= o.n_max; ++k) {
    const Scalar n(Rational(static_cast<long>(k)));
    const std::string params = "n=" + std::to_string(k) + " samples=" + std::to_string(o.samples);

    c.add("proposition", "necessity: composed combinations have zero residuals", params, [&]() -> std::string {
      for (unsigned s = 0; s < o.samples; ++s) {
        const auto comb = random_combination(rng, n);
        const auto op = sl2_compose(comb);
        const auto h = HeunCoefficients::from_operator(op, Field::rationals());
        const auto res = algebraization_residuals(h, n);
        if (!res.all_zero()) return comb.str() + " -> residuals " + res.r1.str() + ", " + res.r2.str() + ", " + res.r3.str();
        if (!preserves_space(op, k)) return comb.str() + " leaves P_{n+1}";
        if (!same_combination(sl2_decompose_quadratic(h, n), comb)) return comb.str() + " decomposes differently";
      }
      return {};
    });

    c.add("proposition", "sufficiency: admissible Heun operators round-trip", params, [&]() -> std::string {
      for (unsigned s = 0; s < o.samples; ++s) {
        const auto h = random_admissible(rng, n);
        const auto op = h.to_operator();
        const auto back = sl2_compose(sl2_decompose_quadratic(h, n));
        if (!(back == op)) return op.str() + " -> " + back.str();
      }
      return {};
    });

    c.add("proposition", "violating Heun operators are rejected", params, [&]() -> std::string {
      for (unsigned s = 0; s < o.samples; ++s) {
        auto h = random_admissible(rng, n);
        Scalar* target[] = {&h.b[3], &h.c[2], &h.c[1]};
        *target[rng.pick(3)] += Scalar(rng.nonzero());
        try {
          sl2_decompose_quadratic(h, n);
          return h.to_operator().str() + " was accepted";
        } catch (const NotAlgebraizableError&) {
        }
      }
      return {};
    });
  }
}

// ---------------------------------------------------------------- Identities

void identities_suite(Collector& c, const VerifyOptions& o) {
  const Field q = Field::rationals();
  const Polynomial z = Polynomial::variable(q);
  const Polynomial z2 = z * z;
  for (unsigned k = o.n_min; k <= o.n_max; ++k) {
    const Scalar n(Rational(static_cast<long>(k)));
    const auto j = sl2_generators(n);
    const auto m2 = compose(j.minus, j.minus);
    const auto m3 = compose(j.minus, m2);
    const std::string params = "n=" + std::to_string(k);
    c.add("identities", "z^2 d^4 = J+(J-)^3 + n z d^3", params, [&] {
      return expect_equal(z2 * LinearDiffOp::derivative(4, q),
                          compose(j.plus, m3) + (z * n) * LinearDiffOp::derivative(3, q));
    });
    c.add("identities", "z^2 d^3 = J+(J-)^2 + n z d^2", params, [&] {
      return expect_equal(z2 * LinearDiffOp::derivative(3, q),
                          compose(j.plus, m2) + (z * n) * LinearDiffOp::derivative(2, q));
    });
    c.add("identities", "z d^3 = J0(J-)^2 + (n/2) d^2", params, [&] {
      return expect_equal(z * LinearDiffOp::derivative(3, q),
                          compose(j.zero, m2) + (n / Rational(2)) * LinearDiffOp::derivative(2, q));
    });
  }
}

// ---------------------------------------------------------------- Models

LinearDiffOp printed_operator(const ModelParams& p, const Scalar& e) {
  switch (p.kind) {
    case ModelKind::Rabi:
      return rabi_heun(p, e).to_operator();
    case ModelKind::TwoPhoton:
      return twophoton_operator(p, e);
    case ModelKind::TwoMode:
      return twomode_operator(p, e);
  }
  return {};
}

Sl2Combination decompose(const ModelParams& p, const LinearDiffOp& op, const Scalar& n) {
  if (p.kind == ModelKind::Rabi) return sl2_decompose_quadratic(HeunCoefficients::from_operator(op, model_field(p)), n);
  return sl2_decompose_quartic(op, n);
}

Sl2Combination printed_combination(const ModelParams& p, unsigned n) {
  switch (p.kind) {
    case ModelKind::Rabi:
      return rabi_algebraization_printed(p, n);
    case ModelKind::TwoPhoton:
      return twophoton_algebraization_printed(p, n);
    case ModelKind::TwoMode:
      return twomode_algebraization_printed(p, n);
  }
  return Sl2Combination::zeros(Scalar());
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

void elimination_suite(Collector& c, const VerifyOptions& o) {
  for (const auto& p : expand_branches(o.models)) {
    const std::string base = describe(p);
    const Field f = model_field(p);
    std::vector<std::pair<std::string, Scalar>> energies;
    for (unsigned k = o.n_min; k <= o.n_max; ++k) energies.emplace_back("E=E_" + std::to_string(k), exceptional_energy(p, k));
    energies.emplace_back("E=1/3", f(Rational(1, 3)));
    for (const auto& [label, e] : energies) {
      c.add("elimination", "eliminated system equals the closed-form operator", base + " " + label, [&]() -> std::string {
        const auto el = eliminate(coupled_system(p, e), default_component(p));
        const int expected = p.kind == ModelKind::Rabi ? 1 : -1;
        if (el.target_sign != expected) return "target sign " + std::to_string(el.target_sign);
        return expect_equal(el.op, printed_operator(p, e));
      });
    }
  }
}

void quartic_suite(Collector& c, const VerifyOptions& o) {
  for (const auto& p : expand_branches(o.models)) {
    const std::string base = describe(p);
    const auto l = lift(p);
    for (unsigned k = o.n_min; k <= o.n_max; ++k) {
      const Scalar n = l.omega.lift(Rational(static_cast<long>(k)));
      const Scalar e = exceptional_energy(p, k);
      c.add("quartic", "decomposition at E_n round-trips", with_n(base, k), [&] {
        const auto op = model_operator(p, e).op;
        return expect_equal(sl2_compose(decompose(p, op, n)), op);
      });
      c.add("quartic", "E_n + omega*root/7 is rejected", with_n(base, k), [&]() -> std::string {
        const auto op = model_operator(p, e + l.omega * l.root / Rational(7)).op;
        try {
          decompose(p, op, n);
          return "decomposition succeeded";
        } catch (const NotAlgebraizableError&) {
          return {};
        }
      });
    }
  }
}

void algebraization_suite(Collector& c, const VerifyOptions& o) {
  for (const auto& p : expand_branches(o.models)) {
    const std::string base = describe(p);
    const auto l = lift(p);
    const auto allowed = known_printed_differences(p.kind);
    for (unsigned k = o.n_min; k <= o.n_max; ++k) {
      const Scalar n = l.omega.lift(Rational(static_cast<long>(k)));
      const Scalar e = exceptional_energy(p, k);
      c.add("algebraization", "E_n makes the model operator algebraizable and P_{n+1} invariant", with_n(base, k),
            [&]() -> std::string {
              const auto op = model_operator(p, e).op;
              if (!preserves_space(op, k)) return "P_{n+1} not preserved";
              decompose(p, op, n);
              return {};
            });
      c.add("algebraization", "energies off E_n are not algebraizable at n", with_n(base, k), [&]() -> std::string {
        for (long shift : {-2L, -1L, 1L, 2L}) {
          const Scalar off = e + l.omega * Rational(shift, 3);
          try {
            decompose(p, model_operator(p, off).op, n);
            return "E=" + off.str() + " accepted";
          } catch (const NotAlgebraizableError&) {
          }
        }
        return {};
      });
      std::vector<std::string> found;
      c.add(
          "algebraization", "printed expansion agrees outside known misprints", with_n(base, k),
          [&]() -> std::string {
            found = combination_mismatches(decompose(p, model_operator(p, e).op, n), printed_combination(p, k));
            for (const auto& m : found) {
              if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) return "unexpected mismatch in " + m;
            }
            return {};
          },
          {});
      if (!found.empty()) c.results.back().note = "printed form differs in: " + join(found);
    }
    if (p.kind == ModelKind::Rabi && p.drive.is_zero() && p.branch == Branch::Minus) {
      c.add("algebraization", "branch energies coincide at delta=0", base, [&]() -> std::string {
        ModelParams q = p;
        q.branch = Branch::Plus;
        for (unsigned k = o.n_min; k <= o.n_max; ++k) {
          if (!(rabi_exceptional_energy(p, k) == rabi_exceptional_energy(q, k))) return "n=" + std::to_string(k);
        }
        return {};
      });
    }
  }
}

// ---------------------------------------------------------------- su(1,1)

void su11_suite(Collector& c, const VerifyOptions&) {
  struct Case {
    const char* name;
    Rational index;
    bool two_photon;
  };
  const Case cases[] = {{"q", Rational(1, 4), true},   {"q", Rational(3, 4), true},   {"kappa", Rational(1, 2), false},
                        {"kappa", Rational(1), false}, {"kappa", Rational(3, 2), false}};
  for (const auto& cs : cases) {
    const Scalar k(cs.index);
    const auto r = cs.two_photon ? twophoton_su11(k) : twomode_su11(k);
    const std::string params = std::string(cs.two_photon ? "two-photon " : "two-mode ") + cs.name + "=" + cs.index.str();
    c.add("su11", "[K0,K+] = K+", params, [&] { return expect_equal(commutator(r.k0, r.kplus), r.kplus); });
    c.add("su11", "[K0,K-] = -K-", params, [&] { return expect_equal(commutator(r.k0, r.kminus), -r.kminus); });
    c.add("su11", "[K+,K-] = -2K0", params,
          [&] { return expect_equal(commutator(r.kplus, r.kminus), Rational(-2) * r.k0); });
    c.add("su11", "K+K- - K0(K0-1) = k(1-k)", params, [&] {
      const auto one = LinearDiffOp::multiplication(Polynomial::constant(k.lift(1)));
      const auto casimir = compose(r.kplus, r.kminus) - compose(r.k0, r.k0 - one);
      return expect_equal(casimir, LinearDiffOp::multiplication(Polynomial::constant(k * (Rational(1) - k))));
    });

    c.add("su11", "truncated matrices: relations and Casimir on the interior block", params + " N=30", [&]() -> std::string {
      const unsigned N = 30;
      const auto m = su11_matrices(cs.index.to_double(), N);
      const Eigen::Index b = N - 1;
      const auto in = [b](const Eigen::MatrixXd& x) { return x.topLeftCorner(b, b); };
      const double idx = cs.index.to_double();
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(N + 1, N + 1);
      const double e1 = (in(m.k0 * m.kplus - m.kplus * m.k0) - in(m.kplus)).cwiseAbs().maxCoeff();
      const double e2 = (in(m.k0 * m.kminus - m.kminus * m.k0) + in(m.kminus)).cwiseAbs().maxCoeff();
      const double e3 = (in(m.kplus * m.kminus - m.kminus * m.kplus) + 2.0 * in(m.k0)).cwiseAbs().maxCoeff();
      const double e4 =
          (in(m.kplus * m.kminus - m.k0 * (m.k0 - id)) - idx * (1.0 - idx) * in(id)).cwiseAbs().maxCoeff();
      const double worst = std::max({e1, e2, e3, e4});
      if (worst > 1e-12) return "max deviation " + std::to_string(worst);
      return {};
    });
  }
}

}  // namespace

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Sl2:
      return "sl2";
    case Suite::Proposition:
      return "proposition";
    case Suite::Identities:
      return "identities";
    case Suite::Elimination:
      return "elimination";
    case Suite::Quartic:
      return "quartic";
    case Suite::Su11:
      return "su11";
    case Suite::Algebraization:
      return "algebraization";
    case Suite::All:
      return "all";
  }
  return "?";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::Sl2, Suite::Proposition, Suite::Identities, Suite::Elimination, Suite::Quartic, Suite::Su11,
                  Suite::Algebraization, Suite::All}) {
    if (name == suite_name(s)) return s;
  }
  return std::nullopt;
}

std::vector<std::string> known_printed_differences(ModelKind kind) {
  switch (kind) {
    case ModelKind::Rabi:
    case ModelKind::TwoPhoton:
      return {"constant"};
    case ModelKind::TwoMode:
      return {"J+J-J-J-"};
  }
  return {};
}

std::vector<CheckResult> run_verify(const VerifyOptions& o) {
  if (o.n_min > o.n_max) throw Error(ErrorCode::InvalidRange, "n_min exceeds n_max");
  const bool needs_models =
      o.suite == Suite::Elimination || o.suite == Suite::Quartic || o.suite == Suite::Algebraization;
  if (needs_models && o.models.empty()) {
    throw Error(ErrorCode::InvalidArgument, std::string("suite ") + suite_name(o.suite) + " needs a model");
  }
  for (const auto& m : o.models) {
    if (!m.field().is_exact()) throw Error(ErrorCode::InvalidArgument, "verification needs exact parameters");
    validate(m);
  }
  Collector c;
  const bool all = o.suite == Suite::All;
  if (all || o.suite == Suite::Sl2) sl2_suite(c, o);
  if (all || o.suite == Suite::Proposition) proposition_suite(c, o);
  if (all || o.suite == Suite::Identities) identities_suite(c, o);
  if (all || o.suite == Suite::Su11) su11_suite(c, o);
  if (all || o.suite == Suite::Elimination) elimination_suite(c, o);
  if (all || o.suite == Suite::Quartic) quartic_suite(c, o);
  if (all || o.suite == Suite::Algebraization) algebraization_suite(c, o);
  return c.results;
}

}  // namespace qes
