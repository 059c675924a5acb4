// One line per acceptance criterion. Exit status is the number of failures.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "core/fock.hpp"
#include "core/sl2.hpp"
#include "core/spectral.hpp"
#include "support.hpp"

using namespace qes;
using namespace qes::test;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed = passed && ok;
  }
};

// Every exact solution seen in criteria 3, 6 and 7, for criterion 9.
struct SolutionLog {
  unsigned checked = 0;
  unsigned failed = 0;
  std::string first_failure;

  void add(const ModelParams& p, const ExceptionalSolution& s) {
    ++checked;
    if (!verify_target(p, s.energy, s.target, s.phi).is_zero()) {
      if (failed++ == 0) first_failure = std::string(model_name(p.kind)) + " n=" + std::to_string(s.n);
      return;
    }
    if (s.delta && !s.delta->is_zero() && !verify_solution(p, s.energy, *s.delta, s.phi).is_zero()) {
      if (failed++ == 0) first_failure = std::string(model_name(p.kind)) + " n=" + std::to_string(s.n) + " (delta)";
    }
  }
};

SolutionLog solutions;

// Exact roots of the constraint at each n, fed back into the eigenpolynomial solver.
void collect(const ModelParams& p, unsigned n, Outcome& o) {
  const auto c = constraint_polynomial(p, n);
  for (const auto& r : c.roots()) {
    if (!r.exact) continue;
    const auto sols = eigenpolynomials_at(p, n, *r.exact);
    o.require(!sols.empty(), "no eigenpolynomial for an exact root");
    for (const auto& s : sols) solutions.add(p, s);
  }
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Sl2Combination random_combination(Rng& rng, const Scalar& n) {
  Sl2Combination c = Sl2Combination::zeros(n);
  for (Scalar* s : {&c.plus_plus, &c.plus_zero, &c.zero_zero, &c.zero_minus, &c.minus_minus, &c.plus, &c.zero,
                    &c.minus, &c.constant}) {
    *s = Scalar(rng.rational());
  }
  return c;
}

HeunCoefficients admissible(Rng& rng, const Scalar& n) {
  HeunCoefficients h(Field::rationals());
  for (auto& a : h.a) a = Scalar(rng.rational());
  for (int k = 0; k <= 2; ++k) h.b[k] = Scalar(rng.rational());
  h.c[0] = Scalar(rng.rational());
  h.b[3] = R(-2) * (n - R(1)) * h.a[4];
  h.c[2] = n * (n - R(1)) * h.a[4];
  h.c[1] = -n * ((n - R(1)) * h.a[3] + h.b[2]);
  return h;
}

Outcome criterion1() {
  Outcome o;
  for (const Scalar& n : {S(0), S(1, 2), S(1), S(7, 3), S(5)}) {
    const auto j = sl2_generators(n);
    o.require(commutator(j.zero, j.plus) == j.plus, "[J0,J+] != J+ at n=" + n.str());
    o.require(commutator(j.zero, j.minus) == -j.minus, "[J0,J-] != -J- at n=" + n.str());
    o.require(commutator(j.plus, j.minus) == R(-2) * j.zero, "[J+,J-] != -2J0 at n=" + n.str());
  }
  if (o.passed) o.detail = "[J0,J+-] = +-J+-, [J+,J-] = -2J0 for this realization (+2J0 does not hold)";
  return o;
}

Outcome criterion2() {
  Outcome o;
  Rng rng(2024);
  unsigned cases = 0;
  for (long k = 0; k <= 6; ++k) {
    const Scalar n = S(k);
    for (int i = 0; i < 200; ++i) {
      const auto c = random_combination(rng, n);
      const auto h = HeunCoefficients::from_operator(sl2_compose(c), Field::rationals());
      o.require(algebraization_residuals(h, n).all_zero(), "(a) nonzero residual at n=" + std::to_string(k));

      const auto good = admissible(rng, n);
      o.require(sl2_compose(sl2_decompose_quadratic(good, n)) == good.to_operator(),
                "(b) round trip failed at n=" + std::to_string(k));

      auto bad = admissible(rng, n);
      const Scalar bump(rng.nonzero());
      switch (rng.integer(0, 2)) {
        case 0: bad.b[3] += bump; break;
        case 1: bad.c[2] += bump; break;
        default: bad.c[1] += bump; break;
      }
      o.require(error_of([&] { sl2_decompose_quadratic(bad, n); }) == ErrorCode::NotAlgebraizable,
                "(c) violating operator accepted at n=" + std::to_string(k));
      cases += 3;
    }
  }
  if (o.passed) o.detail = std::to_string(cases) + " cases";
  return o;
}

Outcome criterion3() {
  Outcome o;
  unsigned constant_slot = 0;
  for (const Rational g : {R(1, 5), R(1, 3), R(1, 2)}) {
    for (const Rational drive : {R(0), R(1, 8)}) {
      for (const Branch b : {Branch::Minus, Branch::Plus}) {
        const auto p = rabi(g, 1, drive, b);
        for (unsigned n = 0; n <= 4; ++n) {
          const Scalar e = rabi_exceptional_energy(p, n);
          const auto el = eliminate(coupled_system(p, e), default_component(p));
          const auto closed = rabi_heun(p, e);
          o.require(el.op == closed.to_operator(), "elimination differs from the closed form");
          o.require(algebraization_residuals(closed, S(n)).all_zero(), "E_n leaves a residual");
          const auto c = sl2_decompose_quadratic(closed, S(n));
          o.require(sl2_compose(c) == closed.to_operator(), "decomposition round trip failed");
          const auto diff = combination_mismatches(c, rabi_algebraization_printed(p, n));
          o.require(diff.empty() || diff == std::vector<std::string>{"constant"}, "printed structure differs");
          if (!diff.empty()) ++constant_slot;
          collect(p, n, o);
        }
      }
    }
  }
  if (o.passed) o.detail = "60 cases; printed constant term differs in " + std::to_string(constant_slot);
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Rational g = rng.nonzero(30);
    const auto c = constraint_polynomial(rabi(g), 1);
    Matrix hand(2, 2, Field::rationals());
    hand(0, 0) = Scalar(R(1) - R(2) * g * g);
    hand(0, 1) = Scalar(R(2) * g * g * g - g);
    hand(1, 0) = Scalar(R(2) * g);
    hand(1, 1) = Scalar(R(-2) * g * g);
    o.require(c.restriction == hand, "restriction differs from the hand matrix at g=" + g.str());
    const Scalar tr = hand(0, 0) + hand(1, 1);
    const Scalar det = hand(0, 0) * hand(1, 1) - hand(0, 1) * hand(1, 0);
    o.require(c.coefficients == Polynomial({det, -tr, S(1)}), "characteristic polynomial at g=" + g.str());
    std::vector<Rational> got;
    for (const auto& r : c.roots()) {
      o.require(r.exact.has_value(), "inexact root");
      if (!r.exact) continue;
      for (unsigned m = 0; m < r.multiplicity; ++m) got.push_back(*r.exact->as_rational());
    }
    std::vector<Rational> want{R(0), R(1) - R(4) * g * g};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    o.require(got == want, "roots differ at g=" + g.str());
  }
  if (o.passed) o.detail = "20 couplings, roots {0, 1-4g^2}";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto p = floating(rabi(R(3, 10), R(4, 5)));
  const auto r = locate_level(p, 0.91, {60, 80}, 1e-8);
  o.require(r.steps.size() == 2, "missing oracle steps");
  if (!o.passed) return o;
  const double at80 = r.steps[1].nearest;
  const double drift = std::abs(r.steps[1].nearest - r.steps[0].nearest);
  o.require(std::abs(at80 - 0.91) < 1e-8, "N=80 eigenvalue off by " + std::to_string(std::abs(at80 - 0.91)));
  o.require(drift < 1e-9, "drift 60->80 too large");
  o.require(r.verdict == Verdict::Converged, "verdict not Converged");
  const auto perturbed = locate_level(floating(rabi(R(3, 10), R(21, 25))), 0.91, kDefaultSchedule, 1e-8);
  o.require(perturbed.verdict == Verdict::NotFound, "Delta=0.84 did not give NotFound");
  if (o.passed) {
    std::ostringstream s;
    s.precision(3);
    s << "|E-0.91|=" << std::abs(at80 - 0.91) << " drift=" << drift << ", Delta=0.84 NotFound";
    o.detail = s.str();
  }
  return o;
}

void quartic_suite(const ModelParams& p, Outcome& o) {
  const Scalar root = spectral_root(p);
  for (unsigned n = 0; n <= 3; ++n) {
    const Scalar e = exceptional_energy(p, n);
    const auto op = model_operator(p, e).op;
    const auto c = sl2_decompose_quartic(op, root.lift(R(n)));
    o.require(sl2_compose(c) == op, "quartic round trip failed");
    collect(p, n, o);
  }
}

bool fourth_order_identities(unsigned n_max) {
  for (unsigned k = 0; k <= n_max; ++k) {
    const Scalar n = S(k);
    const auto j = sl2_generators(n);
    const auto m2 = compose(j.minus, j.minus);
    const auto m3 = compose(j.minus, m2);
    const auto z1 = z(), z2 = z() * z();
    if (!(z2 * D(4) == compose(j.plus, m3) + n * (z1 * D(3)))) return false;
    if (!(z2 * D(3) == compose(j.plus, m2) + n * (z1 * D(2)))) return false;
    if (!(z1 * D(3) == compose(j.zero, m2) + (n / R(2)) * D(2))) return false;
  }
  return true;
}

Outcome criterion6() {
  Outcome o;
  o.require(fourth_order_identities(8), "fourth-order identity fails");
  for (const Rational q : {R(1, 4), R(3, 4)}) quartic_suite(twophoton(R(3, 10), q), o);
  o.require(twophoton_exceptional_energy(twophoton(R(3, 10), R(1, 4)), 0) == S(-1, 10), "E_0 != -1/10");
  if (o.passed) o.detail = "identities n<=8, quartic n<=3 at q=1/4,3/4, E_0=-1/10";
  return o;
}

Outcome criterion7() {
  Outcome o;
  o.require(fourth_order_identities(8), "fourth-order identity fails");
  unsigned oracle_runs = 0;
  double worst = 0.0;
  for (const Rational kappa : {R(1, 2), R(1)}) {
    const auto p = twomode(R(3, 5), kappa);
    o.require(spectral_root(p) == S(4, 5), "Lambda != 4/5");
    quartic_suite(p, o);
    const auto c = constraint_polynomial(p, 1);
    const double e = c.energy.to_double();
    for (const auto& r : c.roots()) {
      if (std::abs(r.value.imag()) > 1e-12) continue;
      const double d2 = c.target_sign * r.value.real();
      if (d2 < 0.0) continue;
      auto fp = floating(p);
      fp.level_splitting = Scalar::real(std::sqrt(d2));
      const auto res = locate_level(fp, e, {80, 120}, 1e-7);
      o.require(res.verdict == Verdict::Converged, "oracle did not converge at kappa=" + kappa.str());
      o.require(res.truncation == 120 && std::abs(res.energy - e) < 1e-7, "N=120 level off");
      worst = std::max(worst, std::abs(res.steps.back().nearest - e));
      ++oracle_runs;
    }
  }
  o.require(twomode_exceptional_energy(twomode(R(3, 5), R(1, 2)), 0) == S(-1, 5), "E_0 != -1/5");
  o.require(oracle_runs > 0, "no real Delta roots");
  if (o.passed) {
    std::ostringstream s;
    s.precision(3);
    s << oracle_runs << " oracle runs, max |E-E_n|=" << worst;
    o.detail = s.str();
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto one = LinearDiffOp::multiplication(P({R(1)}));
  const auto check_diff = [&](const Su11Realization& k, const Scalar& index) {
    o.require(commutator(k.k0, k.kplus) == k.kplus, "[K0,K+] != K+");
    o.require(commutator(k.k0, k.kminus) == -k.kminus, "[K0,K-] != -K-");
    o.require(commutator(k.kplus, k.kminus) == R(-2) * k.k0, "[K+,K-] != -2K0");
    const auto casimir = compose(k.kplus, k.kminus) - compose(k.k0, k.k0 - one);
    o.require(casimir == LinearDiffOp::multiplication(Polynomial::constant(index * (R(1) - index))),
              "Casimir != q(1-q) at " + index.str());
  };
  for (const Scalar& q : {S(1, 4), S(3, 4)}) check_diff(twophoton_su11(q), q);
  for (const Scalar& kappa : {S(1, 2), S(1), S(3, 2)}) check_diff(twomode_su11(kappa), kappa);

  double worst = 0.0;
  for (const double k : {0.25, 0.75, 0.5, 1.0, 1.5}) {
    const unsigned N = 60;
    const auto m = su11_matrices(k, N);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(N + 1, N + 1);
    const auto interior = [&](const Eigen::MatrixXd& x) { return x.topLeftCorner(N, N).cwiseAbs().maxCoeff(); };
    worst = std::max(worst, interior(m.k0 * m.kplus - m.kplus * m.k0 - m.kplus));
    worst = std::max(worst, interior(m.k0 * m.kminus - m.kminus * m.k0 + m.kminus));
    worst = std::max(worst, interior(m.kplus * m.kminus - m.kminus * m.kplus + 2.0 * m.k0));
    worst = std::max(worst, interior(m.kplus * m.kminus - m.k0 * (m.k0 - id) - k * (1.0 - k) * id));
  }
  o.require(worst <= 1e-12, "matrix realization residual above 1e-12");
  if (o.passed) {
    std::ostringstream s;
    s.precision(3);
    s << "differential exact, matrix interior residual " << worst;
    o.detail = s.str();
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  o.require(solutions.checked > 0, "no solutions collected");
  o.require(solutions.failed == 0, "nonzero residual: " + solutions.first_failure);
  if (o.passed) o.detail = std::to_string(solutions.checked) + " solutions with identically zero residual";
  return o;
}

Outcome criterion10(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.require(false, "CLI path not given");
    return o;
  }
  const std::string base = "'" + cli + "' sweep --model rabi --Delta 0.8 --g-range 0..0.5 --n 0..3";
  int s1 = 0, s8 = 0;
  const auto serial = run_capture(base + " --jobs 1", s1);
  const auto threaded = run_capture(base + " --jobs 8", s8);
  o.require(s1 == 0 && s8 == 0, "sweep failed");
  o.require(!serial.empty() && serial == threaded, "outputs differ");
  if (o.passed) o.detail = std::to_string(serial.size()) + " bytes identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "sl(2) relations", 1.0, criterion1},
      {2, "algebraization both directions", 10.0, criterion2},
      {3, "Rabi pipeline", 5.0, criterion3},
      {4, "Juddian constraint n=1", 1.0, criterion4},
      {5, "Fock oracle cross-check", 30.0, criterion5},
      {6, "two-photon quartic suite", 10.0, criterion6},
      {7, "two-mode quartic suite and oracle", 60.0, criterion7},
      {8, "su(1,1) realizations", 5.0, criterion8},
      {9, "eigenfunction residuals", 0.0, criterion9},
      {10, "sweep determinism", 0.0, [&] { return criterion10(cli); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0.0 && secs > c.budget) {
      o.passed = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget)) + " s budget)";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.passed ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << " [" << timing
              << "]\n";
    if (!o.passed) ++failures;
  }
  return failures;
}
