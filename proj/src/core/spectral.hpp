#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/linalg.hpp"
#include "core/models.hpp"
#include "core/roots.hpp"

namespace qes {

/// Characteristic polynomial of the model operator restricted to P_{n+1} at
/// the exceptional energy E_n. Normalized monic: coefficients = det(lambda I - M_n),
/// which is (-1)^{n+1} det(M_n - lambda I). Its roots are the admissible
/// values of target_sign * Delta^2.
struct ConstraintPolynomial {
  Polynomial coefficients;
  ModelKind model;
  Branch branch;
  unsigned n;
  int target_sign;
  Scalar energy;
  Matrix restriction;

  std::vector<PolynomialRoot> roots() const { return find_roots(coefficients); }
};

ConstraintPolynomial constraint_polynomial(const ModelParams& p, unsigned n);

/// One polynomial eigenfunction at the exceptional energy.
struct ExceptionalSolution {
  unsigned n = 0;
  Scalar energy;
  Scalar target;                // target_sign * Delta^2, a root of the constraint polynomial
  std::optional<Scalar> delta;  // Delta >= 0 when it is available in some supported field
  unsigned multiplicity = 0;    // algebraic multiplicity of target
  unsigned kernel_dim = 0;
  Polynomial phi;               // kept component, first nonzero coefficient normalized to 1
  Component kept = Component::Plus;
  std::optional<Scalar> gauge_exponent;
  std::optional<Polynomial> companion;  // the other component, when Delta != 0 is available
};

/// Kernel of M_n - target_sign * Delta^2 as polynomials, one solution per basis vector.
/// Raises NotAnEigenvalue when the kernel is trivial (exact) or no singular
/// value is below 1e-10 relative (float).
std::vector<ExceptionalSolution> eigenpolynomials(const ModelParams& p, unsigned n, const Scalar& delta);
/// Same, for a given root `target` of the constraint polynomial.
std::vector<ExceptionalSolution> eigenpolynomials_at(const ModelParams& p, unsigned n, const Scalar& target);

/// The other spin component, from the first (kept = Plus) or second (kept =
/// Minus) equation of the coupled system. Uses sol.delta; raises
/// DecoupledModel when it is missing or zero.
Polynomial companion_component(const ExceptionalSolution& sol, const CoupledSystem& system);

/// H phi - target_sign * Delta^2 * phi for the model operator at energy E.
Polynomial verify_solution(const ModelParams& p, const Scalar& energy, const Scalar& delta, const Polynomial& phi);
Polynomial verify_target(const ModelParams& p, const Scalar& energy, const Scalar& target, const Polynomial& phi);

/// Residuals of both coupled equations for the pair (phi+, phi-).
std::pair<Polynomial, Polynomial> coupled_residuals(const CoupledSystem& system, const Scalar& delta,
                                                    const Polynomial& phi_plus, const Polynomial& phi_minus);

struct ExceptionalPoint {
  double g;
  double energy;
};

/// Couplings g in [lo, hi] where target_sign * Delta^2 is an eigenvalue of
/// M_n(g). Sign changes of f(g) = det(M_n(g) - target_sign Delta^2 I) on a
/// uniform grid are refined by bisection; local extrema of f that touch zero
/// are also reported. g = 0 is skipped for the two-photon and two-mode models.
/// Results are sorted by g and independent of `jobs`.
std::vector<ExceptionalPoint> exceptional_points(const ModelParams& p, unsigned n, double delta, double lo,
                                                 double hi, unsigned grid = 512, unsigned jobs = 1);

/// Smallest field containing both; raises IncompatibleField for two different extensions.
Field common_field(const Field& a, const Field& b);
LinearDiffOp embed(const LinearDiffOp& op, const Field& field);
Matrix embed(const Matrix& m, const Field& field);

}  // namespace qes
