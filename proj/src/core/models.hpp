#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/diffop.hpp"
#include "core/sl2.hpp"

namespace qes {

enum class ModelKind { Rabi, TwoPhoton, TwoMode };
/// Gauge branch of the Rabi model: psi = e^{-gz/omega} phi (Minus) or e^{+gz/omega} phi (Plus).
/// The two-photon and two-mode models only have the Minus-style gauge.
enum class Branch { Minus, Plus };
enum class Component { Plus, Minus };

const char* model_name(ModelKind kind);
const char* branch_name(Branch branch);

/// Physical parameters. Exact computations want rational scalars, the numeric
/// path float scalars; all present values must share one field.
struct ModelParams {
  ModelKind kind = ModelKind::Rabi;
  Scalar omega{Rational(1)};
  Scalar coupling;         // g
  Scalar level_splitting;  // Delta
  Scalar drive;            // delta, Rabi only
  std::optional<Scalar> bargmann_index;  // q (two-photon) or kappa (two-mode)
  Branch branch = Branch::Minus;

  Field field() const { return omega.field(); }
};

/// Checks omega > 0, a common field, the admissible Bargmann index and the
/// coupling window |2g/omega| < 1 (two-photon) or |g/omega| < 1 (two-mode).
void validate(const ModelParams& p);

/// Field in which the model's operators live: the parameter field for Rabi,
/// Q(Omega) / Q(Lambda) for the two-photon / two-mode models on the exact path.
Field model_field(const ModelParams& p);

/// Omega = sqrt(1 - 4g^2/omega^2) (two-photon) or Lambda = sqrt(1 - g^2/omega^2)
/// (two-mode) in model_field(p); one for Rabi.
Scalar spectral_root(const ModelParams& p);

/// Parameters moved into model_field(p).
struct LiftedParams {
  Scalar omega, g, delta_level, drive, index, root;
};
LiftedParams lift(const ModelParams& p);

/// Two coupled equations in the sigma_x-diagonal representation:
///   plus_op  phi+ = plus_sign  * Delta * phi-
///   minus_op phi- = minus_sign * Delta * phi+
/// The physical wavefunction is psi = exp(gauge_exponent * z) * phi.
struct CoupledSystem {
  ModelKind model;
  Branch branch;
  LinearDiffOp plus_op;
  LinearDiffOp minus_op;
  int plus_sign;
  int minus_sign;
  Scalar delta_level;
  Scalar gauge_exponent;
};

/// An uncoupled operator H with H phi = target_sign * Delta^2 * phi.
struct EliminatedOperator {
  LinearDiffOp op;
  int target_sign;
  Component kept;
};

/// The Schroedinger equation before the gauge substitution, obtained from the
/// Bargmann realization of the Hamiltonian (a+ -> z, a -> d, or the su(1,1)
/// differential realizations). gauge_exponent is zero.
CoupledSystem bargmann_system(const ModelParams& p, const Scalar& energy);

/// bargmann_system conjugated by the model's gauge factor. For the two-photon
/// and two-mode models the second equation is normalized to a positive
/// leading term, so minus_sign is +1 there.
CoupledSystem coupled_system(const ModelParams& p, const Scalar& energy);
CoupledSystem rabi_coupled_system(const ModelParams& p, const Scalar& energy);

/// The component each model eliminates towards: phi+ except for the Rabi Plus branch.
Component default_component(const ModelParams& p);

EliminatedOperator eliminate(const CoupledSystem& system, Component keep);

/// Closed-form construction of the eliminated Rabi operator (branch from p).
HeunCoefficients rabi_heun(const ModelParams& p, const Scalar& energy);
/// Closed-form fourth-order operators of the two-photon and two-mode models.
LinearDiffOp twophoton_operator(const ModelParams& p, const Scalar& energy);
LinearDiffOp twomode_operator(const ModelParams& p, const Scalar& energy);

/// Closed-form eliminated operator of any model, with its spectral target sign.
EliminatedOperator model_operator(const ModelParams& p, const Scalar& energy);

Scalar rabi_exceptional_energy(const ModelParams& p, unsigned n);
Scalar twophoton_exceptional_energy(const ModelParams& p, unsigned n);
Scalar twomode_exceptional_energy(const ModelParams& p, unsigned n);
/// Dispatches on p.kind; the result lies in model_field(p).
Scalar exceptional_energy(const ModelParams& p, unsigned n);

/// Differential realizations of su(1,1):
///   two-photon: K0 = z d + q,     K+ = z/2, K- = 2 z d^2 + 4 q d
///   two-mode:   K0 = z d + kappa, K+ = z,   K- = z d^2 + 2 kappa d
struct Su11Realization {
  LinearDiffOp k0;
  LinearDiffOp kplus;
  LinearDiffOp kminus;
};
Su11Realization twophoton_su11(const Scalar& q);
Su11Realization twomode_su11(const Scalar& kappa);

/// Generator expansions at the exceptional energy, transcribed term by term
/// from their closed forms as printed. Used to cross-check the exact
/// decompositions; see combination_mismatches.
Sl2Combination rabi_algebraization_printed(const ModelParams& p, unsigned n);
Sl2Combination twophoton_algebraization_printed(const ModelParams& p, unsigned n);
/// The printed two-mode list labels its third quartic monomial J-(J-)^2; it
/// is read here as J0(J-)^2, the only slot the identities can produce.
Sl2Combination twomode_algebraization_printed(const ModelParams& p, unsigned n);

/// Names of the terms ("constant", "J+J-J-J-", ...) whose coefficients differ.
std::vector<std::string> combination_mismatches(const Sl2Combination& a, const Sl2Combination& b);

}  // namespace qes
