#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "core/models.hpp"

namespace qes {

/// Truncated Hamiltonian on spin (x) boson, spin-major: index s(N+1) + m with
/// s = 0 for sigma_z = +1, s = 1 for sigma_z = -1 and m = 0..N. For the su(1,1)
/// models m labels the discrete-series state |k, m>.
struct TruncatedHamiltonian {
  Eigen::MatrixXd matrix;
  unsigned truncation = 0;
  ModelKind model = ModelKind::Rabi;
};

/// Raises TruncationTooSmall for N < 4 and InputOutOfValidatedRange for
/// |2g/omega| > 0.95 (two-photon) or |g/omega| > 0.95 (two-mode).
TruncatedHamiltonian build_fock_matrix(const ModelParams& p, unsigned N);

/// All eigenvalues, ascending.
std::vector<double> spectrum(const TruncatedHamiltonian& h);

/// Discrete-series matrices K0, K+, K- of size (N+1) at Bargmann index k.
struct Su11Matrices {
  Eigen::MatrixXd k0, kplus, kminus;
};
Su11Matrices su11_matrices(double index, unsigned N);

/// sigma_z (x) (-1)^{a+a} on the Rabi basis.
Eigen::MatrixXd parity_operator(unsigned N);

enum class Verdict { Converged, NotFound, NotConverged };
const char* verdict_name(Verdict v);

struct OracleStep {
  unsigned truncation;
  double nearest;   // eigenvalue closest to the target
  double distance;  // |nearest - target|
};

struct OracleResult {
  Verdict verdict = Verdict::NotFound;
  double energy = 0.0;     // nearest eigenvalue at the accepting N
  unsigned truncation = 0; // the accepting N
  std::vector<OracleStep> steps;
};

inline const std::vector<unsigned> kDefaultSchedule{40, 60, 80, 120, 160};
inline constexpr double kDefaultTolerance = 1e-8;

/// Converged when an eigenvalue lies within tol of the target at two
/// consecutive schedule entries and moves by less than tol/10 between them;
/// NotConverged when the target is hit somewhere but the drift test never
/// passes; NotFound otherwise. Schedule entries may run on `jobs` threads.
OracleResult locate_level(const ModelParams& p, double target, const std::vector<unsigned>& schedule = kDefaultSchedule,
                          double tol = kDefaultTolerance, unsigned jobs = 1);

/// Binary dump: 8-byte header ("QESF", uint32 N), then the 2(N+1) x 2(N+1)
/// matrix row-major as float64, all little-endian.
void write_fock_dump(const TruncatedHamiltonian& h, const std::string& path);

}  // namespace qes
