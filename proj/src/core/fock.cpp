#include "core/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <Eigen/Eigenvalues>

#include "core/parallel.hpp"

namespace qes {

namespace {

double ratio_limit(const ModelParams& p) {
  const double g = std::abs(p.coupling.to_double()) / p.omega.to_double();
  return p.kind == ModelKind::TwoPhoton ? 2.0 * g : g;
}

template <typename T>
void put_le(std::ofstream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

}  // namespace

Su11Matrices su11_matrices(double index, unsigned N) {
  const auto d = static_cast<Eigen::Index>(N) + 1;
  Su11Matrices k{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d)};
  for (Eigen::Index m = 0; m < d; ++m) {
    k.k0(m, m) = static_cast<double>(m) + index;
    if (m + 1 < d) {
      const double e = std::sqrt((static_cast<double>(m) + 1.0) * (static_cast<double>(m) + 2.0 * index));
      k.kplus(m + 1, m) = e;
      k.kminus(m, m + 1) = e;
    }
  }
  return k;
}

TruncatedHamiltonian build_fock_matrix(const ModelParams& p, unsigned N) {
  validate(p);
  if (N < 4) throw Error(ErrorCode::TruncationTooSmall, "truncation N=" + std::to_string(N) + " is below 4");
  if (p.kind != ModelKind::Rabi && ratio_limit(p) > 0.95) {
    throw Error(ErrorCode::InputOutOfValidatedRange,
                std::string(model_name(p.kind)) + " oracle is validated only up to coupling ratio 0.95");
  }
  const double w = p.omega.to_double();
  const double g = p.coupling.to_double();
  const double delta = p.level_splitting.to_double();
  const double drive = p.drive.to_double();
  const auto d = static_cast<Eigen::Index>(N) + 1;

  Eigen::MatrixXd boson(d, d);  // diagonal part shared by both spin states
  Eigen::MatrixXd coupling(d, d);
  switch (p.kind) {
    case ModelKind::Rabi: {
      boson.setZero();
      coupling.setZero();
      for (Eigen::Index m = 0; m < d; ++m) {
        boson(m, m) = w * static_cast<double>(m);
        coupling(m, m) = drive;
        if (m + 1 < d) {
          const double e = g * std::sqrt(static_cast<double>(m) + 1.0);
          coupling(m + 1, m) = e;
          coupling(m, m + 1) = e;
        }
      }
      break;
    }
    case ModelKind::TwoPhoton:
    case ModelKind::TwoMode: {
      const bool two_photon = p.kind == ModelKind::TwoPhoton;
      const auto k = su11_matrices(p.bargmann_index->to_double(), N);
      boson = 2.0 * w * (k.k0 - (two_photon ? 0.25 : 0.5) * Eigen::MatrixXd::Identity(d, d));
      coupling = (two_photon ? 2.0 * g : g) * (k.kplus + k.kminus);
      break;
    }
  }

  TruncatedHamiltonian h{Eigen::MatrixXd::Zero(2 * d, 2 * d), N, p.kind};
  h.matrix.topLeftCorner(d, d) = boson + delta * Eigen::MatrixXd::Identity(d, d);
  h.matrix.bottomRightCorner(d, d) = boson - delta * Eigen::MatrixXd::Identity(d, d);
  h.matrix.topRightCorner(d, d) = coupling;
  h.matrix.bottomLeftCorner(d, d) = coupling;
  return h;
}

std::vector<double> spectrum(const TruncatedHamiltonian& h) {
  if (!h.matrix.allFinite()) throw Error(ErrorCode::NumericalFailure, "non-finite matrix entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXd parity_operator(unsigned N) {
  const auto d = static_cast<Eigen::Index>(N) + 1;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  for (Eigen::Index m = 0; m < d; ++m) {
    const double boson = m % 2 == 0 ? 1.0 : -1.0;
    p(m, m) = boson;
    p(d + m, d + m) = -boson;
  }
  return p;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converged:
      return "Converged";
    case Verdict::NotFound:
      return "NotFound";
    case Verdict::NotConverged:
      return "NotConverged";
  }
  return "?";
}

OracleResult locate_level(const ModelParams& p, double target, const std::vector<unsigned>& schedule, double tol,
                          unsigned jobs) {
  if (schedule.empty()) throw Error(ErrorCode::InvalidArgument, "empty truncation schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) throw Error(ErrorCode::InvalidArgument, "truncation schedule must increase");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  OracleResult result;
  result.steps.resize(schedule.size());
  parallel_for(schedule.size(), jobs, [&](std::size_t i) {
    const auto ev = spectrum(build_fock_matrix(p, schedule[i]));
    double best = std::numeric_limits<double>::quiet_NaN();
    double dist = std::numeric_limits<double>::infinity();
    for (double e : ev) {
      if (std::abs(e - target) < dist) {
        dist = std::abs(e - target);
        best = e;
      }
    }
    result.steps[i] = {schedule[i], best, dist};
  });

  bool hit = false;
  for (std::size_t i = 0; i < result.steps.size(); ++i) {
    const auto& s = result.steps[i];
    if (s.distance > tol) continue;
    hit = true;
    if (i + 1 < result.steps.size()) {
      const auto& t = result.steps[i + 1];
      if (t.distance <= tol && std::abs(t.nearest - s.nearest) < tol / 10.0) {
        result.verdict = Verdict::Converged;
        result.energy = t.nearest;
        result.truncation = t.truncation;
        return result;
      }
    }
  }
  result.verdict = hit ? Verdict::NotConverged : Verdict::NotFound;
  if (hit) {
    for (const auto& s : result.steps) {
      if (s.distance <= tol) {
        result.energy = s.nearest;
        result.truncation = s.truncation;
      }
    }
  }
  return result;
}

void write_fock_dump(const TruncatedHamiltonian& h, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  out.write("QESF", 4);
  put_le<std::uint32_t>(out, h.truncation);
  for (Eigen::Index i = 0; i < h.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < h.matrix.cols(); ++j) put_le<double>(out, h.matrix(i, j));
  if (!out) throw Error(ErrorCode::NumericalFailure, "short write to " + path);
}

}  // namespace qes
