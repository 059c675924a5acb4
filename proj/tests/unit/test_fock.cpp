#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <Eigen/Eigenvalues>

#include "core/fock.hpp"
#include "core/spectral.hpp"
#include "support.hpp"

using namespace qes;
using namespace qes::test;

namespace {

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(m, Eigen::EigenvaluesOnly);
  return sorted(std::vector<double>(s.eigenvalues().data(), s.eigenvalues().data() + s.eigenvalues().size()));
}

}  // namespace

TEST_SUITE("fockoracle") {

TEST_CASE("decoupled spectra") {
  const unsigned N = 10;
  const auto r = spectrum(build_fock_matrix(floating(rabi(R(0), R(3, 10))), N));
  std::vector<double> expected;
  for (unsigned m = 0; m <= N; ++m) {
    expected.push_back(m + 0.3);
    expected.push_back(m - 0.3);
  }
  expected = sorted(expected);
  REQUIRE(r.size() == expected.size());
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(expected[i]).epsilon(1e-13));

  const auto t = spectrum(build_fock_matrix(floating(twophoton(R(0), R(1, 4), R(1, 5), R(3, 2))), N));
  expected.clear();
  for (unsigned m = 0; m <= N; ++m) {
    expected.push_back(3.0 * m + 0.2);
    expected.push_back(3.0 * m - 0.2);
  }
  expected = sorted(expected);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == doctest::Approx(expected[i]).epsilon(1e-13));
}

TEST_CASE("discrete-series matrices") {
  for (const double k : {0.25, 0.75, 0.5, 1.5}) {
    const unsigned N = 12;
    const auto m = su11_matrices(k, N);
    const Eigen::MatrixXd c = m.kplus * m.kminus - m.k0 * (m.k0 - Eigen::MatrixXd::Identity(N + 1, N + 1));
    CHECK((c - k * (1.0 - k) * Eigen::MatrixXd::Identity(N + 1, N + 1)).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd up = m.k0 * m.kplus - m.kplus * m.k0 - m.kplus;
    CHECK(up.cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd pm = m.kplus * m.kminus - m.kminus * m.kplus + 2.0 * m.k0;
    CHECK(pm.topLeftCorner(N, N).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("trace and symmetry") {
  const unsigned N = 30;
  const auto h = build_fock_matrix(floating(rabi(R(2, 5), R(7, 10))), N);
  CHECK((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const auto ev = spectrum(h);
  double sum = 0.0;
  for (double e : ev) sum += e;
  CHECK(sum == doctest::Approx(static_cast<double>(N) * (N + 1)).epsilon(1e-11));
}

TEST_CASE("parity splits the Rabi spectrum") {
  const unsigned N = 24;
  const auto h = build_fock_matrix(floating(rabi(R(1, 2), R(4, 5))), N);
  const auto par = parity_operator(N);
  CHECK((h.matrix * par - par * h.matrix).cwiseAbs().maxCoeff() < 1e-14);

  std::vector<Eigen::Index> even, odd;
  for (Eigen::Index i = 0; i < par.rows(); ++i) (par(i, i) > 0 ? even : odd).push_back(i);
  const auto block = [&](const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd b(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) b(r, c) = h.matrix(idx[r], idx[c]);
    return eigenvalues(b);
  };
  auto merged = block(even);
  const auto o = block(odd);
  merged.insert(merged.end(), o.begin(), o.end());
  merged = sorted(merged);
  const auto full = spectrum(h);
  REQUIRE(merged.size() == full.size());
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(merged[i] == doctest::Approx(full[i]).epsilon(1e-11));

  // a driven model breaks the symmetry
  const auto driven = build_fock_matrix(floating(rabi(R(1, 2), R(4, 5), R(1, 8))), N);
  CHECK((driven.matrix * par - par * driven.matrix).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("oracle confirms an exceptional level") {
  const auto p = floating(rabi(R(3, 10), R(4, 5)));
  const auto r = locate_level(p, 0.91);
  CHECK(r.verdict == Verdict::Converged);
  CHECK(std::abs(r.energy - 0.91) < 1e-8);
  CHECK(r.steps.size() == kDefaultSchedule.size());
  CHECK(std::string(verdict_name(r.verdict)) == "Converged");

  CHECK(locate_level(floating(rabi(R(3, 10), R(17, 10))), 0.91).verdict == Verdict::NotFound);
  CHECK(locate_level(floating(rabi(R(3, 10), R(21, 25))), 0.91).verdict == Verdict::NotFound);

  const auto threaded = locate_level(p, 0.91, kDefaultSchedule, kDefaultTolerance, 4);
  CHECK(threaded.energy == r.energy);
  CHECK(threaded.truncation == r.truncation);
}

TEST_CASE("oracle on the two-mode model") {
  const auto exact = twomode(R(3, 5), R(1, 2));
  const auto c = constraint_polynomial(exact, 1);
  const double e = c.energy.to_double();
  unsigned checked = 0;
  for (const auto& root : c.roots()) {
    if (std::abs(root.value.imag()) > 1e-12) continue;
    const double d2 = c.target_sign * root.value.real();
    if (d2 <= 1e-12) continue;
    auto p = floating(exact);
    p.level_splitting = Scalar::real(std::sqrt(d2));
    const auto r = locate_level(p, e, {80, 120, 160});
    CHECK(r.verdict == Verdict::Converged);
    CHECK(std::abs(r.energy - e) < 1e-7);
    ++checked;
  }
  CHECK(checked >= 1);
}

TEST_CASE("oracle errors") {
  CHECK(error_of([] { build_fock_matrix(floating(rabi(R(1, 2))), 3); }) == ErrorCode::TruncationTooSmall);
  CHECK(error_of([] { build_fock_matrix(floating(twophoton(R(24, 50), R(1, 4))), 40); }) ==
        ErrorCode::InputOutOfValidatedRange);
  CHECK(error_of([] { build_fock_matrix(floating(twomode(R(96, 100), R(1, 2))), 40); }) ==
        ErrorCode::InputOutOfValidatedRange);
  build_fock_matrix(floating(twomode(R(94, 100), R(1, 2))), 40);
  const auto p = floating(rabi(R(1, 2)));
  CHECK(error_of([&] { locate_level(p, 0.0, {}); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { locate_level(p, 0.0, {60, 40}); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { locate_level(p, 0.0, kDefaultSchedule, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("binary dump") {
  const auto h = build_fock_matrix(floating(rabi(R(1, 3), R(1, 2))), 5);
  const auto path = (std::filesystem::temp_directory_path() / "qes_fock_dump_test.bin").string();
  write_fock_dump(h, path);
  std::ifstream in(path, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::remove(path.c_str());
  REQUIRE(bytes.size() == 8 + 12 * 12 * 8);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "QESF");
  CHECK(bytes[4] == 5);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 0);
  CHECK(bytes[7] == 0);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      std::uint64_t bits = 0;
      for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[8 + (i * 12 + j) * 8 + b];
      double v;
      std::memcpy(&v, &bits, sizeof v);
      CHECK(v == h.matrix(i, j));
    }
  }
}

}  // TEST_SUITE
