#include "core/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "core/fock.hpp"
#include "core/parallel.hpp"
#include "core/spectral.hpp"

namespace qes {

SweepResult run_sweep(const SweepConfig& c) {
  if (!(c.g_min < c.g_max) || c.points < 2 || c.n_min > c.n_max || c.levels == 0) {
    throw Error(ErrorCode::InvalidRange, "sweep needs g_min < g_max, points >= 2, n_min <= n_max, levels >= 1");
  }
  auto at = [&](double g) {
    ModelParams q = c.params;
    const Field fl = Field::floating();
    q.omega = q.omega.embed(fl);
    q.level_splitting = q.level_splitting.embed(fl);
    q.drive = q.drive.embed(fl);
    if (q.bargmann_index) q.bargmann_index = q.bargmann_index->embed(fl);
    q.coupling = Scalar::real(g);
    return q;
  };
  validate(at(c.g_min));
  validate(at(c.g_max));

  const double step = (c.g_max - c.g_min) / static_cast<double>(c.points - 1);
  std::vector<std::vector<double>> spectra(c.points);
  std::vector<double> grid(c.points);
  for (unsigned i = 0; i < c.points; ++i) grid[i] = i + 1 == c.points ? c.g_max : c.g_min + step * i;
  parallel_for(c.points, c.jobs, [&](std::size_t i) {
    auto ev = spectrum(build_fock_matrix(at(grid[i]), c.truncation));
    ev.resize(std::min<std::size_t>(ev.size(), c.levels));
    spectra[i] = std::move(ev);
  });

  SweepResult out;
  for (unsigned i = 0; i < c.points; ++i)
    for (unsigned k = 0; k < spectra[i].size(); ++k) out.levels.push_back({grid[i], k, spectra[i][k]});

  const double delta = c.params.level_splitting.to_double();
  for (unsigned n = c.n_min; n <= c.n_max; ++n) {
    for (const auto& pt : exceptional_points(c.params, n, delta, c.g_min, c.g_max, c.marker_grid, c.jobs)) {
      out.markers.push_back({pt.g, n, pt.energy});
    }
  }
  return out;
}

}  // namespace qes
