#pragma once

#include <vector>

#include "core/models.hpp"

namespace qes {

/// Oracle spectra E(g) on a uniform g grid with exceptional markers overlaid.
/// Delta is params.level_splitting; params.coupling is ignored.
struct SweepConfig {
  ModelParams params;
  double g_min = 0.0;
  double g_max = 0.5;
  unsigned points = 101;
  unsigned truncation = 80;
  unsigned levels = 8;
  unsigned n_min = 0;
  unsigned n_max = 3;
  unsigned marker_grid = 512;
  unsigned jobs = 1;
};

struct SweepLevel {
  double g;
  unsigned level;
  double energy;
};

struct SweepMarker {
  double g;
  unsigned n;
  double energy;
};

/// Levels ordered by (g, level); markers by (n, g).
struct SweepResult {
  std::vector<SweepLevel> levels;
  std::vector<SweepMarker> markers;
};

SweepResult run_sweep(const SweepConfig& config);

}  // namespace qes
