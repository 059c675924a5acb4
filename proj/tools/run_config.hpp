#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qes::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything a subcommand needs. Physical parameters stay strings so they can
/// be read exactly ("3/10", "0.3").
struct RunConfig {
  std::string command;
  std::string model;  // rabi | driven-rabi | 2photon | 2mode; empty only for verify
  std::string branch = "minus";
  std::string omega = "1";
  std::string coupling = "0";
  std::string level_splitting = "0";
  std::string drive = "0";
  std::optional<std::string> index;  // q or kappa

  unsigned n_min = 0;
  unsigned n_max = 2;
  double g_min = 0.0;
  double g_max = 0.5;
  unsigned points = 101;
  unsigned truncation = 80;
  unsigned levels = 8;
  unsigned grid = 512;

  std::string suite = "all";
  std::uint64_t seed = 1;

  std::vector<unsigned> schedule{40, 60, 80, 120, 160};
  double tol = 1e-8;
  std::optional<double> target;

  std::string format = "csv";
  std::string out;
  std::string markers_out;
  unsigned jobs = 1;
};

/// "3" or "0..8".
std::pair<unsigned, unsigned> parse_n_range(const std::string& text);
/// "0..0.5" or "0,0.5".
std::pair<double, double> parse_g_range(const std::string& text);
std::string format_n_range(unsigned lo, unsigned hi);
std::string format_double(double v);

/// Overlays the keys present in `j` onto `base`; unknown keys are errors.
RunConfig merge_json(RunConfig base, const nlohmann::json& j);
/// Canonical form: every field, fixed key set, shortest round-trip numbers.
nlohmann::ordered_json to_json(const RunConfig& c);
std::string canonical(const RunConfig& c);

/// Consistency checks shared by every entry point; raises ConfigError.
void check(const RunConfig& c);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace qes::cli
