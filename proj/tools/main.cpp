#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qes/qes.h"
#include "run_config.hpp"

namespace {

using qes::cli::ConfigError;
using qes::cli::format_double;
using qes::cli::RunConfig;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct ApiFailure : std::runtime_error {
  qes_status status;
  ApiFailure(qes_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void call(qes_status s) {
  if (s != QES_OK) throw ApiFailure(s, std::string(qes_status_name(s)) + ": " + qes_last_error());
}

int exit_code_for(qes_status s) {
  switch (s) {
    case QES_INVALID_ARGUMENT:
    case QES_INCOMPATIBLE_FIELD:
    case QES_DECOUPLED_MODEL:
    case QES_COUPLING_OUT_OF_RANGE:
    case QES_ZERO_COUPLING:
    case QES_TRUNCATION_TOO_SMALL:
    case QES_INPUT_OUT_OF_VALIDATED_RANGE:
    case QES_INVALID_RANGE:
      return kExitConfig;
    default:
      return kExitFailure;
  }
}

struct ModelDeleter {
  void operator()(qes_model* m) const { qes_model_destroy(m); }
};
struct ConstraintDeleter {
  void operator()(qes_constraint* c) const { qes_constraint_destroy(c); }
};
struct SweepDeleter {
  void operator()(qes_sweep* s) const { qes_sweep_destroy(s); }
};
using ModelPtr = std::unique_ptr<qes_model, ModelDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  qes_string_free(s);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

template <typename... Fields>
void csv_row(std::ostream& os, const Fields&... fields) {
  bool first = true;
  ((os << (first ? "" : ",") << csv_field(fields), first = false), ...);
  os << '\n';
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ";" : "") + parts[i];
  return out;
}

ModelPtr make_model(const RunConfig& c, const std::string& model, const std::string& g) {
  qes_model_spec spec{};
  spec.kind = model == "2photon" ? QES_MODEL_TWO_PHOTON : model == "2mode" ? QES_MODEL_TWO_MODE : QES_MODEL_RABI;
  spec.branch = c.branch == "plus" ? QES_BRANCH_PLUS : QES_BRANCH_MINUS;
  spec.omega = c.omega.c_str();
  spec.coupling = g.c_str();
  spec.level_splitting = c.level_splitting.c_str();
  spec.drive = c.drive.c_str();
  spec.bargmann_index = c.index ? c.index->c_str() : nullptr;
  qes_model* m = nullptr;
  call(qes_model_create(&spec, &m));
  return ModelPtr(m);
}

ModelPtr make_model(const RunConfig& c) { return make_model(c, c.model, c.coupling); }

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
  if (!f) throw ConfigError("write failed for '" + path + "'");
}

int cmd_verify(const RunConfig& c) {
  std::vector<ModelPtr> owned;
  if (c.model.empty()) {
    RunConfig r = c;
    r.omega = "1";
    r.level_splitting = "1";
    r.drive = "0";
    r.index.reset();
    owned.push_back(make_model(r, "rabi", "1/2"));
    r.index = "1/4";
    owned.push_back(make_model(r, "2photon", "3/10"));
    r.index = "1/2";
    owned.push_back(make_model(r, "2mode", "3/5"));
  } else {
    owned.push_back(make_model(c));
  }
  std::vector<const qes_model*> models;
  for (const auto& m : owned) models.push_back(m.get());

  char* report = nullptr;
  int all_passed = 0;
  call(qes_verify(c.suite.c_str(), models.data(), models.size(), c.n_min, c.n_max, c.seed, &report, &all_passed));
  const auto j = Json::parse(take(report));

  std::ostringstream os;
  if (c.format == "json") {
    os << Json{{"passed", all_passed != 0}, {"checks", j}}.dump(2) << '\n';
  } else {
    csv_row(os, "suite", "identity", "params", "passed", "counterexample", "note");
    for (const auto& r : j) {
      csv_row(os, r["suite"].get<std::string>(), r["identity"].get<std::string>(), r["params"].get<std::string>(),
              std::string(r["passed"].get<bool>() ? "true" : "false"), r["counterexample"].get<std::string>(),
              r["note"].get<std::string>());
    }
  }
  emit(os.str(), c.out);
  return all_passed ? kExitOk : kExitFailure;
}

struct ConstraintRow {
  unsigned n = 0;
  std::string energy_exact;
  double energy = 0;
  int target_sign = 0;
  std::vector<std::string> coefficients;
  std::vector<double> coefficient_values;
  std::vector<std::string> lambda_roots;
  std::vector<double> deltas;
};

std::string format_root(const qes_root& r) {
  if (r.im == 0.0) return format_double(r.re);
  return format_double(r.re) + (r.im < 0 ? "-" : "+") + format_double(std::abs(r.im)) + "i";
}

ConstraintRow constraint_row(const qes_model* model, unsigned n) {
  ConstraintRow row;
  row.n = n;
  char* e = nullptr;
  call(qes_exceptional_energy(model, n, &e, &row.energy));
  row.energy_exact = take(e);

  qes_constraint* raw = nullptr;
  call(qes_constraint_create(model, n, &raw));
  std::unique_ptr<qes_constraint, ConstraintDeleter> poly(raw);
  row.target_sign = qes_constraint_target_sign(poly.get());
  for (std::size_t k = 0; k <= qes_constraint_degree(poly.get()); ++k) {
    char* s = nullptr;
    double v = 0;
    call(qes_constraint_coefficient(poly.get(), k, &s, &v));
    row.coefficients.push_back(take(s));
    row.coefficient_values.push_back(v);
  }
  for (std::size_t i = 0; i < qes_constraint_root_count(poly.get()); ++i) {
    qes_root r{};
    char* s = nullptr;
    call(qes_constraint_root(poly.get(), i, &r, &s));
    const std::string exact = take(s);
    row.lambda_roots.push_back(r.is_exact ? exact : format_root(r));
    const bool real = r.is_exact || std::abs(r.im) <= 1e-9 * std::max(1.0, std::abs(r.re));
    const double t = row.target_sign * r.re;
    if (real && t >= -1e-12) row.deltas.push_back(t > 0 ? std::sqrt(t) : 0.0);
  }
  std::sort(row.deltas.begin(), row.deltas.end());
  row.deltas.erase(std::unique(row.deltas.begin(), row.deltas.end()), row.deltas.end());
  return row;
}

std::vector<std::string> formatted(const std::vector<double>& v) {
  std::vector<std::string> out;
  for (double x : v) out.push_back(format_double(x));
  return out;
}

int cmd_exceptional(const RunConfig& c, bool coefficients_only) {
  const auto model = make_model(c);
  std::vector<ConstraintRow> rows;
  for (unsigned n = c.n_min; n <= c.n_max; ++n) rows.push_back(constraint_row(model.get(), n));

  std::ostringstream os;
  if (c.format == "json") {
    Json out = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["model"] = c.model;
      j["branch"] = c.branch;
      j["n"] = r.n;
      j["E_exact"] = r.energy_exact;
      j["E_float"] = r.energy;
      j["target_sign"] = r.target_sign;
      j["coefficients"] = r.coefficients;
      j["coefficient_values"] = r.coefficient_values;
      if (!coefficients_only) {
        j["lambda_roots"] = r.lambda_roots;
        j["delta_values"] = r.deltas;
      }
      out.push_back(j);
    }
    os << out.dump(2) << '\n';
  } else if (coefficients_only) {
    csv_row(os, "model", "branch", "n", "target_sign", "k", "coefficient_exact", "coefficient_float");
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.coefficients.size(); ++k) {
        csv_row(os, c.model, c.branch, std::to_string(r.n), std::to_string(r.target_sign), std::to_string(k),
                r.coefficients[k], format_double(r.coefficient_values[k]));
      }
    }
  } else {
    csv_row(os, "model", "branch", "n", "E_exact", "E_float", "lambda_roots", "delta_values");
    for (const auto& r : rows) {
      csv_row(os, c.model, c.branch, std::to_string(r.n), r.energy_exact, format_double(r.energy), join(r.lambda_roots),
              join(formatted(r.deltas)));
    }
  }
  emit(os.str(), c.out);
  return kExitOk;
}

int cmd_sweep(const RunConfig& c) {
  const auto model = make_model(c);
  qes_sweep_spec spec{c.g_min, c.g_max, c.points, c.truncation, c.levels, c.n_min, c.n_max, c.grid, c.jobs};
  qes_sweep* raw = nullptr;
  call(qes_sweep_run(model.get(), &spec, &raw));
  std::unique_ptr<qes_sweep, SweepDeleter> sweep(raw);

  std::ostringstream levels, markers;
  Json jl = Json::array(), jm = Json::array();
  for (std::size_t i = 0; i < qes_sweep_level_count(sweep.get()); ++i) {
    double g = 0, e = 0;
    unsigned level = 0;
    call(qes_sweep_level(sweep.get(), i, &g, &level, &e));
    if (i == 0) csv_row(levels, "g", "level", "E");
    csv_row(levels, format_double(g), std::to_string(level), format_double(e));
    jl.push_back({{"g", g}, {"level", level}, {"E", e}});
  }
  csv_row(markers, "g", "n", "E");
  for (std::size_t i = 0; i < qes_sweep_marker_count(sweep.get()); ++i) {
    double g = 0, e = 0;
    unsigned n = 0;
    call(qes_sweep_marker(sweep.get(), i, &g, &n, &e));
    csv_row(markers, format_double(g), std::to_string(n), format_double(e));
    jm.push_back({{"g", g}, {"n", n}, {"E", e}});
  }

  if (c.format == "json") {
    if (c.markers_out.empty()) {
      emit(Json{{"levels", jl}, {"markers", jm}}.dump(2) + "\n", c.out);
    } else {
      emit(Json{{"levels", jl}}.dump(2) + "\n", c.out);
      emit(Json{{"markers", jm}}.dump(2) + "\n", c.markers_out);
    }
    return kExitOk;
  }
  if (!c.markers_out.empty()) {
    emit(levels.str(), c.out);
    emit(markers.str(), c.markers_out);
  } else if (!c.out.empty()) {
    emit(levels.str(), c.out);
    emit(markers.str(), c.out + ".markers.csv");
  } else {
    emit(levels.str() + "\n" + markers.str(), "");
  }
  return kExitOk;
}

const char* verdict_name(qes_verdict v) {
  switch (v) {
    case QES_CONVERGED:
      return "Converged";
    case QES_NOT_FOUND:
      return "NotFound";
    default:
      return "NotConverged";
  }
}

int cmd_oracle(const RunConfig& c) {
  if (!c.target) throw ConfigError("oracle needs --target");
  const auto model = make_model(c);
  qes_oracle_result result{};
  std::vector<qes_oracle_step> steps(c.schedule.size());
  call(qes_oracle_locate(model.get(), *c.target, c.schedule.data(), c.schedule.size(), c.tol, c.jobs, &result,
                         steps.data()));

  std::ostringstream os;
  const char* verdict = verdict_name(result.verdict);
  if (c.format == "json") {
    Json j;
    j["target"] = *c.target;
    j["tol"] = c.tol;
    j["verdict"] = verdict;
    j["energy"] = result.energy;
    j["truncation"] = result.truncation;
    j["steps"] = Json::array();
    for (const auto& s : steps) j["steps"].push_back({{"truncation", s.truncation}, {"nearest", s.nearest}, {"distance", s.distance}});
    os << j.dump(2) << '\n';
  } else {
    csv_row(os, "truncation", "nearest", "distance");
    for (const auto& s : steps) csv_row(os, std::to_string(s.truncation), format_double(s.nearest), format_double(s.distance));
    os << '\n';
    csv_row(os, "verdict", "energy", "truncation");
    csv_row(os, std::string(verdict), format_double(result.energy), std::to_string(result.truncation));
  }
  emit(os.str(), c.out);
  return result.verdict == QES_CONVERGED ? kExitOk : kExitFailure;
}

// Flags are collected as text and merged like a config file, so one
// validation path covers both.
enum class Kind { Text, Count, Real, Seed, List, Range };

struct Flag {
  CLI::Option* option;
  std::string key;
  Kind kind;
  std::string value;
};

struct Flags {
  std::vector<std::unique_ptr<Flag>> all;
  std::string config_path;
  bool print_config = false;

  void add(CLI::App* app, const std::string& names, const std::string& key, Kind kind, const std::string& help) {
    auto f = std::make_unique<Flag>();
    f->key = key;
    f->kind = kind;
    f->option = app->add_option(names, f->value, help);
    all.push_back(std::move(f));
  }
};

template <typename T>
T number_flag(const std::string& text, const std::string& key) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("bad --" + key + " value '" + text + "'");
  return v;
}

nlohmann::json flags_json(const Flags& flags) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : flags.all) {
    if (f->option->count() == 0) continue;
    switch (f->kind) {
      case Kind::Text:
      case Kind::Range:
        j[f->key] = f->value;
        break;
      case Kind::Count:
        j[f->key] = number_flag<unsigned>(f->value, f->key);
        break;
      case Kind::Real:
        j[f->key] = number_flag<double>(f->value, f->key);
        break;
      case Kind::Seed:
        j[f->key] = number_flag<std::uint64_t>(f->value, f->key);
        break;
      case Kind::List: {
        nlohmann::json list = nlohmann::json::array();
        std::stringstream ss(f->value);
        for (std::string part; std::getline(ss, part, ',');) list.push_back(number_flag<unsigned>(part, f->key));
        j[f->key] = list;
        break;
      }
    }
  }
  return j;
}

void model_flags(CLI::App* app, Flags& f) {
  f.add(app, "--model", "model", Kind::Text, "rabi | driven-rabi | 2photon | 2mode");
  f.add(app, "--branch", "branch", Kind::Text, "minus | plus (Rabi only)");
  f.add(app, "--omega", "omega", Kind::Text, "boson frequency");
  f.add(app, "--g", "g", Kind::Text, "coupling");
  f.add(app, "--Delta,--level-splitting", "level_splitting", Kind::Text, "level splitting");
  f.add(app, "--delta,--drive", "drive", Kind::Text, "drive (driven-rabi)");
  f.add(app, "--q", "q", Kind::Text, "Bargmann index q (2photon)");
  f.add(app, "--kappa", "kappa", Kind::Text, "Bargmann index kappa (2mode)");
}

void output_flags(CLI::App* app, Flags& f) {
  f.add(app, "--format", "format", Kind::Text, "csv | json");
  f.add(app, "--out", "out", Kind::Text, "output path (default stdout)");
  app->add_option("--config", f.config_path, "JSON run configuration; flags override it");
  app->add_flag("--print-config", f.print_config, "print the canonical configuration and exit");
}

RunConfig resolve(const std::string& command, const Flags& flags) {
  RunConfig c;
  if (const char* env = std::getenv("QES_DEFAULT_TOL"); env && *env) {
    c.tol = number_flag<double>(env, "QES_DEFAULT_TOL");
  }
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw ConfigError("cannot read '" + flags.config_path + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file: " + std::string(e.what()));
    }
    c = qes::cli::merge_json(c, j);
  }
  c = qes::cli::merge_json(c, flags_json(flags));
  c.command = command;
  qes::cli::check(c);
  return c;
}

int run(int argc, char** argv) {
  CLI::App app{"Quasi-exact spectra of Rabi-type models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qes_version()));

  Flags flags;
  auto* verify = app.add_subcommand("verify", "run the exact identity suites");
  auto* exceptional = app.add_subcommand("exceptional", "exceptional energies, constraint roots and Delta values");
  auto* constraint = app.add_subcommand("constraint", "constraint polynomial coefficients");
  auto* sweep = app.add_subcommand("sweep", "oracle spectra over a coupling range with exceptional markers");
  auto* oracle = app.add_subcommand("oracle", "locate a level in the truncated Fock spectrum");

  for (auto* sub : {verify, exceptional, constraint, sweep, oracle}) {
    model_flags(sub, flags);
    output_flags(sub, flags);
  }
  for (auto* sub : {verify, exceptional, constraint, sweep}) flags.add(sub, "--n", "n", Kind::Range, "n or a..b");
  flags.add(verify, "--suite", "suite", Kind::Text,
            "sl2 | proposition | identities | elimination | quartic | su11 | algebraization | all");
  flags.add(verify, "--seed", "seed", Kind::Seed, "random seed");
  flags.add(sweep, "--g-range", "g_range", Kind::Range, "lo..hi");
  flags.add(sweep, "--points", "points", Kind::Count, "coupling samples");
  flags.add(sweep, "--levels", "levels", Kind::Count, "lowest levels to report");
  flags.add(sweep, "--grid", "grid", Kind::Count, "marker search grid");
  flags.add(sweep, "--markers-out", "markers_out", Kind::Text, "marker CSV path");
  flags.add(sweep, "--truncation", "truncation", Kind::Count, "Fock truncation");
  for (auto* sub : {sweep, oracle}) flags.add(sub, "--jobs", "jobs", Kind::Count, "worker threads");
  flags.add(oracle, "--target", "target", Kind::Real, "energy to locate");
  flags.add(oracle, "--schedule", "schedule", Kind::List, "increasing truncations, comma separated");
  flags.add(oracle, "--tol", "tol", Kind::Real, "tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunConfig c = resolve(command, flags);
  if (flags.print_config) {
    std::cout << qes::cli::to_json(c).dump(2) << '\n';
    return kExitOk;
  }
  if (command == "verify") return cmd_verify(c);
  if (command == "exceptional") return cmd_exceptional(c, false);
  if (command == "constraint") return cmd_exceptional(c, true);
  if (command == "sweep") return cmd_sweep(c);
  return cmd_oracle(c);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "qes: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ApiFailure& e) {
    std::cerr << "qes: " << e.what() << '\n';
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "qes: " << e.what() << '\n';
    return kExitFailure;
  }
}
