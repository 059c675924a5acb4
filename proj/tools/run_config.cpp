#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <regex>

namespace qes::cli {

namespace {

const char* const kModels[] = {"rabi", "driven-rabi", "2photon", "2mode"};
const char* const kCommands[] = {"verify", "exceptional", "constraint", "sweep", "oracle"};

bool one_of(const std::string& s, std::initializer_list<const char*> options) {
  for (const char* o : options)
    if (s == o) return true;
  return false;
}

template <typename T>
T number(const std::string& text, const char* what) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError(std::string("bad ") + what + ": '" + text + "'");
  return v;
}

std::pair<std::string, std::string> split_range(const std::string& text) {
  if (auto p = text.find(".."); p != std::string::npos) return {text.substr(0, p), text.substr(p + 2)};
  if (auto p = text.find(','); p != std::string::npos) return {text.substr(0, p), text.substr(p + 1)};
  return {text, text};
}

std::string string_of(const nlohmann::json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  throw ConfigError(std::string("'") + key + "' must be a string or number");
}

unsigned unsigned_of(const nlohmann::json& v, const char* key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError(std::string("'") + key + "' must be a nonnegative integer");
  }
  return v.get<unsigned>();
}

double double_of(const nlohmann::json& v, const char* key) {
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::pair<unsigned, unsigned> parse_n_range(const std::string& text) {
  const auto [a, b] = split_range(text);
  const auto lo = number<unsigned>(a, "n");
  const auto hi = number<unsigned>(b, "n");
  if (lo > hi) throw ConfigError("empty n range '" + text + "'");
  return {lo, hi};
}

std::pair<double, double> parse_g_range(const std::string& text) {
  const auto [a, b] = split_range(text);
  return {number<double>(a, "g range"), number<double>(b, "g range")};
}

std::string format_n_range(unsigned lo, unsigned hi) {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

RunConfig merge_json(RunConfig c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    const char* k = key.c_str();
    if (key == "command") c.command = string_of(v, k);
    else if (key == "model") c.model = string_of(v, k);
    else if (key == "branch") c.branch = string_of(v, k);
    else if (key == "omega") c.omega = string_of(v, k);
    else if (key == "g") c.coupling = string_of(v, k);
    else if (key == "level_splitting") c.level_splitting = string_of(v, k);
    else if (key == "drive") c.drive = string_of(v, k);
    else if (key == "q" || key == "kappa" || key == "index") c.index = v.is_null() ? std::nullopt : std::optional(string_of(v, k));
    else if (key == "n") std::tie(c.n_min, c.n_max) = v.is_number() ? std::pair{unsigned_of(v, k), unsigned_of(v, k)} : parse_n_range(string_of(v, k));
    else if (key == "g_range") {
      if (v.is_array() && v.size() == 2) {
        c.g_min = double_of(v[0], k);
        c.g_max = double_of(v[1], k);
      } else {
        std::tie(c.g_min, c.g_max) = parse_g_range(string_of(v, k));
      }
    }
    else if (key == "points") c.points = unsigned_of(v, k);
    else if (key == "truncation") c.truncation = unsigned_of(v, k);
    else if (key == "levels") c.levels = unsigned_of(v, k);
    else if (key == "grid") c.grid = unsigned_of(v, k);
    else if (key == "suite") c.suite = string_of(v, k);
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "schedule") {
      if (!v.is_array()) throw ConfigError("'schedule' must be an array");
      c.schedule.clear();
      for (const auto& e : v) c.schedule.push_back(unsigned_of(e, k));
    }
    else if (key == "tol") c.tol = double_of(v, k);
    else if (key == "target") c.target = v.is_null() ? std::nullopt : std::optional(double_of(v, k));
    else if (key == "format") c.format = string_of(v, k);
    else if (key == "out") c.out = string_of(v, k);
    else if (key == "markers_out") c.markers_out = string_of(v, k);
    else if (key == "jobs") c.jobs = unsigned_of(v, k);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return c;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["branch"] = c.branch;
  j["omega"] = c.omega;
  j["g"] = c.coupling;
  j["level_splitting"] = c.level_splitting;
  j["drive"] = c.drive;
  j["index"] = c.index ? nlohmann::ordered_json(*c.index) : nlohmann::ordered_json(nullptr);
  j["n"] = format_n_range(c.n_min, c.n_max);
  j["g_range"] = format_double(c.g_min) + ".." + format_double(c.g_max);
  j["points"] = c.points;
  j["truncation"] = c.truncation;
  j["levels"] = c.levels;
  j["grid"] = c.grid;
  j["suite"] = c.suite;
  j["seed"] = c.seed;
  j["schedule"] = c.schedule;
  j["tol"] = c.tol;
  j["target"] = c.target ? nlohmann::ordered_json(*c.target) : nlohmann::ordered_json(nullptr);
  j["format"] = c.format;
  j["out"] = c.out;
  j["markers_out"] = c.markers_out;
  j["jobs"] = c.jobs;
  return j;
}

std::string canonical(const RunConfig& c) { return to_json(c).dump(); }

void check(const RunConfig& c) {
  bool known = c.model.empty() && c.command == "verify";
  for (const char* m : kModels) known = known || c.model == m;
  if (c.model.empty() && !known) throw ConfigError("--model is required");
  if (!known) throw ConfigError("unknown model '" + c.model + "' (rabi, driven-rabi, 2photon, 2mode)");
  if (!c.command.empty()) {
    bool cmd = false;
    for (const char* m : kCommands) cmd = cmd || c.command == m;
    if (!cmd) throw ConfigError("unknown command '" + c.command + "'");
  }
  if (!one_of(c.branch, {"minus", "plus"})) throw ConfigError("branch must be minus or plus");
  if (c.branch == "plus" && !one_of(c.model, {"rabi", "driven-rabi"})) {
    throw ConfigError("only the Rabi models have a plus branch");
  }
  if (!one_of(c.format, {"csv", "json"})) throw ConfigError("format must be csv or json");
  if (c.n_min > c.n_max) throw ConfigError("empty n range");
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw ConfigError("tol must be a positive number");
  if (c.schedule.empty()) throw ConfigError("empty oracle schedule");
  for (std::size_t i = 1; i < c.schedule.size(); ++i) {
    if (c.schedule[i] <= c.schedule[i - 1]) throw ConfigError("oracle schedule must increase");
  }
  if (c.jobs == 0) throw ConfigError("jobs must be at least 1");
  if (c.points < 2 || c.grid < 2) throw ConfigError("points and grid must be at least 2");
  if (c.levels == 0) throw ConfigError("levels must be at least 1");
  if (!(c.g_min < c.g_max)) throw ConfigError("g range must satisfy lo < hi");
  const bool needs_index = one_of(c.model, {"2photon", "2mode"});
  if (needs_index && !c.index) throw ConfigError(c.model + " needs " + (c.model == "2photon" ? "--q" : "--kappa"));
  static const std::regex zero(R"(\s*[+-]?0*\.?0*(/[0-9]+)?\s*)");
  if (c.model != "driven-rabi" && !std::regex_match(c.drive, zero)) {
    throw ConfigError("a drive needs --model driven-rabi");
  }
  if (c.model.empty() && (c.index || c.branch != "minus")) throw ConfigError("model parameters given without --model");
  if (!needs_index && c.index) throw ConfigError("the Rabi models take no Bargmann index");
}

bool operator==(const RunConfig& a, const RunConfig& b) { return canonical(a) == canonical(b); }

}  // namespace qes::cli
