#include "qes/qes.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "core/fock.hpp"
#include "core/spectral.hpp"
#include "core/sweep.hpp"
#include "core/verify.hpp"

struct qes_model {
  qes::ModelParams params;
};

struct qes_constraint {
  qes::ModelParams params;
  qes::ConstraintPolynomial poly;
  std::vector<qes::PolynomialRoot> roots;
};

struct qes_sweep {
  qes::SweepResult result;
};

namespace {

thread_local std::string last_error;

qes_status fail(qes_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <typename F>
qes_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const qes::Error& e) {
    return fail(static_cast<qes_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QES_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(QES_INTERNAL_ERROR, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qes::Scalar parse_param(const char* text, const char* fallback, bool floating) {
  const qes::Rational r = qes::Rational::parse(text ? text : fallback);
  return floating ? qes::Scalar::real(r.to_double()) : qes::Scalar(r);
}

#define QES_REQUIRE(cond, what) \
  if (!(cond)) return fail(QES_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* qes_version(void) { return "0.1.0"; }

const char* qes_status_name(qes_status status) {
  switch (status) {
    case QES_OK:
      return "OK";
    case QES_BUFFER_TOO_SMALL:
      return "BufferTooSmall";
    case QES_INTERNAL_ERROR:
      return "InternalError";
    default:
      if (status >= QES_INVALID_ARGUMENT && status <= QES_INVALID_RANGE) {
        return qes::error_code_name(static_cast<qes::ErrorCode>(static_cast<int>(status)));
      }
      return "Unknown";
  }
}

const char* qes_last_error(void) { return last_error.c_str(); }

void qes_string_free(char* s) { std::free(s); }

qes_status qes_model_create(const qes_model_spec* spec, qes_model** out) {
  QES_REQUIRE(spec && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    const bool fl = spec->floating != 0;
    qes::ModelParams p;
    switch (spec->kind) {
      case QES_MODEL_RABI:
        p.kind = qes::ModelKind::Rabi;
        break;
      case QES_MODEL_TWO_PHOTON:
        p.kind = qes::ModelKind::TwoPhoton;
        break;
      case QES_MODEL_TWO_MODE:
        p.kind = qes::ModelKind::TwoMode;
        break;
      default:
        return fail(QES_INVALID_ARGUMENT, "unknown model kind");
    }
    p.branch = spec->branch == QES_BRANCH_PLUS ? qes::Branch::Plus : qes::Branch::Minus;
    p.omega = parse_param(spec->omega, "1", fl);
    p.coupling = parse_param(spec->coupling, "0", fl);
    p.level_splitting = parse_param(spec->level_splitting, "0", fl);
    p.drive = parse_param(spec->drive, "0", fl);
    if (spec->bargmann_index) p.bargmann_index = parse_param(spec->bargmann_index, "0", fl);
    qes::validate(p);
    *out = new qes_model{p};
    return QES_OK;
  });
}

void qes_model_destroy(qes_model* model) { delete model; }

qes_status qes_exceptional_energy(const qes_model* model, unsigned n, char** exact, double* value) {
  QES_REQUIRE(model, "null model");
  return guarded([&] {
    const auto e = qes::exceptional_energy(model->params, n);
    if (value) *value = e.to_double();
    if (exact) *exact = dup(e.str());
    return QES_OK;
  });
}

qes_status qes_constraint_create(const qes_model* model, unsigned n, qes_constraint** out) {
  QES_REQUIRE(model && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto poly = qes::constraint_polynomial(model->params, n);
    auto roots = qes::find_roots(poly.coefficients);
    *out = new qes_constraint{model->params, std::move(poly), std::move(roots)};
    return QES_OK;
  });
}

void qes_constraint_destroy(qes_constraint* c) { delete c; }

size_t qes_constraint_degree(const qes_constraint* c) {
  return c ? static_cast<size_t>(c->poly.coefficients.degree()) : 0;
}

int qes_constraint_target_sign(const qes_constraint* c) { return c ? c->poly.target_sign : 0; }

qes_status qes_constraint_coefficient(const qes_constraint* c, size_t k, char** exact, double* value) {
  QES_REQUIRE(c, "null constraint");
  return guarded([&] {
    if (k > static_cast<size_t>(c->poly.coefficients.degree())) return fail(QES_INVALID_ARGUMENT, "coefficient index out of range");
    const auto s = c->poly.coefficients.coeffs()[k];
    if (value) *value = s.to_double();
    if (exact) *exact = dup(s.str());
    return QES_OK;
  });
}

size_t qes_constraint_root_count(const qes_constraint* c) { return c ? c->roots.size() : 0; }

qes_status qes_constraint_root(const qes_constraint* c, size_t i, qes_root* out, char** exact) {
  QES_REQUIRE(c && out, "null argument");
  QES_REQUIRE(i < c->roots.size(), "root index out of range");
  return guarded([&] {
    const auto& r = c->roots[i];
    *out = {r.value.real(), r.value.imag(), r.multiplicity, r.exact ? 1 : 0};
    if (exact) *exact = r.exact ? dup(r.exact->str()) : nullptr;
    return QES_OK;
  });
}

qes_status qes_constraint_eigenpolynomial(const qes_constraint* c, size_t i, char** phi, char** companion,
                                          unsigned* kernel_dim) {
  QES_REQUIRE(c, "null constraint");
  QES_REQUIRE(i < c->roots.size(), "root index out of range");
  return guarded([&] {
    const auto& r = c->roots[i];
    if (!r.exact) return fail(QES_INVALID_ARGUMENT, "root is not exact");
    const auto sols = qes::eigenpolynomials_at(c->params, c->poly.n, *r.exact);
    const auto& s = sols.front();
    if (kernel_dim) *kernel_dim = s.kernel_dim;
    if (phi) *phi = dup(s.phi.str());
    if (companion) *companion = s.companion ? dup(s.companion->str()) : nullptr;
    return QES_OK;
  });
}

qes_status qes_constraint_verify_roots(const qes_constraint* c, int* all_zero, size_t* solutions) {
  QES_REQUIRE(c && all_zero, "null argument");
  return guarded([&] {
    bool ok = true;
    size_t count = 0;
    for (const auto& r : c->roots) {
      if (!r.exact) continue;
      for (const auto& s : qes::eigenpolynomials_at(c->params, c->poly.n, *r.exact)) {
        ++count;
        if (!qes::verify_target(c->params, s.energy, s.target, s.phi).is_zero()) ok = false;
        if (s.companion && s.delta) {
          const auto system = qes::coupled_system(
              [&] {
                auto p = c->params;
                p.level_splitting = p.field().one();
                return p;
              }(),
              s.energy);
          const auto plus = s.kept == qes::Component::Plus ? s.phi : *s.companion;
          const auto minus = s.kept == qes::Component::Plus ? *s.companion : s.phi;
          const auto [r1, r2] = qes::coupled_residuals(system, *s.delta, plus, minus);
          if (!r1.is_zero() || !r2.is_zero()) ok = false;
        }
      }
    }
    *all_zero = ok ? 1 : 0;
    if (solutions) *solutions = count;
    return QES_OK;
  });
}

qes_status qes_exceptional_points(const qes_model* model, unsigned n, double delta, double lo, double hi,
                                  unsigned grid, unsigned jobs, qes_point* out, size_t capacity, size_t* count) {
  QES_REQUIRE(model && count, "null argument");
  return guarded([&] {
    const auto pts = qes::exceptional_points(model->params, n, delta, lo, hi, grid, jobs);
    *count = pts.size();
    if (pts.size() > capacity || (!out && !pts.empty())) return fail(QES_BUFFER_TOO_SMALL, "output buffer too small");
    for (size_t i = 0; i < pts.size(); ++i) out[i] = {pts[i].g, pts[i].energy};
    return QES_OK;
  });
}

qes_status qes_oracle_locate(const qes_model* model, double target, const unsigned* schedule, size_t length,
                             double tol, unsigned jobs, qes_oracle_result* result, qes_oracle_step* steps) {
  QES_REQUIRE(model && result && (schedule || length == 0), "null argument");
  return guarded([&] {
    const std::vector<unsigned> sched = length ? std::vector<unsigned>(schedule, schedule + length) : qes::kDefaultSchedule;
    const auto r = qes::locate_level(model->params, target, sched, tol, jobs);
    result->verdict = static_cast<qes_verdict>(static_cast<int>(r.verdict));
    result->energy = r.energy;
    result->truncation = r.truncation;
    if (steps) {
      for (size_t i = 0; i < r.steps.size() && i < length; ++i) {
        steps[i] = {r.steps[i].truncation, r.steps[i].nearest, r.steps[i].distance};
      }
    }
    return QES_OK;
  });
}

qes_status qes_fock_spectrum(const qes_model* model, unsigned truncation, double* out, size_t capacity,
                             size_t* count) {
  QES_REQUIRE(model && count, "null argument");
  return guarded([&] {
    const auto ev = qes::spectrum(qes::build_fock_matrix(model->params, truncation));
    *count = ev.size();
    if (ev.size() > capacity || !out) return fail(QES_BUFFER_TOO_SMALL, "output buffer too small");
    std::copy(ev.begin(), ev.end(), out);
    return QES_OK;
  });
}

qes_status qes_fock_dump(const qes_model* model, unsigned truncation, const char* path) {
  QES_REQUIRE(model && path, "null argument");
  return guarded([&] {
    qes::write_fock_dump(qes::build_fock_matrix(model->params, truncation), path);
    return QES_OK;
  });
}

qes_status qes_sweep_run(const qes_model* model, const qes_sweep_spec* spec, qes_sweep** out) {
  QES_REQUIRE(model && spec && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    qes::SweepConfig c;
    c.params = model->params;
    c.g_min = spec->g_min;
    c.g_max = spec->g_max;
    c.points = spec->points;
    c.truncation = spec->truncation;
    c.levels = spec->levels;
    c.n_min = spec->n_min;
    c.n_max = spec->n_max;
    c.marker_grid = spec->marker_grid;
    c.jobs = spec->jobs;
    *out = new qes_sweep{qes::run_sweep(c)};
    return QES_OK;
  });
}

void qes_sweep_destroy(qes_sweep* s) { delete s; }

size_t qes_sweep_level_count(const qes_sweep* s) { return s ? s->result.levels.size() : 0; }

qes_status qes_sweep_level(const qes_sweep* s, size_t i, double* g, unsigned* level, double* energy) {
  QES_REQUIRE(s && i < s->result.levels.size(), "level index out of range");
  const auto& l = s->result.levels[i];
  if (g) *g = l.g;
  if (level) *level = l.level;
  if (energy) *energy = l.energy;
  return QES_OK;
}

size_t qes_sweep_marker_count(const qes_sweep* s) { return s ? s->result.markers.size() : 0; }

qes_status qes_sweep_marker(const qes_sweep* s, size_t i, double* g, unsigned* n, double* energy) {
  QES_REQUIRE(s && i < s->result.markers.size(), "marker index out of range");
  const auto& m = s->result.markers[i];
  if (g) *g = m.g;
  if (n) *n = m.n;
  if (energy) *energy = m.energy;
  return QES_OK;
}

qes_status qes_verify(const char* suite, const qes_model* const* models, size_t model_count, unsigned n_min,
                      unsigned n_max, uint64_t seed, char** report_json, int* all_passed) {
  QES_REQUIRE(suite && all_passed && (models || model_count == 0), "null argument");
  return guarded([&] {
    const auto s = qes::parse_suite(suite);
    if (!s) return fail(QES_INVALID_ARGUMENT, std::string("unknown suite ") + suite);
    qes::VerifyOptions o;
    o.suite = *s;
    o.n_min = n_min;
    o.n_max = n_max;
    o.seed = seed;
    for (size_t i = 0; i < model_count; ++i) {
      if (!models[i]) return fail(QES_INVALID_ARGUMENT, "null model in list");
      o.models.push_back(models[i]->params);
    }
    const auto results = qes::run_verify(o);
    bool ok = true;
    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      ok = ok && r.passed;
      report.push_back({{"suite", r.suite},
                        {"identity", r.identity},
                        {"params", r.params},
                        {"passed", r.passed},
                        {"counterexample", r.counterexample},
                        {"note", r.note}});
    }
    *all_passed = ok ? 1 : 0;
    if (report_json) *report_json = dup(report.dump(2));
    return QES_OK;
  });
}

}  // extern "C"
