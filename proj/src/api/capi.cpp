#include <eqym/eqym.h>

#include <cstring>
#include <string>

#include "equivariance.hpp"
#include "reduced.hpp"
#include "runner.hpp"

struct eqym_run {
  eqym::RunResult result;
};

namespace {
thread_local std::string g_error;

eqym_status fail(eqym_status s, const std::string& msg) {
  g_error = msg;
  return s;
}

template <class F>
eqym_status guarded(F&& f) {
  try {
    g_error.clear();
    return f();
  } catch (const eqym::ValidationError& e) {
    return fail(EQYM_VALIDATION, e.what());
  } catch (const eqym::NumericalError& e) {
    return fail(EQYM_NUMERICAL, e.what());
  } catch (const std::exception& e) {
    return fail(EQYM_INTERNAL, e.what());
  } catch (...) {
    return fail(EQYM_INTERNAL, "unknown exception");
  }
}
}  // namespace

extern "C" {

const char* eqym_version(void) { return eqym::kToolVersion; }

const char* eqym_last_error(void) { return g_error.c_str(); }

eqym_status eqym_run_create(const char* config_json, eqym_run** out) {
  if (!config_json || !out) return fail(EQYM_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* run = new eqym_run{eqym::execute(config_json)};
    *out = run;
    if (run->result.exit_code == 0) return EQYM_OK;
    g_error = run->result.message;
    return run->result.exit_code == 2 ? EQYM_VALIDATION : EQYM_NUMERICAL;
  });
}

void eqym_run_destroy(eqym_run* run) { delete run; }

int eqym_run_exit_code(const eqym_run* run) { return run ? run->result.exit_code : 2; }
int eqym_run_passed(const eqym_run* run) { return run && run->result.passed ? 1 : 0; }
const char* eqym_run_message(const eqym_run* run) { return run ? run->result.message.c_str() : ""; }
const char* eqym_run_summary(const eqym_run* run) { return run ? run->result.summary.c_str() : ""; }
const char* eqym_run_config(const eqym_run* run) { return run ? run->result.config.c_str() : ""; }
size_t eqym_run_artifact_count(const eqym_run* run) { return run ? run->result.artifacts.size() : 0; }

const char* eqym_run_artifact_name(const eqym_run* run, size_t i) {
  if (!run || i >= run->result.artifacts.size()) return nullptr;
  return run->result.artifacts[i].name.c_str();
}

const char* eqym_run_artifact_data(const eqym_run* run, size_t i, size_t* size) {
  if (!run || i >= run->result.artifacts.size()) return nullptr;
  const auto& d = run->result.artifacts[i].data;
  if (size) *size = d.size();
  return d.c_str();
}

eqym_status eqym_run_write(const eqym_run* run, const char* dir) {
  if (!run || !dir) return fail(EQYM_ARGUMENT, "null argument");
  return guarded([&] {
    eqym::write_run(run->result, dir);
    return EQYM_OK;
  });
}

eqym_status eqym_resolve_config(const char* config_json, char** out) {
  if (!config_json || !out) return fail(EQYM_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string s = eqym::resolve_config(config_json);
    *out = new char[s.size() + 1];
    std::memcpy(*out, s.c_str(), s.size() + 1);
    return EQYM_OK;
  });
}

void eqym_string_free(char* s) { delete[] s; }

eqym_status eqym_levi_civita(const int* idx, int n, int* sign) {
  if (!idx || !sign || n < 0) return fail(EQYM_ARGUMENT, "null argument or negative length");
  return guarded([&] {
    *sign = eqym::levi_civita(std::span<const int>(idx, static_cast<size_t>(n)));
    return EQYM_OK;
  });
}

eqym_status eqym_fixed_space_dimension(const char* group, int n, int p, int q, int* dim) {
  if (!group || !dim) return fail(EQYM_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string g = group;
    eqym::RepKind rep = eqym::RepKind::vector_adjoint;
    eqym::Signature s{n, 0};
    if (g == "sopq") {
      eqym::require(p >= 1 && q >= 1, "sopq needs p >= 1 and q >= 1");
      s = {p, q};
    } else if (g == "su") {
      eqym::require(n >= 4, "su needs n >= 4");
      rep = eqym::RepKind::vector_traceless;
    } else if (g == "adjoint") {
      eqym::require(n >= 3, "adjoint needs n >= 3");
      rep = eqym::RepKind::adjoint_only;
    } else {
      eqym::require(g == "so", "group must be so, sopq, su or adjoint");
      eqym::require(n >= 3, "so needs n >= 3");
    }
    *dim = eqym::fixed_space(s, rep).dimension;
    return EQYM_OK;
  });
}

eqym_status eqym_son_rhs(int n, double r, double g, double dg, double* ddg) {
  if (!ddg) return fail(EQYM_ARGUMENT, "null argument");
  return guarded([&] {
    eqym::require(n >= 3 && r > 0, "son_rhs needs n >= 3 and r > 0");
    *ddg = eqym::son_rhs(n, r, g, dg);
    return EQYM_OK;
  });
}

}  // extern "C"
