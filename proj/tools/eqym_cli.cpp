#include <eqym/eqym.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

using json = nlohmann::ordered_json;

namespace {

template <class T>
void opt(CLI::App* app, json& cfg, const std::string& flag, const std::string& key, const std::string& help) {
  app->add_option_function<T>(flag, [&cfg, key](const T& v) { cfg[key] = v; }, help);
}

void pq_opt(CLI::App* app, json& cfg) {
  app->add_option_function<std::string>(
      "--pq",
      [&cfg](const std::string& s) {
        int p = 0, q = 0;
        char tail = 0;
        if (std::sscanf(s.c_str(), "%d,%d%c", &p, &q, &tail) != 2)
          throw CLI::ValidationError("--pq", "expected p,q such as 2,2");
        cfg["p"] = p;
        cfg["q"] = q;
      },
      "signature as p,q");
}

void metric_opts(CLI::App* app, json& cfg) {
  opt<std::string>(app, cfg, "--metric", "metric", "flat or isotropic");
  opt<std::string>(app, cfg, "--metric-file", "metric_file", "CSV with header r,ft,fr on a uniform grid");
  opt<double>(app, cfg, "--ft-amp", "ft_amp", "amplitude of the built-in f_t bump");
  opt<double>(app, cfg, "--fr-amp", "fr_amp", "amplitude of the built-in f_r bump");
}

void print_summary(const std::string& summary) {
  json s = json::parse(summary);
  for (const auto& c : s["checks"]) {
    std::printf("%s  %-48s %s %s %s\n", c["passed"].get<bool>() ? "PASS" : "FAIL",
                c["name"].get<std::string>().c_str(), c["value"].dump().c_str(),
                c["rule"].get<std::string>().c_str(), c["tolerance"].dump().c_str());
  }
  for (const auto& n : s["notes"]) std::printf("note: %s\n", n.get<std::string>().c_str());
  for (const auto& f : s["failing"]) std::printf("failing: %s\n", f.get<std::string>().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Yang-Mills toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("eqym ") + eqym_version());
  json cfg = json::object();
  std::string out, config_file;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "output directory (default runs/<command>)");
    sub->add_option("--config", config_file, "JSON config; flags override its keys");
    opt<long long>(sub, cfg, "--seed", "seed", "RNG seed");
  };

  auto* classify = app.add_subcommand("classify", "dimension of the invariant tensor space");
  common(classify);
  opt<std::string>(classify, cfg, "--group", "group", "so, sopq, su or adjoint");
  opt<int>(classify, cfg, "--n", "n", "dimension");
  opt<int>(classify, cfg, "--p", "p", "positive directions");
  opt<int>(classify, cfg, "--q", "q", "negative directions");
  pq_opt(classify, cfg);

  auto* verify = app.add_subcommand("verify", "residual suites");
  common(verify);
  opt<std::string>(verify, cfg, "--suite", "suite",
                   "commutators, equivariance, curvature, projection, hodge, spin or all");
  opt<std::string>(verify, cfg, "--case", "case", "so3, so4, son, sopq3, sopq4, sopqn, sun, sun_h, iso_son");
  opt<int>(verify, cfg, "--n", "n", "dimension");
  opt<int>(verify, cfg, "--p", "p", "positive directions");
  opt<int>(verify, cfg, "--q", "q", "negative directions");
  pq_opt(verify, cfg);
  opt<int>(verify, cfg, "--samples", "samples", "random samples per suite");
  double corrupt = 0;
  verify->add_flag("--corrupt{0.1}", corrupt, "perturb the ansatz (optionally --corrupt=amount)");

  auto* solve = app.add_subcommand("solve", "radial ODE from the regular origin");
  common(solve);
  opt<std::string>(solve, cfg, "--case", "case", "son, so4 or sopq4");
  opt<int>(solve, cfg, "--n", "n", "dimension (son)");
  opt<int>(solve, cfg, "--p", "p", "positive directions (sopq4)");
  opt<int>(solve, cfg, "--q", "q", "negative directions (sopq4)");
  pq_opt(solve, cfg);
  opt<double>(solve, cfg, "--a", "a", "f(0) for the p+q=4 system");
  opt<double>(solve, cfg, "--b", "b", "g(0)");
  opt<double>(solve, cfg, "--r0", "r0", "series start radius");
  opt<double>(solve, cfg, "--rmax", "rmax", "end radius");
  opt<double>(solve, cfg, "--tol", "tol", "absolute and relative tolerance");
  opt<int>(solve, cfg, "--points", "points", "rows of profile.csv");
  opt<int>(solve, cfg, "--samples", "samples", "random points for the Yang-Mills residual");

  auto* evolve = app.add_subcommand("evolve", "radial wave evolution");
  common(evolve);
  opt<std::string>(evolve, cfg, "--mode", "mode", "scalar, iso_son or full");
  opt<int>(evolve, cfg, "--n", "n", "dimension");
  metric_opts(evolve, cfg);
  opt<double>(evolve, cfg, "--T", "T", "final time");
  opt<int>(evolve, cfg, "--cells", "cells", "grid cells");
  opt<double>(evolve, cfg, "--cfl", "cfl", "CFL factor");
  opt<double>(evolve, cfg, "--r-min", "r_min", "inner radius");
  opt<double>(evolve, cfg, "--r-max", "r_max", "outer radius");
  opt<std::string>(evolve, cfg, "--boundary", "boundary", "reflecting or outflow");
  opt<int>(evolve, cfg, "--snapshot-every", "snapshot_every", "steps between snapshots (0: none)");
  opt<double>(evolve, cfg, "--bump-amp", "bump_amp", "initial bump amplitude");
  opt<double>(evolve, cfg, "--bump-center", "bump_center", "initial bump centre");
  opt<double>(evolve, cfg, "--bump-width", "bump_width", "initial bump width");
  opt<double>(evolve, cfg, "--h3", "h3", "constant initial h3 (full mode)");
  evolve->add_flag_callback("--convergence", [&] { cfg["convergence"] = true; }, "refinement study");

  auto* energy = app.add_subcommand("energy", "energy scaling under S(r,t) -> S(r/l,t/l)");
  common(energy);
  opt<double>(energy, cfg, "--scale", "scale", "lambda");
  opt<int>(energy, cfg, "--n", "n", "dimension");
  metric_opts(energy, cfg);
  opt<double>(energy, cfg, "--r-min", "r_min", "inner radius");
  opt<double>(energy, cfg, "--r-max", "r_max", "outer radius");
  opt<double>(energy, cfg, "--tol", "tol", "relative tolerance");
  energy->add_flag_callback("--evolve", [&] { cfg["evolve"] = true; }, "also compare evolved energies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  if (cmd == "verify" && verify->count("--corrupt")) cfg["corrupt"] = corrupt;

  json full = json::object();
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) {
      std::fprintf(stderr, "validation error: cannot read %s\n", config_file.c_str());
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      full = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      std::fprintf(stderr, "validation error: %s\n", e.what());
      return 2;
    }
    if (!full.is_object()) {
      std::fprintf(stderr, "validation error: config must be a JSON object\n");
      return 2;
    }
    if (full.contains("command") && full["command"] != cmd) {
      std::fprintf(stderr, "validation error: config is for command %s\n", full["command"].dump().c_str());
      return 2;
    }
  }
  full["command"] = cmd;
  full.update(cfg);
  if (out.empty()) out = "runs/" + cmd;

  eqym_run* run = nullptr;
  const eqym_status st = eqym_run_create(full.dump().c_str(), &run);
  if (!run) {
    std::fprintf(stderr, "error: %s\n", eqym_last_error());
    return st == EQYM_VALIDATION ? 2 : st == EQYM_NUMERICAL ? 3 : 1;
  }
  const int rc = eqym_run_exit_code(run);
  if (eqym_run_write(run, out.c_str()) != EQYM_OK) {
    std::fprintf(stderr, "error: %s\n", eqym_last_error());
    eqym_run_destroy(run);
    return 2;
  }
  if (rc == 2) std::fprintf(stderr, "%s\n", eqym_run_message(run));
  if (cmd == "classify") {
    for (size_t i = 0; i < eqym_run_artifact_count(run); ++i)
      if (std::string(eqym_run_artifact_name(run, i)) == "dimensions.txt")
        std::fputs(eqym_run_artifact_data(run, i, nullptr), stdout);
  }
  print_summary(eqym_run_summary(run));
  std::printf("%s  (%s)\n", eqym_run_message(run), out.c_str());
  eqym_run_destroy(run);
  return rc;
}
