#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "equivariance.hpp"
#include "reduced.hpp"

namespace eqym {

struct IdentityCheck {
  std::string name;
  long checked = 0;
  long failed = 0;
  double max_residual = 0;
};

struct SuiteReport {
  std::string suite, label;
  double tolerance = 0;
  // Passes when each identity's largest residual exceeds `tolerance`; `failed` then counts
  // the samples that did not expose the defect.
  bool negative_control = false;
  std::vector<IdentityCheck> items;

  // tol < 0 uses the suite tolerance
  void add(const std::string& name, double residual, double tol = -1);
  double max_residual() const;
  double min_residual() const;
  long checked() const;
  long failed() const;
  bool passed() const;
};

// Exhaustive commutator tables.
SuiteReport so4_lemma_suite(double tol = 1e-10);
SuiteReport sopq_lemma_suite(const Signature& s, int samples, std::uint64_t seed, double tol = 1e-10);
SuiteReport su_lemma_suite(int n, int samples, std::uint64_t seed, double tol = 1e-10);
// Structure constants of every basis kind re-expand in the basis.
SuiteReport structure_suite(int n, double tol = 1e-12);

// Random smooth test data.
std::vector<Profile> random_profiles(AnsatzCase c, std::mt19937_64& rng);
MetricSpec random_metric(const GaugeAnsatz& a, std::mt19937_64& rng, bool flat);
std::vector<double> random_point(const GaugeAnsatz& a, std::mt19937_64& rng);
GaugeAnsatz random_ansatz(AnsatzCase c, const Signature& s, std::mt19937_64& rng);

// With corrupt != 0 and control set, the suite passes when the largest residual exceeds 1e-3.
// Without control the corrupted ansatz is held to tol, which exercises the failure path.
SuiteReport equivariance_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed,
                               double corrupt = 0, double tol = 1e-9, bool control = true);
SuiteReport curvature_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed,
                            double step = 1e-5, double tol = 1e-6);
SuiteReport projection_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed,
                             bool flat = false, double tol = 1e-8);
SuiteReport hodge_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed, double tol = 1e-8);
// lambda_d roundtrip, and equivariance of lambda_d^{-1} o B under the lifted action
// (inflation = lifted residual / original residual, both above a noise floor of 1e-14).
SuiteReport spin_lift_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed,
                            double corrupt = 0, double max_inflation = 10);
// ** = (-1)^{k(N-k)} sign(det g) on every k for every constant diagonal signature with N <= max_n.
SuiteReport hodge_sign_suite(int max_n, std::uint64_t seed, double tol = 1e-12);

}  // namespace eqym
