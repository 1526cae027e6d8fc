#pragma once

#include <vector>

#include "spvote/core.hpp"

namespace spvote {

// enumeration guards: 7! = 5040 full rankings, 4! = 24 partial rankings
constexpr int kMaxFullEnum = 7;
constexpr int kMaxPartialEnum = 4;

// Z(phi, m) = prod_{i=1..m} (1 + phi + ... + phi^(i-1)); Z(phi, 0) = 1
double mallows_normalizer(double phi, int m);
double log_mallows_normalizer(double phi, int m);

// two-component concentric mixture sensor: p Mallows(phi_e) + (1-p) Mallows(phi_ne)
struct MixtureSensor {
  double p = 0.5;
  double phi_e = 0.2;
  double phi_ne = 0.8;

  void validate() const;
};

// all k! rankings of the given ids, lexicographic by permutation of the sorted ids
std::vector<Ranking> all_partial_rankings(std::vector<AltId> ids);

// Pr_s(sigma | pi*): sum over full rankings restricting to sigma, single component
double partial_likelihood(const Ranking& sigma, const Ranking& pi_star, double phi);
// same under the mixture sensor
double partial_likelihood(const Ranking& sigma, const Ranking& pi_star,
                          const MixtureSensor& sensor);

// exact Bayes posterior over the k! partial ground truths given an observed
// partial ranking, uniform prior over all m! full ground truths; indexed like
// all_partial_rankings(sigma_i scope)
std::vector<double> posterior_partial(const Ranking& sigma_i, int m,
                                      const MixtureSensor& sensor);

// posterior over another voter's partial ranking given one's own
double pr_o(const Ranking& sigma_prime, const Ranking& sigma_i, int m,
            const MixtureSensor& sensor);

// population-level tables for one subset instance (T = first k ids, pi* = identity)
struct PartialOracle {
  int m = 0, k = 0;
  MixtureSensor sensor;
  std::vector<Ranking> sigmas;            // k! partial rankings, canonical order
  int star = 0;                           // index of the true restriction
  std::vector<double> f;                  // Pr_s(sigma | pi*)
  std::vector<std::vector<double>> g;     // g[s'][s] = Pr_o(sigma' | sigma)
  std::vector<std::vector<double>> post;  // post[st][s] = Pr_g(sigma_tilde | sigma)

  int index_of(const Ranking& sigma) const;
};

PartialOracle build_partial_oracle(int m, int k, const MixtureSensor& sensor);

// prediction-normalized votes V(sigma) = f(sigma) sum_{s'} g(s'|sigma)/g(sigma|s')
std::vector<double> prediction_normalized_votes(const std::vector<double>& f,
                                                const std::vector<std::vector<double>>& g);

// argmax of V with seeded tie-break; throws DegenerateConditional on a zero g-cell
int sp_full(const std::vector<double>& f, const std::vector<std::vector<double>>& g,
            uint64_t tie_seed);

struct TheoryParams {
  double p = 0.7;
  double phi_e = 0.1;
  double phi_ne = 0.5;
  int k = 2;
  int m = 4;
  double delta = 0.1;

  void validate() const;
};

struct AssumptionCheck {
  bool pass = false;
  double log_lhs = 0.0;  // log (p/(1-p))^2
  double log_rhs = 0.0;  // log 2 (Z(ne)/Z(e))^2 Z(ne,k) phi_e^(k(k-1)/2)
  double ratio() const;  // lhs / rhs
};

AssumptionCheck check_assumption(const TheoryParams& tp);

// exact population check of V(sigma*) >= 2 max_{tau != sigma*} V(tau)
bool check_separation(const TheoryParams& tp);

// n >= k! sqrt(10 k log(2k/delta) / mu)
long long sample_complexity(const TheoryParams& tp);

// empirical recovery rate of sp_full on n sampled voters, `trials` repetitions;
// each voter votes from f and reports one prediction draw from g(.|vote)
double recovery_experiment(const TheoryParams& tp, long long n, int trials, uint64_t seed);

}  // namespace spvote
