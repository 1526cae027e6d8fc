#pragma once

#include <string>
#include <vector>

#include "spvote/core.hpp"

namespace spvote {

// correlation in [-1, 1]: (concordant - discordant) / C(n, 2)
double kendall_tau(const Ranking& pred, const Ranking& truth);

// 1 - 6 sum d_i^2 / (n (n^2 - 1)) with d_i the per-element position difference
double spearman_rho(const Ranking& pred, const Ranking& truth);

// fraction of pairs exactly d apart in truth whose relative order pred gets right
double pairwise_hit_rate(const Ranking& pred, const Ranking& truth, int d);

// |top-t(truth) ∩ top-t(pred)| / t
double top_t_hit_rate(const Ranking& pred, const Ranking& truth, int t);

struct MetricReport {
  std::string metric;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n_resamples = 0;
};

// percentile bootstrap of the mean; deterministic given seed
MetricReport bootstrap_ci(const std::vector<double>& samples, int n_resamples,
                          double level, uint64_t seed);

}  // namespace spvote
