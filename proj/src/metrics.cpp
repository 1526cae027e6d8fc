#include "spvote/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spvote/parallel.hpp"
#include "spvote/rng.hpp"

namespace spvote {

namespace {

void require_same_scope(const Ranking& pred, const Ranking& truth, const char* what) {
  if (!pred.same_scope(truth)) fail(ErrorKind::ScopeMismatch, std::string(what) + ": scopes differ");
}

}  // namespace

double kendall_tau(const Ranking& pred, const Ranking& truth) {
  require_same_scope(pred, truth, "kendall_tau");
  const int n = truth.size();
  if (n < 2) return 1.0;
  int concordant = 0, discordant = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const AltId a = truth.order[i], b = truth.order[j];
      if (pred.prefers(a, b)) ++concordant;
      else ++discordant;
    }
  return static_cast<double>(concordant - discordant) / (0.5 * n * (n - 1));
}

double spearman_rho(const Ranking& pred, const Ranking& truth) {
  require_same_scope(pred, truth, "spearman_rho");
  const int n = truth.size();
  if (n < 2) return 1.0;
  double sum_d2 = 0.0;
  for (AltId id : truth.order) {
    const double d = pred.position_of(id) - truth.position_of(id);
    sum_d2 += d * d;
  }
  return 1.0 - 6.0 * sum_d2 / (static_cast<double>(n) * (static_cast<double>(n) * n - 1));
}

double pairwise_hit_rate(const Ranking& pred, const Ranking& truth, int d) {
  require_same_scope(pred, truth, "pairwise_hit_rate");
  const int n = truth.size();
  if (d < 1 || d > n - 1) fail(ErrorKind::InvalidDistance, "pairwise_hit_rate: d must be in [1, n-1]");
  int hits = 0, total = 0;
  for (int i = 0; i + d < n; ++i) {
    const AltId a = truth.order[i], b = truth.order[i + d];
    ++total;
    if (pred.prefers(a, b)) ++hits;
  }
  return static_cast<double>(hits) / total;
}

double top_t_hit_rate(const Ranking& pred, const Ranking& truth, int t) {
  require_same_scope(pred, truth, "top_t_hit_rate");
  const int n = truth.size();
  if (t < 1 || t > n) fail(ErrorKind::InvalidT, "top_t_hit_rate: t must be in [1, n]");
  std::vector<AltId> a(truth.order.begin(), truth.order.begin() + t);
  std::vector<AltId> b(pred.order.begin(), pred.order.begin() + t);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<AltId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / t;
}

namespace {

double percentile(const std::vector<double>& sorted, double q) {
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * (n - 1);
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - lo;
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

MetricReport bootstrap_ci(const std::vector<double>& samples, int n_resamples,
                          double level, uint64_t seed) {
  if (samples.empty()) fail(ErrorKind::EmptySample, "bootstrap_ci: no samples");
  if (n_resamples < 100) fail(ErrorKind::Config, "bootstrap_ci: need at least 100 resamples");
  if (level <= 0.0 || level >= 1.0) fail(ErrorKind::Config, "bootstrap_ci: level in (0,1)");
  const size_t n = samples.size();
  const double point = std::accumulate(samples.begin(), samples.end(), 0.0) / n;

  std::vector<double> means(n_resamples);
  parallel_for(n_resamples, [&](int64_t r) {
    Rng rng = derive_rng(seed, static_cast<uint64_t>(r));
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) sum += samples[rng.below(n)];
    means[r] = sum / n;
  });
  std::sort(means.begin(), means.end());
  const double alpha = (1.0 - level) / 2.0;
  MetricReport rep;
  rep.point = point;
  rep.ci_low = percentile(means, alpha);
  rep.ci_high = percentile(means, 1.0 - alpha);
  rep.n_resamples = n_resamples;
  return rep;
}

}  // namespace spvote
