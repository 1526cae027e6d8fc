#include "spvote/subset_plan.hpp"

#include <numeric>
#include <string>

#include "spvote/errors.hpp"

namespace spvote {

SubsetPlan make_plan(int m, int k, int s) {
  if (m < 2 || k < 1 || k > m || s < 1 || (k - 1) * s >= m)
    fail(ErrorKind::InvalidGeometry,
         "make_plan: need m >= 2, 1 <= k <= m, s >= 1, (k-1)*s < m; got m=" +
             std::to_string(m) + " k=" + std::to_string(k) + " s=" + std::to_string(s));
  SubsetPlan plan;
  plan.m = m;
  plan.k = k;
  plan.s = s;
  const int count = m - (k - 1) * s;
  plan.subsets.reserve(count);
  for (int j = 0; j < count; ++j) {
    std::vector<AltId> subset(k);
    for (int t = 0; t < k; ++t) subset[t] = j + t * s;
    plan.subsets.push_back(std::move(subset));
  }
  return plan;
}

std::vector<int> coverage_counts(const SubsetPlan& plan) {
  std::vector<int> counts(static_cast<size_t>(plan.m) * plan.m, 0);
  for (const auto& subset : plan.subsets)
    for (size_t i = 0; i < subset.size(); ++i)
      for (size_t j = i + 1; j < subset.size(); ++j) {
        counts[static_cast<size_t>(subset[i]) * plan.m + subset[j]] += 1;
        counts[static_cast<size_t>(subset[j]) * plan.m + subset[i]] += 1;
      }
  return counts;
}

int pair_coverage(const SubsetPlan& plan, AltId a, AltId b) {
  int n = 0;
  for (const auto& subset : plan.subsets) {
    bool has_a = false, has_b = false;
    for (AltId id : subset) {
      has_a |= (id == a);
      has_b |= (id == b);
    }
    if (has_a && has_b) ++n;
  }
  return n;
}

int coverage_components(const SubsetPlan& plan) {
  std::vector<int> parent(plan.m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& subset : plan.subsets)
    for (size_t i = 1; i < subset.size(); ++i) parent[find(subset[i])] = find(subset[0]);
  int components = 0;
  for (int i = 0; i < plan.m; ++i)
    if (find(i) == i) ++components;
  return components;
}

}  // namespace spvote
