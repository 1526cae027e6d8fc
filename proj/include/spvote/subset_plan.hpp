#pragma once

#include <vector>

namespace spvote {

using AltId = int;

// Family of overlapping size-k subsets with inter-alternative gap s in
// ground-truth positions: subsets[j] = {j, j+s, ..., j+(k-1)s}.
// k and s are 0 for irregular plans loaded from a file.
struct SubsetPlan {
  int m = 0;
  int k = 0;
  int s = 0;
  std::vector<std::vector<AltId>> subsets;

  int subset_count() const { return static_cast<int>(subsets.size()); }
};

// throws InvalidGeometry unless m >= 2, 1 <= k <= m, s >= 1 and (k-1)*s < m
SubsetPlan make_plan(int m, int k, int s);

// symmetric m*m matrix; entry (a,b) = number of subsets containing both
std::vector<int> coverage_counts(const SubsetPlan& plan);
int pair_coverage(const SubsetPlan& plan, AltId a, AltId b);

// connected components of the co-occurrence graph (gap-s plans have s of them)
int coverage_components(const SubsetPlan& plan);

}  // namespace spvote
