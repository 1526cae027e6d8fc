#pragma once

#include <string>
#include <vector>

#include "spvote/core.hpp"
#include "spvote/rng.hpp"

namespace spvote {

// Exact Mallows draw via repeated insertion: item i of the center is placed
// above e of the already-placed items with probability phi^e / (1+phi+...+phi^(i-1)),
// giving Pr(pi) = phi^d(pi, center) / Z(phi, m). O(m^2) per draw.
Ranking sample_mallows(const Ranking& center, double phi, Rng& rng);

// What a voter's prediction draw is centered on. Observed (the voter's own
// noisy ranking) reproduces the surprisingly-popular signal in synthetic
// profiles; Truth is the fully independent variant.
enum class BeliefCenter { Observed, Truth };

BeliefCenter parse_belief_center(const std::string& name);
std::string belief_center_name(BeliefCenter c);

struct MixtureParams {
  double p = 0.2;
  double phi_e_votes = 0.15;
  double phi_e_predictions = 0.7;
  double phi_ne_votes = 0.9;
  double phi_ne_predictions = 0.9;
  BeliefCenter belief_center = BeliefCenter::Observed;

  void validate_for_sampling() const;  // p in [0,1], each phi in (0,1]
};

struct VoterDraw {
  std::string voter_id;
  bool is_expert = false;
  Ranking observed;
  Ranking belief;
};

VoterDraw draw_voter(const MixtureParams& params, const Ranking& ground_truth, Rng& rng);

// n_per_subset fresh voters per subset; vote/prediction payloads are the
// format projections of the voter's observed/belief rankings restricted to
// the subset. formats has one entry per subset or a single broadcast entry.
Profile synthesize_profile(const SubsetPlan& plan, const MixtureParams& params,
                           const std::vector<ElicitationFormat>& formats,
                           int n_per_subset, const Ranking& ground_truth,
                           uint64_t seed);

// projection used above, exposed for tests: Top -> first element,
// Approval(t) -> first t as a set, Rank -> the whole restriction
Report project_report(const Ranking& restricted, ReportKind kind, int t);

}  // namespace spvote
