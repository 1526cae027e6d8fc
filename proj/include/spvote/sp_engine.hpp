#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spvote/core.hpp"
#include "spvote/voting_rules.hpp"

namespace spvote {

struct SPConfig {
  double alpha = 0.55;     // > 0.5
  double beta = 0.1;       // < 0.5
  uint64_t tie_seed = 0;
  double smoothing = 1.0;  // Laplace pseudo-count pulling empty g-cells to 1/2

  void validate() const;
};

// one voter's extracted signal for an alternative pair:
// v = 1 iff the vote says a > b, p = implied probability others say a > b
struct PairwiseReport {
  std::string voter_id;
  AltId a = 0, b = 0;
  int v = 0;
  double p = 0.5;
};

struct PairVerdict {
  AltId a = 0, b = 0;
  double score_ab = 0.0;  // prediction-normalized vote for a > b
  double score_ba = 0.0;
  AltId winner = 0, loser = 0;
  bool tie_broken = false;
};

struct PairDiagnostics {
  int subset_id = -1;  // -1 for the pooled pairs of aggregated-sp
  AltId a = 0, b = 0;
  int n_used = 0, n_dropped = 0;
  double f_ab = 0.0;
  double g11 = 0.5, g10 = 0.5, g01 = 0.5, g00 = 0.5;
  double score_ab = 0.0, score_ba = 0.0;
  AltId winner = 0;
};

// Per-ballot signal extraction for pair (a, b). Rank votes compare positions;
// Top/Approval votes use membership and drop the ballot when it mentions both
// or neither of the pair. Predictions map to {alpha, 1-alpha, 1-beta, beta}
// by alignment with the extracted vote, or 1/2 when absent.
std::vector<PairwiseReport> extract_reports(const std::vector<const Ballot*>& ballots,
                                            AltId a, AltId b, const SPConfig& cfg,
                                            int* n_dropped = nullptr);

// Prediction-normalized pairwise vote. vote_mass, when present, replaces the
// vote frequencies with externally supplied mass (aggregated-sp's rule scores).
// Throws DegenerateConditional if a conditional cell is empty and smoothing is 0.
PairVerdict pairwise_sp(const std::vector<PairwiseReport>& reports, AltId a, AltId b,
                        const SPConfig& cfg, Rng& tie_rng,
                        const std::optional<std::pair<double, double>>& vote_mass = std::nullopt,
                        PairDiagnostics* diag = nullptr);

struct SPOutcome {
  Ranking ranking;
  std::vector<PairDiagnostics> diagnostics;
};

// SP verdict per pair within each subset, Copeland over each subset's verdict
// tournament, then the voting rule over the resulting partial rankings.
SPOutcome partial_sp(const Profile& profile, VotingRule rule, const SPConfig& cfg);

// Rule scores per subset (min-max normalized, averaged across subsets), then
// pairwise SP with those scores as vote mass over every co-covered pair,
// Copeland over the global verdict tournament. Schulze is score-free and
// raises UnsupportedRuleForFormat.
SPOutcome aggregated_sp(const Profile& profile, VotingRule rule, const SPConfig& cfg);

// votes-only baseline: the classical rule applied to the raw ballots
Ranking classical_aggregate(const Profile& profile, VotingRule rule, uint64_t tie_seed);

}  // namespace spvote
