#pragma once

#include <map>
#include <string>
#include <vector>

#include "spvote/core.hpp"

namespace spvote {

enum class VotingRule { Borda, Copeland, Maximin, Schulze };

VotingRule parse_rule(const std::string& name);
std::string rule_name(VotingRule rule);

// V[a][b] = total weight of voters preferring a over b, counted only when
// both a and b are in the voter's scope.
struct PairwiseTally {
  int m = 0;
  std::vector<double> counts;  // m*m, row-major, diagonal 0

  explicit PairwiseTally(int m_) : m(m_), counts(static_cast<size_t>(m_) * m_, 0.0) {}
  double& at(AltId a, AltId b) { return counts[static_cast<size_t>(a) * m + b]; }
  double at(AltId a, AltId b) const { return counts[static_cast<size_t>(a) * m + b]; }
};

PairwiseTally tally(int m, const std::vector<Ranking>& rankings,
                    const std::vector<double>* weights = nullptr);

struct ScoreVector {
  VotingRule rule = VotingRule::Borda;
  std::map<AltId, double> scores;
};

// within-scope positional Borda: a ranking of length k contributes k-1-position
ScoreVector positional_borda(const std::vector<Ranking>& rankings,
                             const std::vector<double>* weights,
                             const std::vector<AltId>& ids);
// row-sum Borda over a tally; equals positional Borda on complete profiles
ScoreVector tournament_borda(const PairwiseTally& t, const std::vector<AltId>& ids);
ScoreVector copeland_scores(const PairwiseTally& t, const std::vector<AltId>& ids);
ScoreVector maximin_scores(const PairwiseTally& t, const std::vector<AltId>& ids);

struct SchulzeResult {
  std::vector<AltId> ids;
  std::vector<double> strength;  // strongest-path matrix over ids, row-major
  ScoreVector wins;              // count of P(a,b) > P(b,a)

  double path(AltId a, AltId b) const;
};

SchulzeResult schulze(const PairwiseTally& t, const std::vector<AltId>& ids);

// descending primary score, then descending secondary, then seeded random key
Ranking order_by_scores(const ScoreVector& primary, const ScoreVector* secondary,
                        uint64_t tie_seed);

// full ranking over [0, m) from a collection of (partial) rankings;
// throws EmptyProfile when rankings is empty
Ranking aggregate(VotingRule rule, int m, const std::vector<Ranking>& rankings,
                  uint64_t tie_seed);

}  // namespace spvote
