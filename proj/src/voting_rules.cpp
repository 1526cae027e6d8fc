#include "spvote/voting_rules.hpp"

#include <algorithm>
#include <limits>

#include "spvote/rng.hpp"

namespace spvote {

VotingRule parse_rule(const std::string& name) {
  if (name == "borda") return VotingRule::Borda;
  if (name == "copeland") return VotingRule::Copeland;
  if (name == "maximin") return VotingRule::Maximin;
  if (name == "schulze") return VotingRule::Schulze;
  fail(ErrorKind::Config, "unknown voting rule: " + name);
}

std::string rule_name(VotingRule rule) {
  switch (rule) {
    case VotingRule::Borda: return "borda";
    case VotingRule::Copeland: return "copeland";
    case VotingRule::Maximin: return "maximin";
    case VotingRule::Schulze: return "schulze";
  }
  return "?";
}

PairwiseTally tally(int m, const std::vector<Ranking>& rankings,
                    const std::vector<double>* weights) {
  PairwiseTally t(m);
  for (size_t r = 0; r < rankings.size(); ++r) {
    const double w = weights ? (*weights)[r] : 1.0;
    if (w < 0) fail(ErrorKind::Config, "tally: negative weight");
    const auto& order = rankings[r].order;
    for (size_t i = 0; i < order.size(); ++i)
      for (size_t j = i + 1; j < order.size(); ++j)
        t.at(order[i], order[j]) += w;
  }
  return t;
}

ScoreVector positional_borda(const std::vector<Ranking>& rankings,
                             const std::vector<double>* weights,
                             const std::vector<AltId>& ids) {
  ScoreVector sv;
  sv.rule = VotingRule::Borda;
  for (AltId id : ids) sv.scores[id] = 0.0;
  for (size_t r = 0; r < rankings.size(); ++r) {
    const double w = weights ? (*weights)[r] : 1.0;
    const auto& order = rankings[r].order;
    const int k = static_cast<int>(order.size());
    for (int pos = 0; pos < k; ++pos) {
      auto it = sv.scores.find(order[pos]);
      if (it != sv.scores.end()) it->second += w * (k - 1 - pos);
    }
  }
  return sv;
}

ScoreVector tournament_borda(const PairwiseTally& t, const std::vector<AltId>& ids) {
  ScoreVector sv;
  sv.rule = VotingRule::Borda;
  for (AltId a : ids) {
    double s = 0.0;
    for (AltId b : ids)
      if (b != a) s += t.at(a, b);
    sv.scores[a] = s;
  }
  return sv;
}

ScoreVector copeland_scores(const PairwiseTally& t, const std::vector<AltId>& ids) {
  ScoreVector sv;
  sv.rule = VotingRule::Copeland;
  for (AltId a : ids) {
    double s = 0.0;
    for (AltId b : ids) {
      if (b == a) continue;
      const double vab = t.at(a, b), vba = t.at(b, a);
      if (vab > vba) s += 1.0;
      else if (vab == vba) s += 0.5;
    }
    sv.scores[a] = s;
  }
  return sv;
}

ScoreVector maximin_scores(const PairwiseTally& t, const std::vector<AltId>& ids) {
  ScoreVector sv;
  sv.rule = VotingRule::Maximin;
  for (AltId a : ids) {
    double s = std::numeric_limits<double>::infinity();
    for (AltId b : ids)
      if (b != a) s = std::min(s, t.at(a, b));
    sv.scores[a] = ids.size() > 1 ? s : 0.0;
  }
  return sv;
}

double SchulzeResult::path(AltId a, AltId b) const {
  const int n = static_cast<int>(ids.size());
  int ia = -1, ib = -1;
  for (int i = 0; i < n; ++i) {
    if (ids[i] == a) ia = i;
    if (ids[i] == b) ib = i;
  }
  if (ia < 0 || ib < 0) fail(ErrorKind::AlienAlternative, "schulze path: id not scored");
  return strength[static_cast<size_t>(ia) * n + ib];
}

SchulzeResult schulze(const PairwiseTally& t, const std::vector<AltId>& ids) {
  const int n = static_cast<int>(ids.size());
  SchulzeResult res;
  res.ids = ids;
  res.strength.assign(static_cast<size_t>(n) * n, 0.0);
  auto P = [&](int i, int j) -> double& { return res.strength[static_cast<size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double vij = t.at(ids[i], ids[j]), vji = t.at(ids[j], ids[i]);
      P(i, j) = vij > vji ? vij : 0.0;
    }
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a) {
      if (a == c) continue;
      for (int b = 0; b < n; ++b) {
        if (b == a || b == c) continue;
        P(a, b) = std::max(P(a, b), std::min(P(a, c), P(c, b)));
      }
    }
  res.wins.rule = VotingRule::Schulze;
  for (int i = 0; i < n; ++i) {
    double w = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i && P(i, j) > P(j, i)) w += 1.0;
    res.wins.scores[ids[i]] = w;
  }
  return res;
}

Ranking order_by_scores(const ScoreVector& primary, const ScoreVector* secondary,
                        uint64_t tie_seed) {
  struct Row {
    AltId id;
    double s1, s2;
    uint64_t key;
  };
  std::vector<Row> rows;
  rows.reserve(primary.scores.size());
  for (const auto& [id, s] : primary.scores) {
    double s2 = 0.0;
    if (secondary) {
      auto it = secondary->scores.find(id);
      if (it != secondary->scores.end()) s2 = it->second;
    }
    rows.push_back({id, s, s2, tie_key(tie_seed, id)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.s1 != b.s1) return a.s1 > b.s1;
    if (a.s2 != b.s2) return a.s2 > b.s2;
    if (a.key != b.key) return a.key < b.key;
    return a.id < b.id;
  });
  Ranking out;
  out.order.reserve(rows.size());
  for (const Row& r : rows) out.order.push_back(r.id);
  return out;
}

Ranking aggregate(VotingRule rule, int m, const std::vector<Ranking>& rankings,
                  uint64_t tie_seed) {
  if (rankings.empty()) fail(ErrorKind::EmptyProfile, "aggregate: no rankings");
  std::vector<AltId> ids(m);
  for (int i = 0; i < m; ++i) ids[i] = i;
  switch (rule) {
    case VotingRule::Borda:
      return order_by_scores(positional_borda(rankings, nullptr, ids), nullptr, tie_seed);
    case VotingRule::Copeland: {
      PairwiseTally t = tally(m, rankings);
      ScoreVector cope = copeland_scores(t, ids);
      ScoreVector borda = tournament_borda(t, ids);
      return order_by_scores(cope, &borda, tie_seed);
    }
    case VotingRule::Maximin:
      return order_by_scores(maximin_scores(tally(m, rankings), ids), nullptr, tie_seed);
    case VotingRule::Schulze:
      return order_by_scores(schulze(tally(m, rankings), ids).wins, nullptr, tie_seed);
  }
  fail(ErrorKind::Config, "aggregate: bad rule");
}

}  // namespace spvote
