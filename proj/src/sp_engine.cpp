#include "spvote/sp_engine.hpp"

#include <algorithm>
#include <set>

#include "spvote/parallel.hpp"
#include "spvote/rng.hpp"
#include "spvote/subset_plan.hpp"

namespace spvote {

void SPConfig::validate() const {
  if (!(alpha > 0.5) || !(alpha < 1.0)) fail(ErrorKind::Config, "sp: alpha must be in (0.5, 1)");
  if (!(beta > 0.0) || !(beta < 0.5)) fail(ErrorKind::Config, "sp: beta must be in (0, 0.5)");
  if (smoothing < 0.0) fail(ErrorKind::Config, "sp: smoothing must be >= 0");
}

namespace {

bool member(const Report& rep, AltId id) {
  return std::find(rep.ids.begin(), rep.ids.end(), id) != rep.ids.end();
}

bool rank_prefers(const Report& rep, AltId a, AltId b) {
  for (AltId id : rep.ids) {
    if (id == a) return true;
    if (id == b) return false;
  }
  fail(ErrorKind::AlienAlternative, "rank payload missing pair member");
}

}  // namespace

std::vector<PairwiseReport> extract_reports(const std::vector<const Ballot*>& ballots,
                                            AltId a, AltId b, const SPConfig& cfg,
                                            int* n_dropped) {
  cfg.validate();
  std::vector<PairwiseReport> out;
  out.reserve(ballots.size());
  int dropped = 0;
  for (const Ballot* ballot : ballots) {
    int v;
    switch (ballot->format.vote_kind) {
      case ReportKind::Rank:
        v = rank_prefers(ballot->vote, a, b) ? 1 : 0;
        break;
      case ReportKind::Top:
      case ReportKind::Approval: {
        const bool has_a = member(ballot->vote, a);
        const bool has_b = member(ballot->vote, b);
        if (has_a == has_b) {  // mentions both or neither: no pair signal
          ++dropped;
          continue;
        }
        v = has_a ? 1 : 0;
        break;
      }
      default:
        ++dropped;
        continue;
    }

    double p;
    switch (ballot->format.prediction_kind) {
      case ReportKind::None:
        p = 0.5;
        break;
      case ReportKind::Rank: {
        const bool pred_ab = rank_prefers(ballot->prediction, a, b);
        if (pred_ab && v == 1) p = cfg.alpha;
        else if (!pred_ab && v == 1) p = 1.0 - cfg.alpha;
        else if (pred_ab) p = 1.0 - cfg.beta;
        else p = cfg.beta;
        break;
      }
      case ReportKind::Top:
      case ReportKind::Approval: {
        const bool pa = member(ballot->prediction, a);
        const bool pb = member(ballot->prediction, b);
        if (pa && v == 1) p = cfg.alpha;
        else if (pb && v == 1) p = 1.0 - cfg.alpha;
        else if (pa && v == 0) p = 1.0 - cfg.beta;
        else p = cfg.beta;
        break;
      }
    }
    out.push_back(PairwiseReport{ballot->voter_id, a, b, v, p});
  }
  if (n_dropped) *n_dropped = dropped;
  return out;
}

PairVerdict pairwise_sp(const std::vector<PairwiseReport>& reports, AltId a, AltId b,
                        const SPConfig& cfg, Rng& tie_rng,
                        const std::optional<std::pair<double, double>>& vote_mass,
                        PairDiagnostics* diag) {
  cfg.validate();
  if (reports.empty()) fail(ErrorKind::EmptySample, "pairwise_sp: no reports");

  int n1 = 0;
  double sum1 = 0.0, sum0 = 0.0;
  for (const auto& r : reports) {
    if (r.v == 1) { ++n1; sum1 += r.p; }
    else sum0 += r.p;
  }
  const int n = static_cast<int>(reports.size());
  const int n0 = n - n1;
  if (cfg.smoothing == 0.0 && (n1 == 0 || n0 == 0))
    fail(ErrorKind::DegenerateConditional, "pairwise_sp: empty conditional cell with zero smoothing");

  const double lam = cfg.smoothing;
  const double g11 = (sum1 + 0.5 * lam) / (n1 + lam);
  const double g10 = (sum0 + 0.5 * lam) / (n0 + lam);
  const double g01 = 1.0 - g11;
  const double g00 = 1.0 - g10;

  const double f_ab = vote_mass ? vote_mass->first : static_cast<double>(n1) / n;
  const double f_ba = vote_mass ? vote_mass->second : static_cast<double>(n0) / n;

  // V(a>b) = f(a>b) * sum_i g(v_i | 1) / g(1 | v_i), and symmetrically
  const double score_ab = f_ab * (n1 * (g11 / g11) + n0 * (g01 / g10));
  const double score_ba = f_ba * (n1 * (g10 / g01) + n0 * (g00 / g00));

  PairVerdict verdict;
  verdict.a = a;
  verdict.b = b;
  verdict.score_ab = score_ab;
  verdict.score_ba = score_ba;
  if (score_ab > score_ba) {
    verdict.winner = a;
    verdict.loser = b;
  } else if (score_ba > score_ab) {
    verdict.winner = b;
    verdict.loser = a;
  } else {
    verdict.tie_broken = true;
    const bool a_wins = tie_rng.bernoulli(0.5);
    verdict.winner = a_wins ? a : b;
    verdict.loser = a_wins ? b : a;
  }
  if (diag) {
    diag->a = a;
    diag->b = b;
    diag->n_used = n;
    diag->f_ab = static_cast<double>(n1) / n;
    diag->g11 = g11;
    diag->g10 = g10;
    diag->g01 = g01;
    diag->g00 = g00;
    diag->score_ab = score_ab;
    diag->score_ba = score_ba;
    diag->winner = verdict.winner;
  }
  return verdict;
}

namespace {

std::vector<std::vector<const Ballot*>> group_by_subset(const Profile& profile) {
  std::vector<std::vector<const Ballot*>> by_subset(profile.plan.subset_count());
  for (const Ballot& b : profile.ballots) {
    if (b.subset_id < 0 || b.subset_id >= profile.plan.subset_count())
      fail(ErrorKind::SubsetOutOfRange, "ballot references subset " + std::to_string(b.subset_id));
    by_subset[b.subset_id].push_back(&b);
  }
  for (int j = 0; j < profile.plan.subset_count(); ++j)
    if (by_subset[j].empty())
      fail(ErrorKind::EmptySubset, "subset " + std::to_string(j) + " has no ballots");
  return by_subset;
}

struct PairTask {
  int subset_id;
  AltId a, b;
};

// coin-flip fallback for pairs whose reports were all dropped
PairVerdict coin_verdict(AltId a, AltId b, Rng& rng, PairDiagnostics* diag) {
  PairVerdict verdict;
  verdict.a = a;
  verdict.b = b;
  verdict.tie_broken = true;
  const bool a_wins = rng.bernoulli(0.5);
  verdict.winner = a_wins ? a : b;
  verdict.loser = a_wins ? b : a;
  if (diag) {
    diag->a = a;
    diag->b = b;
    diag->winner = verdict.winner;
  }
  return verdict;
}

}  // namespace

SPOutcome partial_sp(const Profile& profile, VotingRule rule, const SPConfig& cfg) {
  cfg.validate();
  auto by_subset = group_by_subset(profile);

  std::vector<PairTask> tasks;
  std::vector<int> subset_task_begin(profile.plan.subset_count() + 1, 0);
  for (int j = 0; j < profile.plan.subset_count(); ++j) {
    subset_task_begin[j] = static_cast<int>(tasks.size());
    const auto& subset = profile.plan.subsets[j];
    for (size_t i = 0; i < subset.size(); ++i)
      for (size_t l = i + 1; l < subset.size(); ++l)
        tasks.push_back({j, subset[i], subset[l]});
  }
  subset_task_begin[profile.plan.subset_count()] = static_cast<int>(tasks.size());

  std::vector<PairVerdict> verdicts(tasks.size());
  std::vector<PairDiagnostics> diags(tasks.size());
  parallel_for(static_cast<int64_t>(tasks.size()), [&](int64_t i) {
    const PairTask& task = tasks[i];
    Rng rng = derive_rng(cfg.tie_seed, 1, static_cast<uint64_t>(task.subset_id),
                         static_cast<uint64_t>(task.a) * profile.m + task.b);
    diags[i].subset_id = task.subset_id;
    int dropped = 0;
    auto reports = extract_reports(by_subset[task.subset_id], task.a, task.b, cfg, &dropped);
    diags[i].n_dropped = dropped;
    if (reports.empty())
      verdicts[i] = coin_verdict(task.a, task.b, rng, &diags[i]);
    else
      verdicts[i] = pairwise_sp(reports, task.a, task.b, cfg, rng, std::nullopt, &diags[i]);
  });

  // Copeland over each subset's verdict tournament
  std::vector<Ranking> partials(profile.plan.subset_count());
  for (int j = 0; j < profile.plan.subset_count(); ++j) {
    PairwiseTally t(profile.m);
    for (int i = subset_task_begin[j]; i < subset_task_begin[j + 1]; ++i)
      t.at(verdicts[i].winner, verdicts[i].loser) += 1.0;
    partials[j] = order_by_scores(copeland_scores(t, profile.plan.subsets[j]), nullptr,
                                  mix_seed(cfg.tie_seed, 0x5100 + static_cast<uint64_t>(j)));
  }

  SPOutcome outcome;
  outcome.ranking = aggregate(rule, profile.m, partials, mix_seed(cfg.tie_seed, 0x51FF));
  outcome.diagnostics = std::move(diags);
  return outcome;
}

namespace {

// pairwise relations implied by one vote payload within its subset
void add_vote_relations(PairwiseTally& t, const Ballot& ballot,
                        const std::vector<AltId>& subset) {
  switch (ballot.format.vote_kind) {
    case ReportKind::Rank: {
      const auto& order = ballot.vote.ids;
      for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j)
          t.at(order[i], order[j]) += 1.0;
      break;
    }
    case ReportKind::Top:
    case ReportKind::Approval: {
      for (AltId chosen : ballot.vote.ids)
        for (AltId other : subset)
          if (!member(ballot.vote, other)) t.at(chosen, other) += 1.0;
      break;
    }
    default:
      break;
  }
}

bool all_rank_votes(const Profile& profile) {
  for (const Ballot& b : profile.ballots)
    if (b.format.vote_kind != ReportKind::Rank) return false;
  return true;
}

ScoreVector subset_scores(VotingRule rule, const Profile& profile,
                          const std::vector<const Ballot*>& ballots,
                          const std::vector<AltId>& subset) {
  bool rank_only = true;
  for (const Ballot* b : ballots)
    if (b->format.vote_kind != ReportKind::Rank) rank_only = false;

  if (rule == VotingRule::Borda && rank_only) {
    std::vector<Ranking> rankings;
    rankings.reserve(ballots.size());
    for (const Ballot* b : ballots) rankings.emplace_back(b->vote.ids);
    return positional_borda(rankings, nullptr, subset);
  }
  PairwiseTally t(profile.m);
  for (const Ballot* b : ballots) add_vote_relations(t, *b, subset);
  switch (rule) {
    case VotingRule::Borda: return tournament_borda(t, subset);
    case VotingRule::Copeland: return copeland_scores(t, subset);
    case VotingRule::Maximin: return maximin_scores(t, subset);
    default:
      fail(ErrorKind::UnsupportedRuleForFormat, "aggregated-sp needs a score-producing rule");
  }
}

}  // namespace

SPOutcome aggregated_sp(const Profile& profile, VotingRule rule, const SPConfig& cfg) {
  cfg.validate();
  if (rule == VotingRule::Schulze)
    fail(ErrorKind::UnsupportedRuleForFormat, "aggregated-sp: schulze produces no per-alternative scores");
  auto by_subset = group_by_subset(profile);

  // per-subset rule scores, min-max normalized, averaged across subsets
  std::vector<double> mass_sum(profile.m, 0.0);
  std::vector<int> mass_count(profile.m, 0);
  for (int j = 0; j < profile.plan.subset_count(); ++j) {
    const auto& subset = profile.plan.subsets[j];
    ScoreVector sv = subset_scores(rule, profile, by_subset[j], subset);
    double lo = sv.scores.begin()->second, hi = lo;
    for (const auto& [id, s] : sv.scores) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    for (const auto& [id, s] : sv.scores) {
      mass_sum[id] += hi == lo ? 0.5 : (s - lo) / (hi - lo);
      mass_count[id] += 1;
    }
  }
  std::vector<double> mass(profile.m, 0.5);
  for (int a = 0; a < profile.m; ++a)
    if (mass_count[a] > 0) mass[a] = mass_sum[a] / mass_count[a];

  // pairwise SP on every co-covered pair, predictions pooled across subsets
  std::vector<PairTask> tasks;
  {
    std::vector<int> cov = coverage_counts(profile.plan);
    for (AltId a = 0; a < profile.m; ++a)
      for (AltId b = a + 1; b < profile.m; ++b)
        if (cov[static_cast<size_t>(a) * profile.m + b] > 0) tasks.push_back({-1, a, b});
  }
  std::vector<PairVerdict> verdicts(tasks.size());
  std::vector<PairDiagnostics> diags(tasks.size());
  parallel_for(static_cast<int64_t>(tasks.size()), [&](int64_t i) {
    const AltId a = tasks[i].a, b = tasks[i].b;
    std::vector<const Ballot*> pooled;
    for (int j = 0; j < profile.plan.subset_count(); ++j) {
      const auto& subset = profile.plan.subsets[j];
      const bool has_a = std::find(subset.begin(), subset.end(), a) != subset.end();
      const bool has_b = std::find(subset.begin(), subset.end(), b) != subset.end();
      if (has_a && has_b)
        pooled.insert(pooled.end(), by_subset[j].begin(), by_subset[j].end());
    }
    Rng rng = derive_rng(cfg.tie_seed, 2, static_cast<uint64_t>(a) * profile.m + b);
    int dropped = 0;
    auto reports = extract_reports(pooled, a, b, cfg, &dropped);
    diags[i].n_dropped = dropped;
    if (reports.empty())
      verdicts[i] = coin_verdict(a, b, rng, &diags[i]);
    else
      verdicts[i] = pairwise_sp(reports, a, b, cfg, rng,
                                std::make_pair(mass[a], mass[b]), &diags[i]);
  });

  PairwiseTally tournament(profile.m);
  for (const PairVerdict& v : verdicts) tournament.at(v.winner, v.loser) += 1.0;
  std::vector<AltId> ids(profile.m);
  for (int i = 0; i < profile.m; ++i) ids[i] = i;

  SPOutcome outcome;
  outcome.ranking = order_by_scores(copeland_scores(tournament, ids), nullptr,
                                    mix_seed(cfg.tie_seed, 0xA6FF));
  outcome.diagnostics = std::move(diags);
  return outcome;
}

Ranking classical_aggregate(const Profile& profile, VotingRule rule, uint64_t tie_seed) {
  if (profile.ballots.empty()) fail(ErrorKind::EmptyProfile, "classical_aggregate: no ballots");
  if (all_rank_votes(profile)) {
    std::vector<Ranking> rankings;
    rankings.reserve(profile.ballots.size());
    for (const Ballot& b : profile.ballots) rankings.emplace_back(b.vote.ids);
    return aggregate(rule, profile.m, rankings, tie_seed);
  }
  if (rule == VotingRule::Schulze)
    fail(ErrorKind::UnsupportedRuleForFormat, "schulze needs rank votes");
  PairwiseTally t(profile.m);
  for (const Ballot& b : profile.ballots)
    add_vote_relations(t, b, profile.plan.subsets[b.subset_id]);
  std::vector<AltId> ids(profile.m);
  for (int i = 0; i < profile.m; ++i) ids[i] = i;
  switch (rule) {
    case VotingRule::Borda:
      return order_by_scores(tournament_borda(t, ids), nullptr, tie_seed);
    case VotingRule::Copeland: {
      ScoreVector borda = tournament_borda(t, ids);
      return order_by_scores(copeland_scores(t, ids), &borda, tie_seed);
    }
    case VotingRule::Maximin:
      return order_by_scores(maximin_scores(t, ids), nullptr, tie_seed);
    default:
      fail(ErrorKind::Config, "classical_aggregate: bad rule");
  }
}

}  // namespace spvote
