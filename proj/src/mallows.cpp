#include "spvote/mallows.hpp"

#include <algorithm>

#include "spvote/parallel.hpp"

namespace spvote {

Ranking sample_mallows(const Ranking& center, double phi, Rng& rng) {
  if (!(phi > 0.0) || phi > 1.0)
    fail(ErrorKind::InvalidDispersion, "sample_mallows: phi must be in (0, 1]");
  const int m = center.size();
  std::vector<AltId> out;
  out.reserve(m);
  for (int i = 1; i <= m; ++i) {
    // e = number of already-placed items that end up below the new one
    const double total = phi == 1.0 ? static_cast<double>(i)
                                    : (1.0 - std::pow(phi, i)) / (1.0 - phi);
    const double target = rng.uniform01() * total;
    double acc = 0.0, w = 1.0;
    int e = 0;
    while (e < i - 1) {
      acc += w;
      if (acc > target) break;
      w *= phi;
      ++e;
    }
    out.insert(out.begin() + (i - 1 - e), center.order[i - 1]);
  }
  return Ranking(std::move(out));
}

BeliefCenter parse_belief_center(const std::string& name) {
  if (name == "observed" || name == "own") return BeliefCenter::Observed;
  if (name == "truth") return BeliefCenter::Truth;
  fail(ErrorKind::Config, "unknown belief center: " + name);
}

std::string belief_center_name(BeliefCenter c) {
  return c == BeliefCenter::Observed ? "observed" : "truth";
}

void MixtureParams::validate_for_sampling() const {
  if (p < 0.0 || p > 1.0) fail(ErrorKind::Config, "mixture: p must be in [0, 1]");
  for (double phi : {phi_e_votes, phi_e_predictions, phi_ne_votes, phi_ne_predictions})
    if (!(phi > 0.0) || phi > 1.0)
      fail(ErrorKind::InvalidDispersion, "mixture: each phi must be in (0, 1]");
}

VoterDraw draw_voter(const MixtureParams& params, const Ranking& ground_truth, Rng& rng) {
  params.validate_for_sampling();
  VoterDraw draw;
  draw.is_expert = rng.bernoulli(params.p);
  const double phi_v = draw.is_expert ? params.phi_e_votes : params.phi_ne_votes;
  const double phi_p = draw.is_expert ? params.phi_e_predictions : params.phi_ne_predictions;
  draw.observed = sample_mallows(ground_truth, phi_v, rng);
  const Ranking& belief_center =
      params.belief_center == BeliefCenter::Observed ? draw.observed : ground_truth;
  draw.belief = sample_mallows(belief_center, phi_p, rng);
  return draw;
}

Report project_report(const Ranking& restricted, ReportKind kind, int t) {
  switch (kind) {
    case ReportKind::None:
      return none_report();
    case ReportKind::Top:
      return top_report(restricted.order.front());
    case ReportKind::Approval:
      return approval_report({restricted.order.begin(), restricted.order.begin() + t});
    case ReportKind::Rank:
      return rank_report(restricted.order);
  }
  fail(ErrorKind::Config, "project_report: bad kind");
}

Profile synthesize_profile(const SubsetPlan& plan, const MixtureParams& params,
                           const std::vector<ElicitationFormat>& formats,
                           int n_per_subset, const Ranking& ground_truth,
                           uint64_t seed) {
  params.validate_for_sampling();
  if (n_per_subset < 1) fail(ErrorKind::Config, "synthesize_profile: n_per_subset must be >= 1");
  if (formats.size() != 1 && formats.size() != plan.subsets.size())
    fail(ErrorKind::Config, "synthesize_profile: one format per subset (or a single broadcast format)");
  if (ground_truth.size() != plan.m)
    fail(ErrorKind::ScopeMismatch, "synthesize_profile: ground truth must rank all m alternatives");

  Profile profile;
  profile.m = plan.m;
  profile.plan = plan;
  const int n_subsets = plan.subset_count();
  profile.ballots.resize(static_cast<size_t>(n_subsets) * n_per_subset);

  parallel_for(static_cast<int64_t>(profile.ballots.size()), [&](int64_t g) {
    const int j = static_cast<int>(g / n_per_subset);
    const ElicitationFormat& fmt = formats.size() == 1 ? formats[0] : formats[j];
    Rng rng = derive_rng(seed, static_cast<uint64_t>(g));
    VoterDraw draw = draw_voter(params, ground_truth, rng);

    Ballot b;
    b.voter_id = "v" + std::to_string(g);
    b.subset_id = j;
    b.format = fmt;
    b.vote = project_report(restrict_to(draw.observed, plan.subsets[j]),
                            fmt.vote_kind, fmt.vote_t);
    b.prediction = project_report(restrict_to(draw.belief, plan.subsets[j]),
                                  fmt.prediction_kind, fmt.prediction_t);
    profile.ballots[g] = std::move(b);
  });
  return profile;
}

}  // namespace spvote
