#pragma once

#include <string>
#include <vector>

#include "spvote/errors.hpp"
#include "spvote/subset_plan.hpp"

namespace spvote {

// A strict total order over some set of alternative ids, most-preferred first.
struct Ranking {
  std::vector<AltId> order;

  Ranking() = default;
  explicit Ranking(std::vector<AltId> ids) : order(std::move(ids)) {}

  static Ranking identity(int m);

  int size() const { return static_cast<int>(order.size()); }
  bool contains(AltId id) const { return position_of(id) >= 0; }
  int position_of(AltId id) const;  // -1 if absent
  bool prefers(AltId a, AltId b) const;
  std::vector<AltId> sorted_scope() const;
  bool same_scope(const Ranking& other) const;

  bool operator==(const Ranking&) const = default;
};

// induced order of keep's elements as they appear in r; keep must be a subset
// of r's scope (AlienAlternative otherwise)
Ranking restrict_to(const Ranking& r, const std::vector<AltId>& keep);

// number of discordant pairs; rankings must share scope (ScopeMismatch)
int kendall_distance(const Ranking& a, const Ranking& b);

enum class ReportKind { None, Top, Approval, Rank };

struct ElicitationFormat {
  ReportKind vote_kind = ReportKind::Rank;
  int vote_t = 0;  // approval-set size when vote_kind == Approval
  ReportKind prediction_kind = ReportKind::None;
  int prediction_t = 0;

  bool operator==(const ElicitationFormat&) const = default;
};

// wire tags: "top-none", "top-top", "top-approval3", "top-rank",
// "approval2-approval2", "approval3-rank", "rank-none", "rank-top", "rank-rank"
ElicitationFormat parse_format_tag(const std::string& tag);
std::string format_tag(const ElicitationFormat& fmt);
const std::vector<std::string>& canonical_format_tags();

// Vote or prediction payload. ids holds one id for Top, a sorted set for
// Approval, the full order for Rank, and nothing for None.
struct Report {
  ReportKind kind = ReportKind::None;
  std::vector<AltId> ids;

  bool operator==(const Report&) const = default;
};

Report top_report(AltId id);
Report approval_report(std::vector<AltId> ids);  // canonicalizes to sorted
Report rank_report(std::vector<AltId> order);
Report none_report();

struct Ballot {
  std::string voter_id;
  int subset_id = 0;
  ElicitationFormat format;
  Report vote;
  Report prediction;
};

// throws SubsetOutOfRange / PayloadShapeMismatch / AlienAlternative
const Ballot& validate_ballot(const Ballot& b, const SubsetPlan& plan);

struct Profile {
  int m = 0;
  SubsetPlan plan;
  std::vector<Ballot> ballots;
};

}  // namespace spvote
