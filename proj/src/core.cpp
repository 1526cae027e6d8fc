#include "spvote/core.hpp"

#include <algorithm>
#include <set>

namespace spvote {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "Config";
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::SubsetOutOfRange: return "SubsetOutOfRange";
    case ErrorKind::PayloadShapeMismatch: return "PayloadShapeMismatch";
    case ErrorKind::AlienAlternative: return "AlienAlternative";
    case ErrorKind::ScopeMismatch: return "ScopeMismatch";
    case ErrorKind::InvalidDistance: return "InvalidDistance";
    case ErrorKind::InvalidT: return "InvalidT";
    case ErrorKind::InvalidDispersion: return "InvalidDispersion";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::EmptyProfile: return "EmptyProfile";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::DegenerateConditional: return "DegenerateConditional";
    case ErrorKind::UnsupportedRuleForFormat: return "UnsupportedRuleForFormat";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Ranking Ranking::identity(int m) {
  std::vector<AltId> ids(m);
  for (int i = 0; i < m; ++i) ids[i] = i;
  return Ranking(std::move(ids));
}

int Ranking::position_of(AltId id) const {
  for (int i = 0; i < size(); ++i)
    if (order[i] == id) return i;
  return -1;
}

bool Ranking::prefers(AltId a, AltId b) const {
  int pa = position_of(a);
  int pb = position_of(b);
  if (pa < 0 || pb < 0) fail(ErrorKind::AlienAlternative, "prefers: id outside ranking scope");
  return pa < pb;
}

std::vector<AltId> Ranking::sorted_scope() const {
  std::vector<AltId> s = order;
  std::sort(s.begin(), s.end());
  return s;
}

bool Ranking::same_scope(const Ranking& other) const {
  return sorted_scope() == other.sorted_scope();
}

Ranking restrict_to(const Ranking& r, const std::vector<AltId>& keep) {
  std::set<AltId> want(keep.begin(), keep.end());
  for (AltId id : want)
    if (!r.contains(id)) fail(ErrorKind::AlienAlternative, "restrict: id not in ranking scope");
  Ranking out;
  out.order.reserve(want.size());
  for (AltId id : r.order)
    if (want.count(id)) out.order.push_back(id);
  return out;
}

int kendall_distance(const Ranking& a, const Ranking& b) {
  if (!a.same_scope(b)) fail(ErrorKind::ScopeMismatch, "kendall_distance: scopes differ");
  const int n = a.size();
  // positions of a's elements inside b
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = b.position_of(a.order[i]);
  int d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (seq[i] > seq[j]) ++d;
  return d;
}

namespace {

ReportKind parse_kind(const std::string& s, int& t) {
  t = 0;
  if (s == "none") return ReportKind::None;
  if (s == "top") return ReportKind::Top;
  if (s == "rank") return ReportKind::Rank;
  if (s.rfind("approval", 0) == 0 && s.size() > 8) {
    t = 0;
    for (size_t i = 8; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail(ErrorKind::ParseError, "bad approval size in format tag: " + s);
      t = t * 10 + (s[i] - '0');
    }
    if (t < 1) fail(ErrorKind::ParseError, "approval size must be >= 1: " + s);
    return ReportKind::Approval;
  }
  fail(ErrorKind::ParseError, "unknown elicitation kind: " + s);
}

std::string kind_tag(ReportKind k, int t) {
  switch (k) {
    case ReportKind::None: return "none";
    case ReportKind::Top: return "top";
    case ReportKind::Rank: return "rank";
    case ReportKind::Approval: return "approval" + std::to_string(t);
  }
  return "?";
}

}  // namespace

ElicitationFormat parse_format_tag(const std::string& tag) {
  auto dash = tag.find('-');
  if (dash == std::string::npos) fail(ErrorKind::ParseError, "format tag needs vote-prediction parts: " + tag);
  ElicitationFormat fmt;
  fmt.vote_kind = parse_kind(tag.substr(0, dash), fmt.vote_t);
  fmt.prediction_kind = parse_kind(tag.substr(dash + 1), fmt.prediction_t);
  if (fmt.vote_kind == ReportKind::None)
    fail(ErrorKind::ParseError, "vote kind cannot be none: " + tag);
  return fmt;
}

std::string format_tag(const ElicitationFormat& fmt) {
  return kind_tag(fmt.vote_kind, fmt.vote_t) + "-" + kind_tag(fmt.prediction_kind, fmt.prediction_t);
}

const std::vector<std::string>& canonical_format_tags() {
  static const std::vector<std::string> tags = {
      "top-none",     "top-top",  "top-approval3",
      "top-rank",     "approval2-approval2", "approval3-rank",
      "rank-none",    "rank-top", "rank-rank",
  };
  return tags;
}

Report top_report(AltId id) { return Report{ReportKind::Top, {id}}; }

Report approval_report(std::vector<AltId> ids) {
  std::sort(ids.begin(), ids.end());
  return Report{ReportKind::Approval, std::move(ids)};
}

Report rank_report(std::vector<AltId> order) {
  return Report{ReportKind::Rank, std::move(order)};
}

Report none_report() { return Report{}; }

namespace {

void validate_payload(const Report& rep, ReportKind kind, int t,
                      const std::vector<AltId>& subset, const char* what) {
  if (rep.kind != kind)
    fail(ErrorKind::PayloadShapeMismatch, std::string(what) + ": payload kind does not match format");
  const int k = static_cast<int>(subset.size());
  std::set<AltId> members(subset.begin(), subset.end());
  std::set<AltId> seen;
  for (AltId id : rep.ids) {
    if (!members.count(id))
      fail(ErrorKind::AlienAlternative, std::string(what) + ": id " + std::to_string(id) + " not in subset");
    if (!seen.insert(id).second)
      fail(ErrorKind::PayloadShapeMismatch, std::string(what) + ": duplicate id " + std::to_string(id));
  }
  switch (kind) {
    case ReportKind::None:
      if (!rep.ids.empty()) fail(ErrorKind::PayloadShapeMismatch, std::string(what) + ": none payload must be empty");
      break;
    case ReportKind::Top:
      if (rep.ids.size() != 1) fail(ErrorKind::PayloadShapeMismatch, std::string(what) + ": top payload needs one id");
      break;
    case ReportKind::Approval:
      if (t < 1 || t >= k) fail(ErrorKind::PayloadShapeMismatch, std::string(what) + ": approval size must satisfy 1 <= t < k");
      if (static_cast<int>(rep.ids.size()) != t)
        fail(ErrorKind::PayloadShapeMismatch, std::string(what) + ": approval payload needs exactly " + std::to_string(t) + " ids");
      break;
    case ReportKind::Rank:
      if (static_cast<int>(rep.ids.size()) != k)
        fail(ErrorKind::PayloadShapeMismatch, std::string(what) + ": rank payload must order the whole subset");
      break;
  }
}

}  // namespace

const Ballot& validate_ballot(const Ballot& b, const SubsetPlan& plan) {
  if (plan.subsets.empty()) fail(ErrorKind::EmptyProfile, "validate_ballot: empty plan");
  if (b.subset_id < 0 || b.subset_id >= plan.subset_count())
    fail(ErrorKind::SubsetOutOfRange, "ballot references subset " + std::to_string(b.subset_id));
  const auto& subset = plan.subsets[b.subset_id];
  validate_payload(b.vote, b.format.vote_kind, b.format.vote_t, subset, "vote");
  validate_payload(b.prediction, b.format.prediction_kind, b.format.prediction_t, subset, "prediction");
  return b;
}

}  // namespace spvote
