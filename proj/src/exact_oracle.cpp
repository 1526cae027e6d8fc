#include "spvote/exact_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "spvote/parallel.hpp"
#include "spvote/rng.hpp"

namespace spvote {

double mallows_normalizer(double phi, int m) {
  if (!(phi > 0.0) || phi > 1.0) fail(ErrorKind::InvalidDispersion, "Z: phi must be in (0, 1]");
  if (m < 0) fail(ErrorKind::Config, "Z: m must be >= 0");
  double z = 1.0;
  double term = 1.0;  // 1 + phi + ... + phi^(i-1), built incrementally
  double pw = 1.0;
  for (int i = 2; i <= m; ++i) {
    pw *= phi;
    term += pw;
    z *= term;
  }
  return z;
}

double log_mallows_normalizer(double phi, int m) {
  if (!(phi > 0.0) || phi > 1.0) fail(ErrorKind::InvalidDispersion, "Z: phi must be in (0, 1]");
  if (m < 0) fail(ErrorKind::Config, "Z: m must be >= 0");
  double lz = 0.0;
  double term = 1.0, pw = 1.0;
  for (int i = 2; i <= m; ++i) {
    pw *= phi;
    term += pw;
    lz += std::log(term);
  }
  return lz;
}

void MixtureSensor::validate() const {
  if (!(p >= 0.0) || !(p <= 1.0)) fail(ErrorKind::Config, "sensor: p must be in [0, 1]");
  if (!(phi_e > 0.0) || phi_e > 1.0 || !(phi_ne > 0.0) || phi_ne > 1.0)
    fail(ErrorKind::InvalidDispersion, "sensor: each phi must be in (0, 1]");
}

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<std::vector<AltId>> enumerate_orders(std::vector<AltId> ids) {
  std::sort(ids.begin(), ids.end());
  std::vector<std::vector<AltId>> out;
  do {
    out.push_back(ids);
  } while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

void guard_full(int m) {
  if (m > kMaxFullEnum)
    fail(ErrorKind::InstanceTooLarge,
         "exact oracle enumerates m! full rankings; m <= " + std::to_string(kMaxFullEnum));
}

void guard_partial(int k) {
  if (k > kMaxPartialEnum)
    fail(ErrorKind::InstanceTooLarge,
         "exact oracle enumerates k! partial rankings; k <= " + std::to_string(kMaxPartialEnum));
}

int distance_between(const std::vector<int>& pos_a, const std::vector<AltId>& order_b) {
  int d = 0;
  const int n = static_cast<int>(order_b.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pos_a[order_b[i]] > pos_a[order_b[j]]) ++d;
  return d;
}

// Everything that depends only on (m, k): the full permutation list, pairwise
// distances, and the restriction index of each full ranking.
struct EnumTables {
  int m, k;
  std::vector<std::vector<AltId>> perms;     // m! full orders of 0..m-1
  std::vector<Ranking> sigmas;               // k! orders of 0..k-1
  std::vector<int> restriction;              // perm index -> sigma index
  std::vector<uint8_t> dist;                 // m! x m! kendall distances
  int identity_index = 0;

  EnumTables(int m_, int k_) : m(m_), k(k_) {
    guard_full(m);
    guard_partial(k);
    std::vector<AltId> ids(m);
    for (int i = 0; i < m; ++i) ids[i] = i;
    perms = enumerate_orders(ids);
    std::vector<AltId> sub(k);
    for (int i = 0; i < k; ++i) sub[i] = i;
    for (auto& order : enumerate_orders(sub)) sigmas.emplace_back(order);

    const int nfull = static_cast<int>(perms.size());
    std::vector<std::vector<int>> pos(nfull, std::vector<int>(m));
    for (int i = 0; i < nfull; ++i)
      for (int j = 0; j < m; ++j) pos[i][perms[i][j]] = j;

    restriction.resize(nfull);
    for (int i = 0; i < nfull; ++i) {
      std::vector<AltId> restricted;
      restricted.reserve(k);
      for (AltId x : perms[i])
        if (x < k) restricted.push_back(x);
      restriction[i] = sigma_index(restricted);
      if (perms[i] == ids) identity_index = i;
    }

    dist.resize(static_cast<size_t>(nfull) * nfull);
    parallel_for(nfull, [&](int64_t i) {
      for (int j = 0; j < nfull; ++j)
        dist[static_cast<size_t>(i) * nfull + j] =
            static_cast<uint8_t>(distance_between(pos[i], perms[j]));
    });
  }

  int sigma_index(const std::vector<AltId>& order) const {
    for (size_t s = 0; s < sigmas.size(); ++s)
      if (sigmas[s].order == order) return static_cast<int>(s);
    fail(ErrorKind::AlienAlternative, "sigma not found");
  }
};

}  // namespace

std::vector<Ranking> all_partial_rankings(std::vector<AltId> ids) {
  guard_partial(static_cast<int>(ids.size()));
  std::vector<Ranking> out;
  for (auto& order : enumerate_orders(std::move(ids))) out.emplace_back(order);
  return out;
}

namespace {

double mixture_weight(const MixtureSensor& sensor, int d, double ze, double zne) {
  return sensor.p * std::pow(sensor.phi_e, d) / ze +
         (1.0 - sensor.p) * std::pow(sensor.phi_ne, d) / zne;
}

}  // namespace

double partial_likelihood(const Ranking& sigma, const Ranking& pi_star, double phi) {
  MixtureSensor sensor{1.0, phi, phi};
  return partial_likelihood(sigma, pi_star, sensor);
}

double partial_likelihood(const Ranking& sigma, const Ranking& pi_star,
                          const MixtureSensor& sensor) {
  sensor.validate();
  const int m = pi_star.size();
  guard_full(m);
  for (AltId id : sigma.order)
    if (!pi_star.contains(id))
      fail(ErrorKind::AlienAlternative, "partial_likelihood: sigma outside pi_star scope");

  const double ze = mallows_normalizer(sensor.phi_e, m);
  const double zne = mallows_normalizer(sensor.phi_ne, m);
  std::vector<int> pos_star(m);
  for (int i = 0; i < m; ++i) pos_star[pi_star.order[i]] = i;

  // sum over all full rankings whose restriction to sigma's scope equals sigma
  std::vector<AltId> ids = pi_star.order;
  std::sort(ids.begin(), ids.end());
  std::set<AltId> scope(sigma.order.begin(), sigma.order.end());
  double total = 0.0;
  std::vector<AltId> perm = ids;
  do {
    std::vector<AltId> restricted;
    for (AltId x : perm)
      if (scope.count(x)) restricted.push_back(x);
    if (restricted != sigma.order) continue;
    int d = 0;
    const int n = static_cast<int>(perm.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (pos_star[perm[i]] > pos_star[perm[j]]) ++d;
    total += mixture_weight(sensor, d, ze, zne);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

PartialOracle build_partial_oracle(int m, int k, const MixtureSensor& sensor) {
  sensor.validate();
  if (k < 1 || k > m) fail(ErrorKind::Config, "oracle: need 1 <= k <= m");
  EnumTables tables(m, k);
  const int nfull = static_cast<int>(tables.perms.size());
  const int kf = static_cast<int>(tables.sigmas.size());
  const double ze = mallows_normalizer(sensor.phi_e, m);
  const double zne = mallows_normalizer(sensor.phi_ne, m);

  // mixture probability lookup by distance
  const int dmax = m * (m - 1) / 2;
  std::vector<double> by_distance(dmax + 1);
  for (int d = 0; d <= dmax; ++d) by_distance[d] = mixture_weight(sensor, d, ze, zne);

  // PS[s][pi] = Pr_s(sigma_s | pi) = sum over pi' restricting to sigma_s of mix(pi'|pi)
  std::vector<std::vector<double>> PS(kf, std::vector<double>(nfull, 0.0));
  parallel_for(nfull, [&](int64_t pi) {
    for (int pp = 0; pp < nfull; ++pp)
      PS[tables.restriction[pp]][pi] +=
          by_distance[tables.dist[static_cast<size_t>(pp) * nfull + pi]];
  });

  PartialOracle oracle;
  oracle.m = m;
  oracle.k = k;
  oracle.sensor = sensor;
  oracle.sigmas = tables.sigmas;
  oracle.star = tables.restriction[tables.identity_index];

  oracle.f.resize(kf);
  for (int s = 0; s < kf; ++s) oracle.f[s] = PS[s][tables.identity_index];

  // posterior over partial ground truths: Pr_g(st | s) with uniform prior
  oracle.post.assign(kf, std::vector<double>(kf, 0.0));
  for (int s = 0; s < kf; ++s) {
    double norm = 0.0;
    for (int pi = 0; pi < nfull; ++pi) norm += PS[s][pi];
    for (int pi = 0; pi < nfull; ++pi)
      oracle.post[tables.restriction[pi]][s] += PS[s][pi] / norm;
  }

  // Pr_s(sigma' | sigma_tilde) = (k!/m!) sum over pi restricting to sigma_tilde
  std::vector<std::vector<double>> sensor_partial(kf, std::vector<double>(kf, 0.0));
  const double scale = static_cast<double>(kf) / nfull;
  for (int pi = 0; pi < nfull; ++pi)
    for (int sp = 0; sp < kf; ++sp)
      sensor_partial[sp][tables.restriction[pi]] += PS[sp][pi] * scale;

  // g[s'][s] = sum_st post[st][s] Pr_s(s' | st)
  oracle.g.assign(kf, std::vector<double>(kf, 0.0));
  for (int sp = 0; sp < kf; ++sp)
    for (int s = 0; s < kf; ++s) {
      double total = 0.0;
      for (int st = 0; st < kf; ++st) total += oracle.post[st][s] * sensor_partial[sp][st];
      oracle.g[sp][s] = total;
    }
  return oracle;
}

int PartialOracle::index_of(const Ranking& sigma) const {
  for (size_t s = 0; s < sigmas.size(); ++s)
    if (sigmas[s] == sigma) return static_cast<int>(s);
  fail(ErrorKind::AlienAlternative, "oracle: sigma not in table");
}

std::vector<double> posterior_partial(const Ranking& sigma_i, int m,
                                      const MixtureSensor& sensor) {
  sensor.validate();
  guard_full(m);
  guard_partial(sigma_i.size());
  // likelihood of sigma_i under every partial ground truth, via Bayes over m!
  const Ranking pi_star = Ranking::identity(m);
  // relabel: arbitrary scopes reduce to the canonical instance by symmetry of
  // the uniform prior, but the direct sum is cheap at the guard sizes
  std::vector<Ranking> sigmas = all_partial_rankings(sigma_i.sorted_scope());
  const int kf = static_cast<int>(sigmas.size());

  std::vector<AltId> ids(m);
  for (int i = 0; i < m; ++i) ids[i] = i;
  std::set<AltId> scope(sigma_i.order.begin(), sigma_i.order.end());
  for (AltId id : scope)
    if (id < 0 || id >= m) fail(ErrorKind::AlienAlternative, "posterior: scope outside [0, m)");

  const double ze = mallows_normalizer(sensor.phi_e, m);
  const double zne = mallows_normalizer(sensor.phi_ne, m);

  // enumerate full ground truths; accumulate Pr_s(sigma_i | pi~) per restriction
  std::vector<double> joint(kf, 0.0);
  std::vector<AltId> gt = ids;
  do {
    Ranking pi_tilde{std::vector<AltId>(gt)};
    // restriction index of pi_tilde
    std::vector<AltId> restricted;
    for (AltId x : gt)
      if (scope.count(x)) restricted.push_back(x);
    int st = -1;
    for (int s = 0; s < kf; ++s)
      if (sigmas[s].order == restricted) { st = s; break; }
    joint[st] += partial_likelihood(sigma_i, pi_tilde, sensor);
  } while (std::next_permutation(gt.begin(), gt.end()));

  double norm = 0.0;
  for (double v : joint) norm += v;
  if (norm <= 0.0) fail(ErrorKind::DegenerateConditional, "posterior: zero evidence");
  for (double& v : joint) v /= norm;
  return joint;
}

double pr_o(const Ranking& sigma_prime, const Ranking& sigma_i, int m,
            const MixtureSensor& sensor) {
  if (sigma_prime.sorted_scope() != sigma_i.sorted_scope())
    fail(ErrorKind::ScopeMismatch, "pr_o: rankings must share a subset");
  std::vector<double> post = posterior_partial(sigma_i, m, sensor);
  std::vector<Ranking> sigmas = all_partial_rankings(sigma_i.sorted_scope());
  const int kf = static_cast<int>(sigmas.size());
  const double scale = static_cast<double>(factorial(sigmas[0].size())) / factorial(m);

  // Pr_s(sigma' | sigma_tilde) = (k!/m!) sum_{pi |> sigma_tilde} Pr_s(sigma' | pi)
  double total = 0.0;
  std::vector<AltId> ids(m);
  for (int i = 0; i < m; ++i) ids[i] = i;
  std::set<AltId> scope(sigma_i.order.begin(), sigma_i.order.end());
  for (int st = 0; st < kf; ++st) {
    if (post[st] == 0.0) continue;
    double sensor_sum = 0.0;
    std::vector<AltId> pi = ids;
    do {
      std::vector<AltId> restricted;
      for (AltId x : pi)
        if (scope.count(x)) restricted.push_back(x);
      if (restricted != sigmas[st].order) continue;
      sensor_sum += partial_likelihood(sigma_prime, Ranking{std::vector<AltId>(pi)}, sensor);
    } while (std::next_permutation(pi.begin(), pi.end()));
    total += post[st] * sensor_sum * scale;
  }
  return total;
}

std::vector<double> prediction_normalized_votes(const std::vector<double>& f,
                                                const std::vector<std::vector<double>>& g) {
  const int kf = static_cast<int>(f.size());
  std::vector<double> v(kf, 0.0);
  for (int s = 0; s < kf; ++s) {
    double total = 0.0;
    for (int sp = 0; sp < kf; ++sp) {
      if (!(g[s][sp] > 0.0))
        fail(ErrorKind::DegenerateConditional, "prediction_normalized_votes: zero g-cell");
      total += g[sp][s] / g[s][sp];
    }
    v[s] = f[s] * total;
  }
  return v;
}

int sp_full(const std::vector<double>& f, const std::vector<std::vector<double>>& g,
            uint64_t tie_seed) {
  std::vector<double> v = prediction_normalized_votes(f, g);
  double best = v[0];
  for (double x : v) best = std::max(best, x);
  std::vector<int> winners;
  for (int s = 0; s < static_cast<int>(v.size()); ++s)
    if (v[s] == best) winners.push_back(s);
  if (winners.size() == 1) return winners[0];
  Rng rng = derive_rng(tie_seed, 0x5bf);
  return winners[rng.below(winners.size())];
}

void TheoryParams::validate() const {
  if (!(p > 0.0) || !(p < 1.0)) fail(ErrorKind::Config, "theory: p must be in (0, 1)");
  if (!(phi_e > 0.0) || !(phi_e <= phi_ne) || !(phi_ne <= 1.0))
    fail(ErrorKind::InvalidDispersion, "theory: need 0 < phi_e <= phi_ne <= 1");
  if (k < 2 || k > m) fail(ErrorKind::Config, "theory: need 2 <= k <= m");
  if (!(delta > 0.0) || !(delta < 1.0)) fail(ErrorKind::Config, "theory: delta in (0, 1)");
}

double AssumptionCheck::ratio() const { return std::exp(log_lhs - log_rhs); }

AssumptionCheck check_assumption(const TheoryParams& tp) {
  tp.validate();
  AssumptionCheck out;
  out.log_lhs = 2.0 * (std::log(tp.p) - std::log1p(-tp.p));
  out.log_rhs = std::log(2.0) +
                2.0 * (log_mallows_normalizer(tp.phi_ne, tp.m) -
                       log_mallows_normalizer(tp.phi_e, tp.m)) +
                log_mallows_normalizer(tp.phi_ne, tp.k) +
                0.5 * tp.k * (tp.k - 1) * std::log(tp.phi_e);
  out.pass = out.log_lhs >= out.log_rhs;
  return out;
}

bool check_separation(const TheoryParams& tp) {
  tp.validate();
  PartialOracle oracle = build_partial_oracle(tp.m, tp.k, {tp.p, tp.phi_e, tp.phi_ne});
  std::vector<double> v = prediction_normalized_votes(oracle.f, oracle.g);
  double best_other = 0.0;
  for (int s = 0; s < static_cast<int>(v.size()); ++s)
    if (s != oracle.star) best_other = std::max(best_other, v[s]);
  return v[oracle.star] >= 2.0 * best_other;
}

long long sample_complexity(const TheoryParams& tp) {
  tp.validate();
  const double c = 0.5 * tp.k * (tp.k - 1);
  const double mu =
      tp.p * std::exp(log_mallows_normalizer(tp.phi_e, tp.m - tp.k) -
                      log_mallows_normalizer(tp.phi_e, tp.m) + c * std::log(tp.phi_e)) +
      (1.0 - tp.p) * std::exp(log_mallows_normalizer(tp.phi_ne, tp.m - tp.k) -
                              log_mallows_normalizer(tp.phi_ne, tp.m) + c * std::log(tp.phi_ne));
  const double bound = factorial(tp.k) *
                       std::sqrt(10.0 * tp.k * std::log(2.0 * tp.k / tp.delta) / mu);
  return static_cast<long long>(std::ceil(bound));
}

double recovery_experiment(const TheoryParams& tp, long long n, int trials, uint64_t seed) {
  tp.validate();
  if (n < 1 || trials < 1) fail(ErrorKind::Config, "recovery: need n >= 1 and trials >= 1");
  PartialOracle oracle = build_partial_oracle(tp.m, tp.k, {tp.p, tp.phi_e, tp.phi_ne});
  const int kf = static_cast<int>(oracle.f.size());

  // cumulative distributions for the vote draw and per-vote prediction draw
  std::vector<double> cum_f(kf);
  double acc = 0.0;
  for (int s = 0; s < kf; ++s) cum_f[s] = (acc += oracle.f[s]);
  std::vector<std::vector<double>> cum_g(kf, std::vector<double>(kf));
  for (int s = 0; s < kf; ++s) {
    acc = 0.0;
    for (int sp = 0; sp < kf; ++sp) cum_g[s][sp] = (acc += oracle.g[sp][s]);
  }
  auto draw = [](const std::vector<double>& cum, Rng& rng) {
    const double u = rng.uniform01() * cum.back();
    for (int i = 0; i < static_cast<int>(cum.size()); ++i)
      if (u < cum[i]) return i;
    return static_cast<int>(cum.size()) - 1;
  };

  std::vector<char> hit(trials, 0);
  parallel_for(trials, [&](int64_t t) {
    Rng rng = derive_rng(seed, static_cast<uint64_t>(t));
    std::vector<long long> votes(kf, 0);
    std::vector<std::vector<long long>> preds(kf, std::vector<long long>(kf, 0));
    for (long long i = 0; i < n; ++i) {
      const int s = draw(cum_f, rng);
      const int sp = draw(cum_g[s], rng);
      ++votes[s];
      ++preds[sp][s];
    }
    std::vector<double> f_hat(kf);
    for (int s = 0; s < kf; ++s) f_hat[s] = static_cast<double>(votes[s]) / n;
    // empirical conditionals, smoothed so every cell stays positive
    std::vector<std::vector<double>> g_hat(kf, std::vector<double>(kf));
    for (int s = 0; s < kf; ++s)
      for (int sp = 0; sp < kf; ++sp)
        g_hat[sp][s] = (preds[sp][s] + 1.0 / kf) / (votes[s] + 1.0);
    hit[t] = sp_full(f_hat, g_hat, mix_seed(seed, static_cast<uint64_t>(t))) == oracle.star;
  });
  long long wins = 0;
  for (char h : hit) wins += h;
  return static_cast<double>(wins) / trials;
}

}  // namespace spvote
