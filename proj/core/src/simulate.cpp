#include "netlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "netlab/errors.hpp"

namespace netlab {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fenwick tree over node weights with prefix-sum inversion, O(log n) per
// update and per draw.
class WeightTree {
 public:
  explicit WeightTree(std::size_t capacity) : tree_(capacity + 1, 0.0) {}

  void add(std::size_t i, double delta) {
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  double total() const {
    double s = 0.0;
    for (std::size_t k = tree_.size() - 1; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }

  // Smallest index i with prefix_sum(i) > r, for r in [0, total).
  std::size_t find(double r) const {
    std::size_t pos = 0;
    std::size_t mask = 1;
    while (mask * 2 < tree_.size()) mask *= 2;
    for (; mask > 0; mask /= 2) {
      const std::size_t next = pos + mask;
      if (next < tree_.size() && tree_[next] <= r) {
        r -= tree_[next];
        pos = next;
      }
    }
    return pos;  // 0-based node index
  }

 private:
  std::vector<double> tree_;
};

double aging_decay(const SimConfig& cfg, std::int64_t age) {
  if (cfg.aging_decay == AgingKind::Power) {
    return std::pow(static_cast<double>(age) + 1.0, -cfg.aging_param);
  }
  return std::exp(-cfg.aging_param * static_cast<double>(age));
}

}  // namespace

std::size_t seed_network_size(const SimConfig& cfg) { return cfg.m + 1; }

std::vector<std::size_t> arrival_schedule(const ArrivalProcess& arrival, std::size_t total,
                                          std::size_t base) {
  std::size_t steps = arrival.steps == 0 ? total : arrival.steps;
  if (steps == 0) steps = 1;

  // Cumulative-target rounding keeps per-step arrivals >= 0 and the total exact.
  auto cumulative = [&](std::size_t k) -> double {
    const double f = static_cast<double>(k) / static_cast<double>(steps);
    switch (arrival.kind) {
      case ArrivalKind::ConstantRate:
        return static_cast<double>(total) * f;
      case ArrivalKind::Exponential: {
        if (base > 0) {
          // population base * g^k, geometric from base to base + total
          const double ratio = (static_cast<double>(base) + static_cast<double>(total)) /
                               static_cast<double>(base);
          return static_cast<double>(base) * (std::pow(ratio, f) - 1.0);
        }
        const double lam = arrival.rate * static_cast<double>(steps);
        return static_cast<double>(total) * std::expm1(lam * f) / std::expm1(lam);
      }
      case ArrivalKind::Polynomial:
        return static_cast<double>(total) * std::pow(f, arrival.exponent);
    }
    return 0.0;
  };

  std::vector<std::size_t> out(steps, 0);
  std::size_t prev = 0;
  for (std::size_t k = 1; k <= steps; ++k) {
    std::size_t c = k == steps ? total
                               : static_cast<std::size_t>(std::llround(cumulative(k)));
    c = std::min(c, total);
    c = std::max(c, prev);
    out[k - 1] = c - prev;
    prev = c;
  }
  return out;
}

std::vector<double> attachment_probabilities(const std::vector<std::uint64_t>& in_degrees,
                                             const std::vector<double>& fitness,
                                             const std::vector<std::int64_t>& ages,
                                             const SimConfig& cfg) {
  if (in_degrees.empty()) throw ConfigError("attachment_probabilities: empty node set");
  std::vector<double> w(in_degrees.size());
  const double smooth = static_cast<double>(cfg.m);
  for (std::size_t i = 0; i < w.size(); ++i) {
    // in-degree + m is the node's total degree (every node follows m others);
    // the additive m keeps new nodes reachable and pins the BA in-degree
    // exponent at 3 independent of m.
    double v = static_cast<double>(in_degrees[i]) + smooth;
    if (cfg.model == SimModel::Fitness) {
      v *= fitness.empty() ? 1.0 : fitness[i];
    } else if (cfg.model == SimModel::Aging) {
      v *= aging_decay(cfg, ages.empty() ? 0 : ages[i]);
    }
    w[i] = v;
  }
  double total = 0.0;
  for (double v : w) total += v;
  if (total <= 0.0) throw NumericError("attachment_probabilities: zero total weight");
  for (double& v : w) v /= total;
  return w;
}

TemporalGraph simulate(const SimConfig& cfg) {
  if (cfg.m < 1) throw ConfigError("simulate: m must be >= 1");
  const std::size_t n0 = seed_network_size(cfg);
  if (cfg.n_final <= cfg.m || cfg.n_final < n0) {
    throw ConfigError("simulate: n_final must exceed m (need at least m + 1 nodes)");
  }
  if (cfg.model == SimModel::Aging && cfg.aging_param < 0.0) {
    throw ConfigError("simulate: aging parameter must be >= 0");
  }

  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = cfg.n_final;

  std::vector<std::uint64_t> indeg(n, 0);
  std::vector<double> fitness;
  std::vector<Timestamp> birth(n, 0);
  auto draw_fitness = [&]() -> double {
    if (cfg.fitness_distribution == FitnessKind::Uniform) {
      return uniform01(rng);
    }
    return -cfg.fitness_mean * std::log1p(-uniform01(rng));
  };
  if (cfg.model == SimModel::Fitness) {
    fitness.resize(n);
    for (std::size_t i = 0; i < n; ++i) fitness[i] = draw_fitness();
  }

  std::vector<FollowEdge> edges;
  std::size_t alive = n0;  // nodes 0..alive-1 exist

  // Seed clique: all ordered pairs among the first n0 nodes at step 0.
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n0; ++j) {
      if (i == j) continue;
      edges.push_back({static_cast<UserId>(i + 1), static_cast<UserId>(j + 1), 0});
      ++indeg[j];
    }
  }

  // BA and fitness weights evolve only on edge insertion, so a Fenwick tree
  // tracks them incrementally. Aging re-weights every node each step and is
  // rebuilt per step instead.
  const bool incremental = cfg.model != SimModel::Aging;
  WeightTree tree(n);
  auto base_weight = [&](std::size_t i) {
    double v = static_cast<double>(indeg[i]) + static_cast<double>(cfg.m);
    if (cfg.model == SimModel::Fitness) v *= fitness[i];
    return v;
  };
  if (incremental) {
    for (std::size_t i = 0; i < alive; ++i) tree.add(i, base_weight(i));
  }

  const auto schedule = arrival_schedule(cfg.arrival, n - n0, n0);
  std::vector<std::size_t> chosen;
  chosen.reserve(cfg.m);
  std::vector<double> step_cum;  // aging model per-step cumulative weights

  Timestamp step = 0;
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    step = static_cast<Timestamp>(s + 1);
    if (schedule[s] == 0) continue;

    if (!incremental) {
      step_cum.resize(alive);
      double acc = 0.0;
      for (std::size_t i = 0; i < alive; ++i) {
        acc += base_weight(i) * aging_decay(cfg, step - birth[i]);
        step_cum[i] = acc;
      }
    }

    for (std::size_t a = 0; a < schedule[s]; ++a) {
      const std::size_t newcomer = alive;
      birth[newcomer] = step;
      chosen.clear();
      const std::size_t targets = std::min(cfg.m, alive);
      while (chosen.size() < targets) {
        std::size_t pick;
        if (incremental) {
          pick = tree.find(uniform01(rng) * tree.total());
        } else {
          const double r = uniform01(rng) * step_cum[alive - 1];
          pick = static_cast<std::size_t>(
              std::lower_bound(step_cum.begin(), step_cum.begin() + static_cast<std::ptrdiff_t>(alive), r) -
              step_cum.begin());
          pick = std::min(pick, alive - 1);
        }
        if (pick >= alive || std::find(chosen.begin(), chosen.end(), pick) != chosen.end()) {
          continue;  // resample: targets are distinct
        }
        chosen.push_back(pick);
      }
      for (std::size_t t : chosen) {
        edges.push_back({static_cast<UserId>(newcomer + 1), static_cast<UserId>(t + 1),
                         step * kStepSeconds});
        ++indeg[t];
        if (incremental) {
          tree.add(t, cfg.model == SimModel::Fitness ? fitness[t] : 1.0);
        }
      }
      ++alive;
      if (incremental) {
        tree.add(newcomer, base_weight(newcomer));
      } else {
        // same-step arrivals may attach to this node too
        const double w = base_weight(newcomer) * aging_decay(cfg, 0);
        step_cum.push_back(0.0);
        step_cum[alive - 1] = step_cum[alive - 2] + w;
      }
    }
  }

  std::vector<UserRecord> users(n);
  for (std::size_t i = 0; i < n; ++i) {
    users[i].id = static_cast<UserId>(i + 1);
    users[i].login = "u" + std::to_string(i + 1);
    users[i].created_at = birth[i] * kStepSeconds;  // birth is kept in step units
  }
  return build_graph(std::move(users), std::move(edges));
}

FmaGroundTruth fma_ground_truth(const SimConfig& cfg) {
  if (cfg.model != SimModel::BarabasiAlbert) return FmaGroundTruth::Unknown;
  switch (cfg.arrival.kind) {
    case ArrivalKind::ConstantRate:
    case ArrivalKind::Polynomial:
      return FmaGroundTruth::Present;
    case ArrivalKind::Exponential:
      return FmaGroundTruth::Absent;
  }
  return FmaGroundTruth::Unknown;
}

}  // namespace netlab
