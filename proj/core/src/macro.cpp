#include "netlab/macro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "netlab/errors.hpp"

namespace netlab {

namespace {

std::vector<std::uint64_t> in_degrees(const TemporalGraph& g) {
  std::vector<std::uint64_t> deg(g.node_count());
  for (std::uint32_t u = 0; u < g.node_count(); ++u) deg[u] = g.in_degree(u);
  return deg;
}

// Civil-calendar conversions on days since 1970-01-01 (Howard Hinnant's
// algorithms), so year bucketing never depends on libc TZ state.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int year_of(Timestamp t) {
  std::int64_t z = t / 86400;
  if (t < 0 && t % 86400 != 0) --z;
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return static_cast<int>(y + (m <= 2));
}

Timestamp year_start(int y) { return days_from_civil(y, 1, 1) * 86400; }

// Tail sum of the discrete power law, T(x) = sum_{k >= x} k^-gamma, by
// direct summation plus an Euler-Maclaurin remainder.
double power_tail(double gamma, double x) {
  constexpr int kDirectTerms = 64;
  double s = 0.0;
  double k = x;
  for (int i = 0; i < kDirectTerms; ++i, k += 1.0) s += std::pow(k, -gamma);
  // remainder from k onward
  s += std::pow(k, 1.0 - gamma) / (gamma - 1.0) - 0.5 * std::pow(k, -gamma) +
       gamma / 12.0 * std::pow(k, -gamma - 1.0);
  return s;
}

}  // namespace

DegreeHistogram degree_histogram(const TemporalGraph& g, Binning binning) {
  DegreeHistogram h;
  h.binning = binning;
  h.total_users = g.node_count();
  if (g.node_count() == 0) return h;

  const auto deg = in_degrees(g);
  if (binning == Binning::Exact) {
    std::map<std::uint64_t, std::size_t> counts;
    for (auto d : deg) ++counts[d];
    for (const auto& [d, c] : counts) h.bins.push_back({d, d, c});
  } else {
    // bin 0: degree 0; bin k>=1: [2^(k-1), 2^k - 1]
    std::map<std::uint64_t, std::size_t> counts;  // bin index -> count
    for (auto d : deg) {
      std::uint64_t idx = 0;
      if (d > 0) {
        idx = 1;
        while ((std::uint64_t{1} << idx) <= d) ++idx;
      }
      ++counts[idx];
    }
    for (const auto& [idx, c] : counts) {
      if (idx == 0) {
        h.bins.push_back({0, 0, c});
      } else {
        h.bins.push_back({std::uint64_t{1} << (idx - 1), (std::uint64_t{1} << idx) - 1, c});
      }
    }
  }
  return h;
}

PowerLawFit fit_power_law(const std::vector<std::uint64_t>& degrees) {
  std::vector<std::uint64_t> xs;
  xs.reserve(degrees.size());
  for (auto d : degrees) {
    if (d > 0) xs.push_back(d);
  }
  if (xs.size() < 50) {
    throw NumericError("fit_power_law: need >= 50 nonzero samples, have " +
                       std::to_string(xs.size()));
  }
  std::sort(xs.begin(), xs.end());
  if (xs.front() == xs.back()) {
    throw NumericError("fit_power_law: degenerate input, all degrees equal");
  }

  const std::size_t n = xs.size();
  std::vector<double> suffix_log(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    suffix_log[i] = suffix_log[i + 1] + std::log(static_cast<double>(xs[i]));
  }

  PowerLawFit best;
  bool found = false;
  std::size_t i = 0;
  while (i < n) {
    const std::uint64_t xmin = xs[i];
    const std::size_t n_tail = n - i;
    std::size_t next = i;
    while (next < n && xs[next] == xmin) ++next;
    if (n_tail < 50) break;

    // MLE with the continuous correction for a discrete tail.
    const double shift = static_cast<double>(xmin) - 0.5;
    const double denom = suffix_log[i] - static_cast<double>(n_tail) * std::log(shift);
    if (denom <= 0.0) {
      i = next;
      continue;
    }
    const double gamma = 1.0 + static_cast<double>(n_tail) / denom;

    // KS distance between the empirical tail and the fitted CCDF
    // P(X >= x) = ((x - 0.5) / (xmin - 0.5))^-(gamma - 1).
    double ks = 0.0;
    std::size_t j = i;
    while (j < n) {
      std::size_t j2 = j;
      while (j2 < n && xs[j2] == xs[j]) ++j2;
      const double x = static_cast<double>(xs[j]);
      const double model = std::pow((x - 0.5) / shift, -(gamma - 1.0));
      const double emp_ge = static_cast<double>(n - j) / static_cast<double>(n_tail);
      const double emp_gt = static_cast<double>(n - j2) / static_cast<double>(n_tail);
      ks = std::max(ks, std::abs(emp_ge - model));
      ks = std::max(ks, std::abs(emp_gt - model));
      j = j2;
    }

    if (!found || ks < best.ks_distance) {
      best = PowerLawFit{gamma, xmin, ks, n_tail};
      found = true;
    }
    i = next;
  }
  if (!found) {
    throw NumericError("fit_power_law: no candidate cutoff leaves >= 50 tail samples");
  }
  return best;
}

PowerLawFit fit_power_law(const TemporalGraph& g) { return fit_power_law(in_degrees(g)); }

std::vector<std::uint64_t> sample_power_law(double gamma, std::uint64_t xmin, std::size_t n,
                                            std::uint64_t seed) {
  if (gamma <= 1.0 || xmin == 0) throw ConfigError("sample_power_law: need gamma > 1, xmin >= 1");
  std::mt19937_64 rng(seed);
  const double total = power_tail(gamma, static_cast<double>(xmin));
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // 53-bit uniform in [0, 1)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double target = (1.0 - u) * total;  // find smallest x with T(x+1) <= target... inverted below
    // smallest x >= xmin such that T(x + 1) <= target, i.e. P(X <= x) >= u.
    std::uint64_t lo = xmin, hi = xmin;
    while (power_tail(gamma, static_cast<double>(hi + 1)) > target) {
      lo = hi + 1;
      hi = hi * 2;
    }
    if (hi > xmin) {
      // invariant: T(lo) > target possible; binary search on x in [lo-? ..]
      std::uint64_t a = lo, b = hi;
      while (a < b) {
        const std::uint64_t mid = a + (b - a) / 2;
        if (power_tail(gamma, static_cast<double>(mid + 1)) <= target) {
          b = mid;
        } else {
          a = mid + 1;
        }
      }
      out.push_back(a);
    } else {
      out.push_back(xmin);
    }
  }
  return out;
}

CohortCurveSet cohort_curves(const TemporalGraph& g, const CohortOptions& opts) {
  if (g.node_count() == 0) throw DataError("cohort_curves: empty graph");
  const Timestamp horizon = g.max_timestamp();

  // Assign users with at least one follower to cohorts.
  std::map<std::string, std::vector<std::uint32_t>> members;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    if (g.in_degree(u) == 0) continue;  // zero-follower users excluded
    const Timestamp join = g.user(u).created_at;
    std::string label;
    if (opts.boundaries.empty()) {
      label = std::to_string(year_of(join));
    } else {
      std::size_t idx = static_cast<std::size_t>(
          std::upper_bound(opts.boundaries.begin(), opts.boundaries.end(), join) -
          opts.boundaries.begin());
      char buf[8];
      std::snprintf(buf, sizeof(buf), "c%02zu", idx);
      label = buf;
    }
    members[label].push_back(u);
  }
  for (auto it = members.begin(); it != members.end();) {
    if (it->second.size() < opts.min_cohort_size) {
      it = members.erase(it);
    } else {
      ++it;
    }
  }
  if (members.empty()) {
    throw DataError("cohort_curves: no cohort meets the minimum size");
  }

  Timestamp earliest_join = horizon;
  for (const auto& [label, us] : members) {
    for (auto u : us) earliest_join = std::min(earliest_join, g.user(u).created_at);
  }
  std::int64_t step = opts.lifetime_step;
  if (step <= 0) {
    step = std::max<std::int64_t>((horizon - earliest_join) / 32, 1);
  }

  CohortCurveSet out;
  out.min_cohort_size = opts.min_cohort_size;
  for (const auto& [label, us] : members) {
    std::vector<CohortPoint> curve;
    for (std::int64_t life = step;; life += step) {
      double sum = 0.0;
      std::size_t n_obs = 0;
      for (auto u : us) {
        const Timestamp join = g.user(u).created_at;
        if (join + life > horizon) continue;  // not yet observable this long
        const auto times = g.in_times(u);
        const auto cnt = std::upper_bound(times.begin(), times.end(), join + life) -
                         times.begin();
        sum += static_cast<double>(cnt);
        ++n_obs;
      }
      if (n_obs < opts.min_cohort_size) break;
      curve.push_back({life, sum / static_cast<double>(n_obs)});
    }
    if (!curve.empty()) out.cohorts.emplace(label, std::move(curve));
  }
  if (out.cohorts.empty()) {
    throw DataError("cohort_curves: no cohort has any observable lifetime point");
  }
  return out;
}

std::vector<GrowthPoint> growth_curve(const TemporalGraph& g, std::int64_t period_seconds) {
  std::vector<GrowthPoint> out;
  if (g.node_count() == 0) return out;

  std::vector<Timestamp> joins;
  joins.reserve(g.node_count());
  for (const auto& u : g.users()) joins.push_back(u.created_at);
  std::sort(joins.begin(), joins.end());

  if (period_seconds <= 0) {
    const int y0 = year_of(joins.front());
    const int y1 = year_of(joins.back());
    for (int y = y0; y <= y1; ++y) {
      const Timestamp end = year_start(y + 1) - 1;
      const auto c = std::upper_bound(joins.begin(), joins.end(), end) - joins.begin();
      out.push_back({end, static_cast<std::size_t>(c)});
    }
  } else {
    const Timestamp t0 = joins.front();
    const std::int64_t periods = (joins.back() - t0) / period_seconds + 1;
    for (std::int64_t k = 0; k < periods; ++k) {
      const Timestamp end = t0 + (k + 1) * period_seconds - 1;
      const auto c = std::upper_bound(joins.begin(), joins.end(), end) - joins.begin();
      out.push_back({end, static_cast<std::size_t>(c)});
    }
  }
  return out;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Exponential: return "exponential";
    case Regime::SubExponential: return "sub_exponential";
    case Regime::SuperExponential: return "super_exponential";
  }
  return "unknown";
}

GrowthRegime classify_growth(const std::vector<GrowthPoint>& curve,
                             const GrowthClassifierConfig& cfg) {
  if (curve.size() < 5) throw DataError("classify_growth: need >= 5 points");
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].cumulative_users <= curve[i - 1].cumulative_users) {
      throw DataError("classify_growth: counts must be strictly increasing");
    }
  }

  const std::size_t n = curve.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = std::log(static_cast<double>(curve[i].cumulative_users));
  }

  // Second differences via successive ratios: exact geometric series yields
  // identical ratios and a concavity of exactly zero.
  double concavity = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r1 = std::log(static_cast<double>(curve[i + 1].cumulative_users) /
                               static_cast<double>(curve[i].cumulative_users));
    const double r0 = std::log(static_cast<double>(curve[i].cumulative_users) /
                               static_cast<double>(curve[i - 1].cumulative_users));
    concavity += r1 - r0;
  }
  concavity /= static_cast<double>(n - 2);

  // r^2 of log(count) against the period index.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
    syy += y[i] * y[i];
  }
  const double nn = static_cast<double>(n);
  const double cov = sxy - sx * sy / nn;
  const double vx = sxx - sx * sx / nn;
  const double vy = syy - sy * sy / nn;
  const double r2 = vy > 0 ? (cov * cov) / (vx * vy) : 1.0;

  GrowthRegime out;
  out.concavity_stat = concavity;
  out.log_fit_r2 = r2;
  if (concavity < -cfg.concavity_threshold) {
    out.classification = Regime::SubExponential;
  } else if (concavity > cfg.concavity_threshold) {
    out.classification = Regime::SuperExponential;
  } else {
    out.classification = Regime::Exponential;
  }
  return out;
}

std::string verdict_name(FmaVerdictKind v) {
  switch (v) {
    case FmaVerdictKind::Present: return "present";
    case FmaVerdictKind::Absent: return "absent";
    case FmaVerdictKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

FmaVerdict fma_diagnose(const CohortCurveSet& curves, const GrowthRegime& regime,
                        std::int64_t min_lifetime, const FmaConfig& cfg) {
  // Cohorts are ordered by label; earlier labels are earlier cohorts.
  struct Flat {
    std::map<std::int64_t, double> by_life;
  };
  std::vector<Flat> cs;
  for (const auto& [label, curve] : curves.cohorts) {
    Flat f;
    for (const auto& p : curve) {
      if (p.lifetime >= min_lifetime) f.by_life.emplace(p.lifetime, p.mean_in_degree);
    }
    if (!f.by_life.empty()) cs.push_back(std::move(f));
  }
  if (cs.size() < 2) {
    throw DataError("fma_diagnose: need >= 2 cohorts with lifetime support >= min_lifetime");
  }

  double score = 0.0;
  std::size_t comparisons = 0;
  for (std::size_t a = 0; a < cs.size(); ++a) {
    for (std::size_t b = a + 1; b < cs.size(); ++b) {
      for (const auto& [life, early_mean] : cs[a].by_life) {
        const auto it = cs[b].by_life.find(life);
        if (it == cs[b].by_life.end()) continue;
        ++comparisons;
        if (early_mean > it->second) {
          score += 1.0;
        } else if (early_mean == it->second) {
          score += 0.5;  // ties: collapsed curves land at exactly 0.5
        }
      }
    }
  }
  if (comparisons == 0) {
    throw DataError("fma_diagnose: no shared lifetime points across cohorts");
  }
  score /= static_cast<double>(comparisons);

  FmaVerdict v;
  v.dominance_score = score;
  v.regime = regime;
  v.min_lifetime_used = min_lifetime;
  if (score >= cfg.present_threshold) {
    v.verdict = FmaVerdictKind::Present;
  } else if (score >= cfg.absent_low && score <= cfg.absent_high &&
             regime.classification == Regime::Exponential) {
    v.verdict = FmaVerdictKind::Absent;
  } else {
    v.verdict = FmaVerdictKind::Inconclusive;
  }
  return v;
}

}  // namespace netlab
