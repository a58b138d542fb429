#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netlab/graph.hpp"

namespace netlab {

enum class Binning { Exact, Logarithmic };

struct DegreeBin {
  std::uint64_t lo = 0;  // inclusive
  std::uint64_t hi = 0;  // inclusive
  std::size_t count = 0;
};

struct DegreeHistogram {
  std::vector<DegreeBin> bins;  // non-overlapping, sorted
  Binning binning = Binning::Exact;
  std::size_t total_users = 0;
};

// In-degree histogram. Logarithmic binning uses base-2 edges: degree 0 alone,
// then [2^k, 2^(k+1)-1].
DegreeHistogram degree_histogram(const TemporalGraph& g, Binning binning);

struct PowerLawFit {
  double gamma = 0.0;       // exponent, > 1
  std::uint64_t xmin = 0;   // tail cutoff
  double ks_distance = 0.0;
  std::size_t n_tail = 0;   // samples >= xmin; >= 50 required for a fit
};

// Discrete maximum-likelihood exponent with xmin chosen to minimize the
// Kolmogorov-Smirnov distance between the empirical and fitted tail.
// Throws NumericError on < 50 nonzero samples or degenerate (all-equal) input.
PowerLawFit fit_power_law(const std::vector<std::uint64_t>& degrees);
PowerLawFit fit_power_law(const TemporalGraph& g);

// Draws from the exact discrete power law p(x) ~ x^-gamma, x >= xmin.
// Independent of the fitter; used to validate it against known ground truth.
std::vector<std::uint64_t> sample_power_law(double gamma, std::uint64_t xmin,
                                            std::size_t n, std::uint64_t seed);

struct CohortPoint {
  std::int64_t lifetime = 0;  // duration since the member's own join time
  double mean_in_degree = 0.0;
};

struct CohortCurveSet {
  // Label -> curve; lifetimes strictly increasing within each curve.
  std::map<std::string, std::vector<CohortPoint>> cohorts;
  std::size_t min_cohort_size = 2;
};

struct CohortOptions {
  // Empty: cohorts are UTC join years. Otherwise sorted interior boundaries
  // t_1 < ... < t_k splitting join time into k+1 cohorts labeled c0..ck.
  std::vector<Timestamp> boundaries;
  std::size_t min_cohort_size = 2;
  // Lifetime sampling step; 0 picks ~32 steps across the observation window.
  std::int64_t lifetime_step = 0;
};

// Mean accumulated in-degree per cohort as a function of member lifetime.
// Zero-follower users are excluded; at lifetime D only members observable for
// at least D (join + D <= graph horizon) contribute. Cohorts below
// min_cohort_size are dropped; throws DataError when none survive.
CohortCurveSet cohort_curves(const TemporalGraph& g, const CohortOptions& opts = {});

struct GrowthPoint {
  Timestamp time = 0;  // period end
  std::size_t cumulative_users = 0;
};

// Cumulative user count at the end of each period. period_seconds 0 means
// UTC calendar years.
std::vector<GrowthPoint> growth_curve(const TemporalGraph& g, std::int64_t period_seconds = 0);

enum class Regime { Exponential, SubExponential, SuperExponential };

std::string regime_name(Regime r);

struct GrowthRegime {
  Regime classification = Regime::Exponential;
  double log_fit_r2 = 0.0;
  double concavity_stat = 0.0;  // mean second difference of log(count)
};

struct GrowthClassifierConfig {
  double concavity_threshold = 0.01;  // tau
};

// Least-squares fit of log(count) against time; classification by the sign of
// the mean second difference of log(count) against the threshold. Requires
// >= 5 strictly increasing points.
GrowthRegime classify_growth(const std::vector<GrowthPoint>& curve,
                             const GrowthClassifierConfig& cfg = {});

enum class FmaVerdictKind { Present, Absent, Inconclusive };

std::string verdict_name(FmaVerdictKind v);

struct FmaVerdict {
  FmaVerdictKind verdict = FmaVerdictKind::Inconclusive;
  double dominance_score = 0.0;  // in [0, 1]; ties count 0.5
  GrowthRegime regime;
  std::int64_t min_lifetime_used = 0;
};

struct FmaConfig {
  double present_threshold = 0.8;
  double absent_low = 0.35;
  double absent_high = 0.65;
};

// Fraction of ordered (earlier, later) cohort pairs at shared lifetimes
// >= min_lifetime where the earlier cohort's mean exceeds the later's.
// present: dominance >= 0.8; absent: dominance in [0.35, 0.65] under an
// exponential regime (time-invariant collapse); otherwise inconclusive.
FmaVerdict fma_diagnose(const CohortCurveSet& curves, const GrowthRegime& regime,
                        std::int64_t min_lifetime, const FmaConfig& cfg = {});

}  // namespace netlab
