#pragma once

#include <cstdint>
#include <vector>

#include "netlab/graph.hpp"

namespace netlab {

enum class SimModel { BarabasiAlbert, Fitness, Aging };

enum class ArrivalKind { ConstantRate, Exponential, Polynomial };

struct ArrivalProcess {
  ArrivalKind kind = ArrivalKind::ConstantRate;
  std::size_t steps = 0;  // 0: one arrival per step
  double rate = 0.1;      // exponential with no base population: cumulative ~ e^(rate * step)
  double exponent = 2.0;  // polynomial: cumulative ~ step^exponent
};

enum class FitnessKind { Uniform, Exponential };

enum class AgingKind { Power, Exponential };

struct SimConfig {
  SimModel model = SimModel::BarabasiAlbert;
  std::size_t n_final = 1000;
  std::size_t m = 1;  // follow edges per arriving node
  ArrivalProcess arrival;
  FitnessKind fitness_distribution = FitnessKind::Uniform;
  double fitness_mean = 1.0;  // exponential fitness only
  AgingKind aging_decay = AgingKind::Power;
  double aging_param = 1.0;  // power alpha or exponential lambda
  std::uint64_t seed = 0;
};

// Seed network size: a complete directed clique of m + 1 nodes at step 0.
std::size_t seed_network_size(const SimConfig& cfg);

// One simulation step maps to one day of graph time.
constexpr Timestamp kStepSeconds = 86400;

// Grows a follower network. Each arriving node follows m distinct existing
// nodes; the target weight is (in-degree + m), i.e. the node's total degree,
// scaled by fitness or by the aging decay of the target's age, depending on
// the model. The additive m keeps new nodes reachable and gives the classic
// BA in-degree exponent of 3 for every m. Node and edge
// timestamps are arrival step indices times kStepSeconds. Bit-identical
// output for equal seeds. Throws ConfigError on infeasible configs
// (n_final <= m, bad parameters).
TemporalGraph simulate(const SimConfig& cfg);

// Normalized attachment distribution over existing nodes; exposed so tests
// can cross-check the sampler against the model formulas directly.
// ages[i] is the current step minus node i's arrival step.
std::vector<double> attachment_probabilities(const std::vector<std::uint64_t>& in_degrees,
                                             const std::vector<double>& fitness,
                                             const std::vector<std::int64_t>& ages,
                                             const SimConfig& cfg);

// Arrivals per step; sums to `total` over arrival.steps steps. For the
// exponential kind with base > 0 (the seed population), the cumulative
// population base + C(k) follows an exact geometric series from base to
// base + total, the regime that sustains time-invariant degree growth.
std::vector<std::size_t> arrival_schedule(const ArrivalProcess& arrival, std::size_t total,
                                          std::size_t base = 0);

enum class FmaGroundTruth { Present, Absent, Unknown };

// Expected macro-level verdict for a configuration: preferential attachment
// with constant or polynomial arrival yields a first-mover advantage, while
// exponential arrival sustains time-invariant degree growth.
FmaGroundTruth fma_ground_truth(const SimConfig& cfg);

}  // namespace netlab
