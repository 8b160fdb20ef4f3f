#pragma once

#include <cstdint>

#include "contractlab/model.hpp"

namespace contractlab {

struct SimConfig {
  std::uint64_t seed = 0;
  long replications = 100000;
  int horizon_cap = 0;  // 0: derived from delta so the truncated tail mass is below 1e-12
};

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long replications = 0;
};

// Splittable counter-based generator (SplitMix64).  Cheap to construct, so
// every replication owns an independent stream and parallel grouping cannot
// change the draws.
struct Substream {
  std::uint64_t state = 0;
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // uniform on [0, 1) with 53-bit resolution
  double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }
};

// Independent deterministic substream for one replication.  Replication i of a
// run always sees the same draws no matter how other replications are grouped.
Substream substream(std::uint64_t seed, std::uint64_t index);

double sample_demand(const DemandModel& d, Substream& rng);

// Number of generations simulated when horizon_cap is 0: delta^cap < 1e-12.
int effective_horizon(double delta, int horizon_cap);

struct ProfitEstimates {
  SimEstimate supplier;
  SimEstimate oem;
};

// One-generation profits under the given contract at fixed capacity x.
ProfitEstimates estimate_single_gen_profit(const MarketParams& p, const DemandModel& d,
                                           const ContractTerms& terms, double x,
                                           const SimConfig& cfg);

struct RelationshipEstimate {
  SimEstimate supplier_npv;
  SimEstimate duration;  // generations until the first shortfall (inclusive)
};

// Supplier NPV of the contingent-renewal relationship at capacity x: each
// generation earns the wholesale profit, and the relationship ends the first
// time demand exceeds x.
RelationshipEstimate estimate_relationship_npv(const MarketParams& p, const DemandModel& d,
                                               double w, double x, const SimConfig& cfg);

}  // namespace contractlab
