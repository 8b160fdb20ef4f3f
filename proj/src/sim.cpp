#include "contractlab/sim.hpp"

#include <algorithm>
#include <cmath>

namespace contractlab {

namespace {

double draw_exponential(double lambda, Substream& rng) {
  // inverse CDF on 1-U so u == 0 is harmless; log1p keeps small quantiles exact
  return -std::log1p(-rng.uniform()) / lambda;
}

// Streaming mean / variance accumulator (Welford), fixed summation order.
struct Accumulator {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double v) {
    ++n;
    const double d1 = v - mean;
    mean += d1 / n;
    m2 += d1 * (v - mean);
  }
  SimEstimate estimate() const {
    SimEstimate e;
    e.mean = mean;
    e.replications = n;
    e.std_error = n > 1 ? std::sqrt(m2 / (double(n) * double(n - 1))) : 0.0;
    return e;
  }
};

}  // namespace

Substream substream(std::uint64_t seed, std::uint64_t index) {
  // decorrelate the run seed from the replication counter before streaming
  Substream mix{seed ^ (0xD1B54A32D192ED03ULL * (index + 1))};
  const std::uint64_t a = mix();
  const std::uint64_t b = mix();
  return Substream{a ^ (b << 1)};
}

double sample_demand(const DemandModel& d, Substream& rng) {
  double tail = 0.0;
  const int shape = d.kind == TailKind::Exponential ? 1 : d.n;
  for (int i = 0; i < shape; ++i) tail += draw_exponential(d.lambda, rng);
  return d.base + tail;
}

int effective_horizon(double delta, int horizon_cap) {
  if (horizon_cap > 0) return horizon_cap;
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("horizon needs 0 < delta < 1");
  return static_cast<int>(std::ceil(std::log(1e-12) / std::log(delta)));
}

ProfitEstimates estimate_single_gen_profit(const MarketParams& p, const DemandModel& d,
                                           const ContractTerms& terms, double x,
                                           const SimConfig& cfg) {
  if (cfg.replications < 1) throw DomainError("replications must be >= 1");
  const double w = contract_wholesale(terms);
  Accumulator supplier, oem;
  for (long i = 0; i < cfg.replications; ++i) {
    Substream rng = substream(cfg.seed, static_cast<std::uint64_t>(i));
    const double D = sample_demand(d, rng);
    const double sales = std::min(D, x);
    double transfer = 0.0;  // penalty paid by the supplier to the OEM
    if (const auto* lump = std::get_if<LumpSumPenalty>(&terms)) {
      if (D > x) transfer = lump->rho;
    } else if (const auto* unit = std::get_if<UnitPenalty>(&terms)) {
      transfer = unit->rho1 * std::max(D - x, 0.0);
    }
    supplier.add(-p.c * x + (w - p.k) * sales - transfer);
    oem.add((p.r - w) * sales + transfer);
  }
  return {supplier.estimate(), oem.estimate()};
}

RelationshipEstimate estimate_relationship_npv(const MarketParams& p, const DemandModel& d,
                                               double w, double x, const SimConfig& cfg) {
  if (cfg.replications < 1) throw DomainError("replications must be >= 1");
  const double delta = p.require_delta();
  const int horizon = effective_horizon(delta, cfg.horizon_cap);
  Accumulator npv, duration;
  for (long i = 0; i < cfg.replications; ++i) {
    Substream rng = substream(cfg.seed, static_cast<std::uint64_t>(i));
    double value = 0.0, disc = 1.0;
    int gens = 0;
    for (int t = 0; t < horizon; ++t) {
      const double D = sample_demand(d, rng);
      value += disc * (-p.c * x + (w - p.k) * std::min(D, x));
      ++gens;
      if (D > x) break;  // the generation still pays out, but nothing renews
      disc *= delta;
    }
    npv.add(value);
    duration.add(gens);
  }
  RelationshipEstimate e;
  e.supplier_npv = npv.estimate();
  e.duration = duration.estimate();
  return e;
}

}  // namespace contractlab
