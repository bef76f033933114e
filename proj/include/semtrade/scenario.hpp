#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "semtrade/double_auction.hpp"
#include "semtrade/market.hpp"
#include "semtrade/metrics.hpp"
#include "semtrade/rng.hpp"

namespace semtrade {

// Where a seller's semantic-model price comes from.
class ThetaSampler {
 public:
  virtual ~ThetaSampler() = default;
  virtual double sample(Rng& rng) const = 0;
};

class UniformTheta final : public ThetaSampler {
 public:
  UniformTheta(double lo, double hi) : lo_(lo), hi_(hi) {}
  double sample(Rng& rng) const override { return rng.uniform(lo_, hi_); }

 private:
  double lo_, hi_;
};

class FixedTheta final : public ThetaSampler {
 public:
  explicit FixedTheta(double value) : value_(value) {}
  double sample(Rng&) const override { return value_; }

 private:
  double value_;
};

// Model price set by an upstream model-trading round: a fresh bid profile is
// drawn and the trained auction's clearing payment is taken as the price
// (zero when the round clears nothing).
class ModelTradeTheta final : public ThetaSampler {
 public:
  ModelTradeTheta(MonotoneNetParams net, double bid_lo, double bid_hi);
  double sample(Rng& rng) const override;

 private:
  MonotoneNetParams net_;
  double bid_lo_, bid_hi_;
};

// Market population parameters. Defaults follow the experiment table:
// lambda ~ U[0,1], d ~ U[10,100], reduced dimension ~ U{1..16}, fixed unit
// costs, theta ~ U[0,1].
struct ScenarioParams {
  int sellers = 20;
  double lambda_low = 0.0, lambda_high = 1.0;
  double data_size_low = 10.0, data_size_high = 100.0;
  double unit_data_cost = 0.001;
  double unit_compute_cost = 0.001;
  double comm_power = 1.0;
  double bits = 10000.0;
  double rate = 100000.0;
  double unit_energy_cost = 0.01;
  double expected_transmissions = 100.0;
  int dim_low = 1, dim_high = 16;
  // A seller's achievable scores are the curve values at its reduced
  // dimension scaled by quality_base + quality_slope * theta (clamped to
  // [0,1]): devices that paid more for their model work at a better curve.
  double quality_base = 0.0;
  double quality_slope = 1.0;

  void validate() const;
};

struct Instance {
  std::vector<Seller> sellers;
  std::vector<Buyer> buyers;
};

// Draws one market. Sellers first (theta, dimension, data size per seller,
// ascending id), then buyers (lambda per buyer). Asks are truthful costs and
// bids truthful valuations.
Instance sample_instance(const ScenarioParams& params, const ScoreCurve& curve,
                         const ThetaSampler& theta, int buyer_count, Rng& rng);

// Buyer-bid columns pooled over sellers, used as engine training profiles.
std::vector<std::vector<double>> sample_bid_columns(const ScenarioParams& params,
                                                    const ScoreCurve& curve,
                                                    const ThetaSampler& theta,
                                                    int buyer_count, int profiles,
                                                    uint64_t seed);

// Aggregates over replicas for one (engine, buyer count) cell.
struct SweepCell {
  std::string engine;
  int buyers = 0;
  long replicas = 0;
  long winning_pairs = 0;
  double mean_winning_seller_utility = 0.0;
  double mean_winning_buyer_utility = 0.0;
  double mean_winning_pairs = 0.0;
  // Winning sellers stratified by theta >= 0.5.
  long high_theta_wins = 0, low_theta_wins = 0;
  double high_theta_mean_utility = 0.0, low_theta_mean_utility = 0.0;
  double high_theta_mean_sim = 0.0, low_theta_mean_sim = 0.0;
  double high_theta_mean_bleu = 0.0, low_theta_mean_bleu = 0.0;
  // Per-replica mean winning-seller utility (NaN when a replica clears
  // nothing); kept for trend tests.
  std::vector<double> replica_mean_seller_utility;
};

// First-replica trade rows for inspection output.
struct TradeRecord {
  std::string engine;
  int buyers = 0;
  int seller_id = 0;
  int buyer_id = 0;
  double ask = 0.0;
  double bid = 0.0;
  double price = 0.0;
  double seller_utility = 0.0;
  double buyer_utility = 0.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<TradeRecord> sample_trades;
};

// Runs `replicas` paired double auctions per buyer count: the same sampled
// instance is cleared once per engine. Replica seeds derive from the master
// seed and results merge in replica order, so the outcome is independent of
// the worker count.
SweepResult run_market_sweep(
    const ScenarioParams& params, const ScoreCurve& curve, const ThetaSampler& theta,
    const std::vector<int>& buyer_counts, int replicas, uint64_t master_seed,
    const std::function<const AuctionEngine*(int buyer_count)>& engine_for,
    int threads = 0);

// Runs fn(0..count-1) on a small worker pool. Output slots are preallocated
// by the caller, so scheduling cannot reorder results.
void parallel_for_indexed(long count, int threads, const std::function<void(long)>& fn);

}  // namespace semtrade
