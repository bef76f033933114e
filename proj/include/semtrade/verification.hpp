#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "semtrade/baselines.hpp"
#include "semtrade/scenario.hpp"

namespace semtrade {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Identity-parameterized net against a brute-force second-price oracle:
// winner and payment must match exactly on random positive profiles.
CheckResult check_identity_spa_equivalence(int profiles, int bidders, uint64_t seed);

// Strict transform monotonicity and inverse round trip on randomized
// parameters, |inverse(transform(b)) - b| <= 1e-6 for b in [0, 10].
CheckResult check_monotonicity_roundtrip(int cases, uint64_t seed);

// Analytic batch-loss gradients against central finite differences at
// non-degenerate random points (no min/max/ReLU or argmax ties nearby).
CheckResult check_gradients(int points, uint64_t seed, double rel_tol = 1e-4,
                            double step = 1e-5);

// Supplies the engine for a given buyer count; a trained net is sized to
// its column length, the SPA baseline serves any.
using EngineFor = std::function<const AuctionEngine*(int buyer_count)>;

// IR, exact budget balance, injective matching and the stage call/compare
// bounds over random market instances cleared by the supplied engines.
CheckResult check_double_auction_properties(
    const ScenarioParams& params, const ScoreCurve& curve, const ThetaSampler& theta,
    const EngineFor& engine_for, const std::vector<int>& buyer_counts, int instances,
    uint64_t seed);

struct DeviationCurve {
  std::vector<std::pair<double, double>> points;  // (deviation value, utility)
  double truthful_value = 0.0;
  double truthful_utility = 0.0;
};

struct TruthfulnessReport {
  long sweeps = 0;
  long grid_points = 0;
  long violations = 0;
  double worst_gain = 0.0;  // max of deviated utility minus truthful utility
  bool found_winning_seller_shape = false;
  DeviationCurve winning_seller_curve;
  bool found_losing_buyer_shape = false;
  DeviationCurve losing_buyer_curve;
};

// Sweeps one seller's ask and one buyer's single-seller bid per instance
// over a deviation grid, holding everything else fixed. Confirms no
// deviation beats the truthful report by more than the tolerance and
// collects the two reference curve shapes.
TruthfulnessReport run_truthfulness_sweeps(
    const ScenarioParams& params, const ScoreCurve& curve, const ThetaSampler& theta,
    const EngineFor& engine_for, const std::vector<int>& buyer_counts, int instances,
    int grid_points, double grid_lo, double grid_hi, uint64_t seed,
    double tolerance = 1e-9);

CheckResult check_truthfulness(const ScenarioParams& params, const ScoreCurve& curve,
                               const ThetaSampler& theta, const EngineFor& engine_for,
                               const std::vector<int>& buyer_counts, int instances,
                               int grid_points, uint64_t seed);

// Utility sweep for a single chosen deviator on a fixed instance; shared by
// the truthfulness CLI command.
DeviationCurve sweep_seller_ask(const Instance& inst, int seller,
                                const AuctionEngine& engine, uint64_t tie_seed,
                                const std::vector<double>& grid);
DeviationCurve sweep_buyer_bid(const Instance& inst, int buyer, int seller,
                               const AuctionEngine& engine, uint64_t tie_seed,
                               const std::vector<double>& grid);

// Trains an engine for N-buyer columns drawn from the market's pooled
// buyer-bid distribution.
MonotoneNetParams train_market_engine(const ScenarioParams& params,
                                      const ScoreCurve& curve,
                                      const ThetaSampler& theta, int buyer_count,
                                      int profiles, const TrainOptions& options);

// Uniformly spaced deviation grid, inclusive of both ends.
std::vector<double> deviation_grid(double lo, double hi, int points);

}  // namespace semtrade
