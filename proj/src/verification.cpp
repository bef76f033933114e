#include "semtrade/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "semtrade/csv.hpp"

namespace semtrade {

std::vector<double> deviation_grid(double lo, double hi, int points) {
  if (points < 2 || !(lo < hi)) throw InvalidInput("deviation grid: need lo < hi, points >= 2");
  std::vector<double> grid(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = hi;
  return grid;
}

CheckResult check_identity_spa_equivalence(int profiles, int bidders, uint64_t seed) {
  const MonotoneNetParams identity = MonotoneNetParams::identity(bidders);
  Rng rng(seed);
  std::vector<double> bids(static_cast<size_t>(bidders));

  const auto start = std::chrono::steady_clock::now();
  long mismatches = 0;
  for (int i = 0; i < profiles; ++i) {
    for (double& b : bids) b = rng.uniform(1e-6, 1.0);
    const AuctionOutcome net = infer(identity, bids);
    const AuctionOutcome oracle = spa(bids);
    if (!net.has_winner() || *net.winner != *oracle.winner ||
        net.payment != oracle.payment) {
      ++mismatches;
    }
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();

  std::ostringstream detail;
  detail << profiles << " profiles, " << mismatches << " mismatches, "
         << format_double(ms) << " ms";
  return CheckResult{"identity-net equals second-price oracle", mismatches == 0,
                     detail.str()};
}

CheckResult check_monotonicity_roundtrip(int cases, uint64_t seed) {
  Rng rng(seed);
  long monotonicity_failures = 0;
  long roundtrip_failures = 0;
  double worst_roundtrip = 0.0;

  for (int i = 0; i < cases; ++i) {
    MonotoneNetParams p;
    p.bidder_count = rng.uniform_int(1, 6);
    p.groups = rng.uniform_int(1, 4);
    p.units = rng.uniform_int(1, 5);
    p.kappa = 10.0;
    const size_t total = static_cast<size_t>(p.bidder_count) *
                         static_cast<size_t>(p.groups) * static_cast<size_t>(p.units);
    p.log_weights.resize(total);
    p.biases.resize(total);
    for (size_t k = 0; k < total; ++k) {
      p.log_weights[k] = rng.uniform(-2.0, 2.0);
      p.biases[k] = rng.uniform(-1.0, 1.0);
    }
    const int m = rng.uniform_int(0, p.bidder_count - 1);

    double b1 = rng.uniform(0.0, 10.0);
    double b2 = rng.uniform(0.0, 10.0);
    while (std::abs(b1 - b2) < 1e-9) b2 = rng.uniform(0.0, 10.0);
    if (b1 > b2) std::swap(b1, b2);
    if (!(transform(p, m, b1) < transform(p, m, b2))) ++monotonicity_failures;

    const double b = rng.uniform(0.0, 10.0);
    const double err = std::abs(inverse_transform(p, m, transform(p, m, b)) - b);
    worst_roundtrip = std::max(worst_roundtrip, err);
    if (!(err <= 1e-6)) ++roundtrip_failures;
  }

  std::ostringstream detail;
  detail << cases << " cases, monotonicity failures " << monotonicity_failures
         << ", roundtrip failures " << roundtrip_failures << ", worst |err| "
         << format_double(worst_roundtrip);
  return CheckResult{"transform monotonicity and inverse round trip",
                     monotonicity_failures == 0 && roundtrip_failures == 0,
                     detail.str()};
}

namespace {

// Margin probe: true when every discrete selection inside the batch loss
// (unit argmax/argmin, bidder ordering, ReLU sign) clears the given margin,
// so a +-step parameter perturbation cannot flip any of them.
bool non_degenerate(const MonotoneNetParams& p,
                    const std::vector<std::vector<double>>& samples, double margin) {
  for (const auto& bids : samples) {
    std::vector<double> transformed(static_cast<size_t>(p.bidder_count));
    for (int m = 0; m < p.bidder_count; ++m) {
      std::vector<double> group_values(static_cast<size_t>(p.groups));
      for (int q = 0; q < p.groups; ++q) {
        double best = -std::numeric_limits<double>::infinity();
        double second = best;
        for (int s = 0; s < p.units; ++s) {
          const size_t i = p.index(m, q, s);
          const double v = std::exp(p.log_weights[i]) * bids[static_cast<size_t>(m)] +
                           p.biases[i];
          if (v > best) {
            second = best;
            best = v;
          } else if (v > second) {
            second = v;
          }
        }
        if (p.units > 1 && best - second < margin) return false;
        group_values[static_cast<size_t>(q)] = best;
      }
      std::sort(group_values.begin(), group_values.end());
      if (p.groups > 1 && group_values[1] - group_values[0] < margin) return false;
      transformed[static_cast<size_t>(m)] = group_values[0];
    }

    std::vector<double> sorted = transformed;
    std::sort(sorted.begin(), sorted.end());
    for (size_t j = 1; j < sorted.size(); ++j) {
      if (sorted[j] - sorted[j - 1] < margin) return false;
    }
    for (double t : transformed) {
      if (std::abs(t) < margin) return false;  // ReLU kink and dummy ties
    }

    for (int m = 0; m < p.bidder_count; ++m) {
      double competing = 0.0;
      for (int j = 0; j < p.bidder_count; ++j) {
        if (j != m) competing = std::max(competing, transformed[static_cast<size_t>(j)]);
      }
      const double theta0 = std::max(0.0, competing);
      std::vector<double> group_values(static_cast<size_t>(p.groups));
      for (int q = 0; q < p.groups; ++q) {
        double low = std::numeric_limits<double>::infinity();
        double second_low = low;
        for (int s = 0; s < p.units; ++s) {
          const size_t i = p.index(m, q, s);
          const double v = (theta0 - p.biases[i]) / std::exp(p.log_weights[i]);
          if (v < low) {
            second_low = low;
            low = v;
          } else if (v < second_low) {
            second_low = v;
          }
        }
        if (p.units > 1 && second_low - low < margin) return false;
        group_values[static_cast<size_t>(q)] = low;
      }
      std::sort(group_values.begin(), group_values.end());
      if (p.groups > 1 &&
          group_values[static_cast<size_t>(p.groups - 1)] -
                  group_values[static_cast<size_t>(p.groups - 2)] < margin) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

CheckResult check_gradients(int points, uint64_t seed, double rel_tol, double step) {
  Rng rng(seed);
  long checked_points = 0;
  long failures = 0;
  double worst_rel = 0.0;

  while (checked_points < points) {
    MonotoneNetParams p;
    p.bidder_count = rng.uniform_int(2, 5);
    p.groups = rng.uniform_int(1, 3);
    p.units = rng.uniform_int(1, 3);
    p.kappa = rng.uniform(2.0, 8.0);
    const size_t total = static_cast<size_t>(p.bidder_count) *
                         static_cast<size_t>(p.groups) * static_cast<size_t>(p.units);
    p.log_weights.resize(total);
    p.biases.resize(total);
    for (size_t k = 0; k < total; ++k) {
      p.log_weights[k] = rng.uniform(-1.0, 1.0);
      p.biases[k] = rng.uniform(-0.5, 0.5);
    }
    std::vector<std::vector<double>> batch(3);
    for (auto& profile : batch) {
      profile.resize(static_cast<size_t>(p.bidder_count));
      for (double& b : profile) b = rng.uniform(0.05, 1.0);
    }
    if (!non_degenerate(p, batch, 1e-3)) continue;
    ++checked_points;

    std::vector<double> g_logw, g_beta;
    loss_and_gradient(p, batch, g_logw, g_beta);

    const auto fd_check = [&](std::vector<double>& grid, const std::vector<double>& analytic) {
      for (size_t i = 0; i < grid.size(); ++i) {
        const double saved = grid[i];
        grid[i] = saved + step;
        const double up = batch_loss(p, batch);
        grid[i] = saved - step;
        const double down = batch_loss(p, batch);
        grid[i] = saved;
        const double fd = (up - down) / (2.0 * step);
        const double a = analytic[i];
        if (std::abs(a) < 1e-10 && std::abs(fd) < 1e-10) continue;
        const double rel = std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-8});
        worst_rel = std::max(worst_rel, rel);
        if (rel > rel_tol) ++failures;
      }
    };
    fd_check(p.log_weights, g_logw);
    fd_check(p.biases, g_beta);
  }

  std::ostringstream detail;
  detail << checked_points << " points, " << failures
         << " coordinate failures, worst rel err " << format_double(worst_rel);
  return CheckResult{"analytic gradients match central differences", failures == 0,
                     detail.str()};
}

CheckResult check_double_auction_properties(
    const ScenarioParams& params, const ScoreCurve& curve, const ThetaSampler& theta,
    const EngineFor& engine_for, const std::vector<int>& buyer_counts, int instances,
    uint64_t seed) {
  long violations = 0;
  std::string first_violation;
  const long max_comparisons =
      static_cast<long>(params.sellers) * (params.sellers - 1) / 2;

  for (int i = 0; i < instances; ++i) {
    const int n_buyers = buyer_counts[static_cast<size_t>(i) % buyer_counts.size()];
    Rng rng(mix_seed(seed, static_cast<uint64_t>(i)));
    const Instance inst = sample_instance(params, curve, theta, n_buyers, rng);
    const AuctionEngine* engine = engine_for(n_buyers);

    DoubleAuctionStats stats;
    const TradeSet trades = run_double_auction(inst.buyers, inst.sellers, *engine,
                                               mix_seed(seed, 2ull * i + 1), &stats);

    const auto flag = [&](const std::string& what) {
      ++violations;
      if (first_violation.empty()) {
        first_violation = "instance " + std::to_string(i) + ": " + what;
      }
    };

    // Individual rationality and per-pair price identity.
    std::vector<int> seller_seen, buyer_seen;
    for (const auto& pair : trades.pairs) {
      const Seller& s = inst.sellers[static_cast<size_t>(pair.seller)];
      const Buyer& b = inst.buyers[static_cast<size_t>(pair.buyer)];
      if (pair.price < s.ask) flag("payment below ask");
      if (pair.price > b.bids[static_cast<size_t>(pair.seller)]) flag("price above bid");
      seller_seen.push_back(pair.seller);
      buyer_seen.push_back(pair.buyer);
    }
    const AgentUtilities u = compute_utilities(trades, inst.buyers, inst.sellers);
    for (size_t m = 0; m < u.seller.size(); ++m) {
      const bool won = trades.has_seller(static_cast<int>(m));
      if (won && u.seller[m] < 0.0) flag("winning seller with negative utility");
      if (!won && u.seller[m] != 0.0) flag("losing seller with nonzero utility");
    }
    for (size_t n = 0; n < u.buyer.size(); ++n) {
      const bool won = trades.has_buyer(static_cast<int>(n));
      if (won && u.buyer[n] < 0.0) flag("winning buyer with negative utility");
      if (!won && u.buyer[n] != 0.0) flag("losing buyer with nonzero utility");
    }

    if (trades.total_prices() - trades.total_payments() != 0.0) {
      flag("budget not exactly balanced");
    }

    std::sort(seller_seen.begin(), seller_seen.end());
    std::sort(buyer_seen.begin(), buyer_seen.end());
    if (std::adjacent_find(seller_seen.begin(), seller_seen.end()) != seller_seen.end()) {
      flag("seller matched twice");
    }
    if (std::adjacent_find(buyer_seen.begin(), buyer_seen.end()) != buyer_seen.end()) {
      flag("buyer matched twice");
    }

    if (stats.engine_calls != params.sellers) flag("engine call count is not M");
    if (stats.elimination_comparisons > max_comparisons) {
      flag("elimination comparisons exceed M(M-1)/2");
    }
  }

  std::ostringstream detail;
  detail << instances << " instances, " << violations << " violations";
  if (!first_violation.empty()) detail << " (" << first_violation << ")";
  return CheckResult{"double auction IR / budget balance / matching bounds",
                     violations == 0, detail.str()};
}

DeviationCurve sweep_seller_ask(const Instance& inst, int seller,
                                const AuctionEngine& engine, uint64_t tie_seed,
                                const std::vector<double>& grid) {
  DeviationCurve curve;
  const Seller& target = inst.sellers[static_cast<size_t>(seller)];
  const double true_cost = total_cost(target.cost_params);
  curve.truthful_value = target.ask;

  const TradeSet truthful = run_double_auction(inst.buyers, inst.sellers, engine, tie_seed);
  const TradePair* truthful_pair = truthful.pair_for_seller(seller);
  curve.truthful_utility = truthful_pair ? truthful_pair->price - true_cost : 0.0;

  Instance work = inst;
  for (double ask : grid) {
    work.sellers[static_cast<size_t>(seller)].ask = ask;
    const TradeSet trades = run_double_auction(work.buyers, work.sellers, engine, tie_seed);
    const TradePair* pair = trades.pair_for_seller(seller);
    curve.points.emplace_back(ask, pair ? pair->price - true_cost : 0.0);
  }
  return curve;
}

DeviationCurve sweep_buyer_bid(const Instance& inst, int buyer, int seller,
                               const AuctionEngine& engine, uint64_t tie_seed,
                               const std::vector<double>& grid) {
  DeviationCurve curve;
  curve.truthful_value = inst.buyers[static_cast<size_t>(buyer)].bids[static_cast<size_t>(seller)];

  const auto utility_of = [&](const TradeSet& trades) {
    const TradePair* pair = trades.pair_for_buyer(buyer);
    if (!pair) return 0.0;
    // True value comes from the undeviated bids.
    const double value =
        inst.buyers[static_cast<size_t>(buyer)].bids[static_cast<size_t>(pair->seller)];
    return value - pair->price;
  };

  const TradeSet truthful = run_double_auction(inst.buyers, inst.sellers, engine, tie_seed);
  curve.truthful_utility = utility_of(truthful);

  Instance work = inst;
  for (double bid : grid) {
    work.buyers[static_cast<size_t>(buyer)].bids[static_cast<size_t>(seller)] = bid;
    const TradeSet trades = run_double_auction(work.buyers, work.sellers, engine, tie_seed);
    curve.points.emplace_back(bid, utility_of(trades));
  }
  return curve;
}

namespace {

bool winning_seller_shape_ok(const DeviationCurve& curve, double truthful_payment,
                             double tolerance) {
  if (!(curve.truthful_utility > 0.0)) return false;
  bool saw_plateau = false, saw_zero = false;
  for (const auto& [ask, utility] : curve.points) {
    if (ask <= truthful_payment) {
      if (std::abs(utility - curve.truthful_utility) > tolerance) return false;
      saw_plateau = true;
    } else {
      if (utility != 0.0) return false;
      saw_zero = true;
    }
  }
  return saw_plateau && saw_zero;
}

bool losing_buyer_shape_ok(const DeviationCurve& curve, double tolerance) {
  if (curve.truthful_utility != 0.0) return false;
  bool saw_zero = false, saw_negative = false;
  for (const auto& [bid, utility] : curve.points) {
    if (utility > tolerance) return false;
    if (utility == 0.0) saw_zero = true;
    if (utility < -1e-6) saw_negative = true;
  }
  return saw_zero && saw_negative && curve.points.front().second == 0.0;
}

}  // namespace

TruthfulnessReport run_truthfulness_sweeps(
    const ScenarioParams& params, const ScoreCurve& curve, const ThetaSampler& theta,
    const EngineFor& engine_for, const std::vector<int>& buyer_counts, int instances,
    int grid_points, double grid_lo, double grid_hi, uint64_t seed, double tolerance) {
  TruthfulnessReport report;
  const std::vector<double> grid = deviation_grid(grid_lo, grid_hi, grid_points);
  report.grid_points = grid_points;

  for (int i = 0; i < instances; ++i) {
    const int n_buyers = buyer_counts[static_cast<size_t>(i) % buyer_counts.size()];
    const AuctionEngine* engine = engine_for(n_buyers);
    Rng rng(mix_seed(seed, static_cast<uint64_t>(i)));
    const Instance inst = sample_instance(params, curve, theta, n_buyers, rng);
    const uint64_t tie_seed = mix_seed(seed, 2ull * i + 1);

    const TradeSet truthful = run_double_auction(inst.buyers, inst.sellers, *engine, tie_seed);

    // One seller deviation per instance.
    const int seller = rng.uniform_int(0, params.sellers - 1);
    const DeviationCurve seller_curve = sweep_seller_ask(inst, seller, *engine, tie_seed, grid);
    ++report.sweeps;
    for (const auto& [value, utility] : seller_curve.points) {
      const double gain = utility - seller_curve.truthful_utility;
      report.worst_gain = std::max(report.worst_gain, gain);
      if (gain > tolerance) ++report.violations;
    }
    if (!report.found_winning_seller_shape) {
      const TradePair* pair = truthful.pair_for_seller(seller);
      if (pair && winning_seller_shape_ok(seller_curve, pair->price, tolerance)) {
        report.found_winning_seller_shape = true;
        report.winning_seller_curve = seller_curve;
      }
    }

    // One buyer deviation per instance, on a single seller's bid.
    const int buyer = rng.uniform_int(0, n_buyers - 1);
    const int target = rng.uniform_int(0, params.sellers - 1);
    const DeviationCurve buyer_curve =
        sweep_buyer_bid(inst, buyer, target, *engine, tie_seed, grid);
    ++report.sweeps;
    for (const auto& [value, utility] : buyer_curve.points) {
      const double gain = utility - buyer_curve.truthful_utility;
      report.worst_gain = std::max(report.worst_gain, gain);
      if (gain > tolerance) ++report.violations;
    }
    if (!report.found_losing_buyer_shape && !truthful.has_buyer(buyer)) {
      const TradePair* target_pair = truthful.pair_for_seller(target);
      if (target_pair && target_pair->buyer != buyer &&
          losing_buyer_shape_ok(buyer_curve, tolerance)) {
        report.found_losing_buyer_shape = true;
        report.losing_buyer_curve = buyer_curve;
      }
    }
  }
  return report;
}

CheckResult check_truthfulness(const ScenarioParams& params, const ScoreCurve& curve,
                               const ThetaSampler& theta, const EngineFor& engine_for,
                               const std::vector<int>& buyer_counts, int instances,
                               int grid_points, uint64_t seed) {
  const TruthfulnessReport report =
      run_truthfulness_sweeps(params, curve, theta, engine_for, buyer_counts, instances,
                              grid_points, 0.01, 1.0, seed);
  std::ostringstream detail;
  detail << report.sweeps << " sweeps x " << report.grid_points << " points, "
         << report.violations << " violations, worst gain "
         << format_double(report.worst_gain);
  return CheckResult{"no profitable ask or bid deviation", report.violations == 0,
                     detail.str()};
}

MonotoneNetParams train_market_engine(const ScenarioParams& params,
                                      const ScoreCurve& curve,
                                      const ThetaSampler& theta, int buyer_count,
                                      int profiles, const TrainOptions& options) {
  const std::vector<std::vector<double>> columns = sample_bid_columns(
      params, curve, theta, buyer_count, profiles,
      mix_seed(options.seed, static_cast<uint64_t>(buyer_count)));
  return train(columns, options).first;
}

}  // namespace semtrade
