#include "semtrade/scenario.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace semtrade {

ModelTradeTheta::ModelTradeTheta(MonotoneNetParams net, double bid_lo, double bid_hi)
    : net_(std::move(net)), bid_lo_(bid_lo), bid_hi_(bid_hi) {
  net_.validate();
  if (!(bid_lo_ >= 0.0) || !(bid_lo_ < bid_hi_)) {
    throw InvalidInput("model-trade theta: need 0 <= bid_lo < bid_hi");
  }
}

double ModelTradeTheta::sample(Rng& rng) const {
  std::vector<double> bids(static_cast<size_t>(net_.bidder_count));
  for (double& b : bids) b = rng.uniform(bid_lo_, bid_hi_);
  const AuctionOutcome outcome = infer(net_, bids);
  return outcome.has_winner() ? outcome.payment : 0.0;
}

void ScenarioParams::validate() const {
  if (sellers < 1) throw InvalidInput("scenario: need at least one seller");
  if (!(lambda_low >= 0.0 && lambda_high <= 1.0 && lambda_low <= lambda_high)) {
    throw InvalidInput("scenario: lambda range must lie in [0,1]");
  }
  if (!(data_size_low >= 0.0 && data_size_low <= data_size_high)) {
    throw InvalidInput("scenario: bad data size range");
  }
  if (dim_low < 1 || dim_low > dim_high) throw InvalidInput("scenario: bad dimension range");
  if (!(rate > 0.0)) throw InvalidInput("scenario: rate must be positive");
  if (expected_transmissions < 1.0) {
    throw InvalidInput("scenario: expected transmissions must be at least 1");
  }
}

Instance sample_instance(const ScenarioParams& params, const ScoreCurve& curve,
                         const ThetaSampler& theta, int buyer_count, Rng& rng) {
  params.validate();
  if (params.dim_high > curve.max_dim) {
    throw InvalidInput("scenario: dimension range exceeds score curve");
  }

  Instance inst;
  inst.sellers.reserve(static_cast<size_t>(params.sellers));
  for (int m = 0; m < params.sellers; ++m) {
    const double theta_m = theta.sample(rng);
    const int dim = rng.uniform_int(params.dim_low, params.dim_high);
    const double data_size = rng.uniform(params.data_size_low, params.data_size_high);

    const SemanticScores base = curve.at(dim);
    const double quality =
        std::clamp(params.quality_base + params.quality_slope * theta_m, 0.0, 1.0);
    const SemanticScores scores{std::clamp(base.sim * quality, 0.0, 1.0),
                                std::clamp(base.bleu * quality, 0.0, 1.0)};

    CostParams cp;
    cp.data_size = data_size;
    cp.unit_data_cost = params.unit_data_cost;
    cp.unit_compute_cost = params.unit_compute_cost;
    cp.comm_power = params.comm_power;
    cp.bits = params.bits;
    cp.rate = params.rate;
    cp.unit_energy_cost = params.unit_energy_cost;
    cp.model_price = theta_m;
    cp.expected_transmissions = params.expected_transmissions;

    Seller seller;
    seller.id = m;
    seller.scores = scores;
    seller.cost_params = cp;
    seller.ask = total_cost(cp);  // truthful
    inst.sellers.push_back(std::move(seller));
  }

  inst.buyers.reserve(static_cast<size_t>(buyer_count));
  for (int n = 0; n < buyer_count; ++n) {
    Buyer buyer;
    buyer.id = n;
    buyer.preference = Preference::from_lambda(
        rng.uniform(params.lambda_low, params.lambda_high));
    buyer.bids.resize(inst.sellers.size());
    for (size_t m = 0; m < inst.sellers.size(); ++m) {
      buyer.bids[m] = clamp_bid(info_valuation(buyer.preference, inst.sellers[m].scores));
    }
    inst.buyers.push_back(std::move(buyer));
  }
  return inst;
}

std::vector<std::vector<double>> sample_bid_columns(const ScenarioParams& params,
                                                    const ScoreCurve& curve,
                                                    const ThetaSampler& theta,
                                                    int buyer_count, int profiles,
                                                    uint64_t seed) {
  if (profiles < 1) throw InvalidInput("scenario: need at least one training profile");
  std::vector<std::vector<double>> columns;
  columns.reserve(static_cast<size_t>(profiles));
  Rng rng(seed);
  while (static_cast<int>(columns.size()) < profiles) {
    const Instance inst = sample_instance(params, curve, theta, buyer_count, rng);
    for (size_t m = 0; m < inst.sellers.size() &&
                       static_cast<int>(columns.size()) < profiles; ++m) {
      std::vector<double> column(inst.buyers.size());
      for (size_t n = 0; n < inst.buyers.size(); ++n) column[n] = inst.buyers[n].bids[m];
      columns.push_back(std::move(column));
    }
  }
  return columns;
}

void parallel_for_indexed(long count, int threads, const std::function<void(long)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = static_cast<int>(std::min<long>(threads, count));
  if (threads <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

struct ReplicaTally {
  double seller_utility_sum = 0.0;
  double buyer_utility_sum = 0.0;
  long pairs = 0;
  double high_utility_sum = 0.0, low_utility_sum = 0.0;
  long high_wins = 0, low_wins = 0;
  double high_sim_sum = 0.0, low_sim_sum = 0.0;
  double high_bleu_sum = 0.0, low_bleu_sum = 0.0;
};

ReplicaTally tally_trades(const TradeSet& trades, const Instance& inst) {
  ReplicaTally t;
  for (const auto& pair : trades.pairs) {
    const Seller& seller = inst.sellers[static_cast<size_t>(pair.seller)];
    const double su = seller_utility(pair.price, total_cost(seller.cost_params), true);
    const double value = inst.buyers[static_cast<size_t>(pair.buyer)]
                             .bids[static_cast<size_t>(pair.seller)];
    const double bu = buyer_utility(value, pair.price, true);
    t.seller_utility_sum += su;
    t.buyer_utility_sum += bu;
    ++t.pairs;
    if (seller.cost_params.model_price >= 0.5) {
      t.high_utility_sum += su;
      ++t.high_wins;
      t.high_sim_sum += seller.scores.sim;
      t.high_bleu_sum += seller.scores.bleu;
    } else {
      t.low_utility_sum += su;
      ++t.low_wins;
      t.low_sim_sum += seller.scores.sim;
      t.low_bleu_sum += seller.scores.bleu;
    }
  }
  return t;
}

}  // namespace

SweepResult run_market_sweep(
    const ScenarioParams& params, const ScoreCurve& curve, const ThetaSampler& theta,
    const std::vector<int>& buyer_counts, int replicas, uint64_t master_seed,
    const std::function<const AuctionEngine*(int buyer_count)>& engine_for,
    int threads) {
  if (replicas < 1) throw InvalidInput("sweep: need at least one replica");
  SweepResult result;

  for (int n_buyers : buyer_counts) {
    const AuctionEngine* trained = engine_for(n_buyers);
    const SpaEngine spa_engine;
    const AuctionEngine* engines[2] = {trained, &spa_engine};

    std::vector<std::array<ReplicaTally, 2>> tallies(static_cast<size_t>(replicas));
    const uint64_t sweep_seed = mix_seed(master_seed, static_cast<uint64_t>(n_buyers));
    parallel_for_indexed(replicas, threads, [&](long r) {
      Rng rng(mix_seed(sweep_seed, static_cast<uint64_t>(r)));
      const Instance inst = sample_instance(params, curve, theta, n_buyers, rng);
      for (int e = 0; e < 2; ++e) {
        const uint64_t tie_seed = mix_seed(sweep_seed, (static_cast<uint64_t>(r) << 1) | 1u) + e;
        const TradeSet trades =
            run_double_auction(inst.buyers, inst.sellers, *engines[e], tie_seed);
        tallies[static_cast<size_t>(r)][static_cast<size_t>(e)] = tally_trades(trades, inst);
      }
    });

    for (int e = 0; e < 2; ++e) {
      SweepCell cell;
      cell.engine = std::string(engines[e]->name());
      cell.buyers = n_buyers;
      cell.replicas = replicas;
      cell.replica_mean_seller_utility.reserve(static_cast<size_t>(replicas));
      double su = 0.0, bu = 0.0;
      double hu = 0.0, lu = 0.0, hs = 0.0, ls = 0.0, hb = 0.0, lb = 0.0;
      for (const auto& pair_tally : tallies) {
        const ReplicaTally& t = pair_tally[static_cast<size_t>(e)];
        su += t.seller_utility_sum;
        bu += t.buyer_utility_sum;
        cell.winning_pairs += t.pairs;
        hu += t.high_utility_sum;
        lu += t.low_utility_sum;
        cell.high_theta_wins += t.high_wins;
        cell.low_theta_wins += t.low_wins;
        hs += t.high_sim_sum;
        ls += t.low_sim_sum;
        hb += t.high_bleu_sum;
        lb += t.low_bleu_sum;
        cell.replica_mean_seller_utility.push_back(
            t.pairs > 0 ? t.seller_utility_sum / static_cast<double>(t.pairs)
                        : std::numeric_limits<double>::quiet_NaN());
      }
      const double pairs = static_cast<double>(cell.winning_pairs);
      cell.mean_winning_seller_utility = cell.winning_pairs > 0 ? su / pairs : 0.0;
      cell.mean_winning_buyer_utility = cell.winning_pairs > 0 ? bu / pairs : 0.0;
      cell.mean_winning_pairs = pairs / static_cast<double>(replicas);
      cell.high_theta_mean_utility =
          cell.high_theta_wins > 0 ? hu / static_cast<double>(cell.high_theta_wins) : 0.0;
      cell.low_theta_mean_utility =
          cell.low_theta_wins > 0 ? lu / static_cast<double>(cell.low_theta_wins) : 0.0;
      cell.high_theta_mean_sim =
          cell.high_theta_wins > 0 ? hs / static_cast<double>(cell.high_theta_wins) : 0.0;
      cell.low_theta_mean_sim =
          cell.low_theta_wins > 0 ? ls / static_cast<double>(cell.low_theta_wins) : 0.0;
      cell.high_theta_mean_bleu =
          cell.high_theta_wins > 0 ? hb / static_cast<double>(cell.high_theta_wins) : 0.0;
      cell.low_theta_mean_bleu =
          cell.low_theta_wins > 0 ? lb / static_cast<double>(cell.low_theta_wins) : 0.0;
      result.cells.push_back(std::move(cell));
    }

    // Trade rows from the first replica, both engines.
    {
      Rng rng(mix_seed(sweep_seed, 0));
      const Instance inst = sample_instance(params, curve, theta, n_buyers, rng);
      for (int e = 0; e < 2; ++e) {
        const uint64_t tie_seed = mix_seed(sweep_seed, 1u) + e;
        const TradeSet trades =
            run_double_auction(inst.buyers, inst.sellers, *engines[e], tie_seed);
        for (const auto& pair : trades.pairs) {
          const Seller& seller = inst.sellers[static_cast<size_t>(pair.seller)];
          const Buyer& buyer = inst.buyers[static_cast<size_t>(pair.buyer)];
          TradeRecord rec;
          rec.engine = std::string(engines[e]->name());
          rec.buyers = n_buyers;
          rec.seller_id = pair.seller;
          rec.buyer_id = pair.buyer;
          rec.ask = seller.ask;
          rec.bid = buyer.bids[static_cast<size_t>(pair.seller)];
          rec.price = pair.price;
          rec.seller_utility = seller_utility(pair.price, total_cost(seller.cost_params), true);
          rec.buyer_utility = buyer_utility(rec.bid, pair.price, true);
          result.sample_trades.push_back(std::move(rec));
        }
      }
    }
  }
  return result;
}

}  // namespace semtrade
