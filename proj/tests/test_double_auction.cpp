#include <doctest.h>

#include <algorithm>
#include <map>

#include "semtrade/baselines.hpp"
#include "semtrade/double_auction.hpp"
#include "semtrade/metrics.hpp"
#include "semtrade/rng.hpp"
#include "semtrade/scenario.hpp"

using namespace semtrade;

namespace {

Seller make_seller(int id, double ask) {
  Seller s;
  s.id = id;
  s.ask = ask;
  s.cost_params.expected_transmissions = 1.0;
  s.cost_params.rate = 1.0;
  return s;
}

Buyer make_buyer(int id, std::vector<double> bids) {
  Buyer b;
  b.id = id;
  b.bids = std::move(bids);
  return b;
}

const ScoreCurve& dropout_curve() {
  static const ScoreCurve curve =
      ScoreCurve::load(std::string(SEMTRADE_DATA_DIR) + "/score_curve_dropout.csv");
  return curve;
}

Instance random_instance(int sellers, int buyers, uint64_t seed) {
  ScenarioParams params;
  params.sellers = sellers;
  UniformTheta theta(0.0, 1.0);
  Rng rng(seed);
  return sample_instance(params, dropout_curve(), theta, buyers, rng);
}

}  // namespace

TEST_CASE("candidate determination follows the admission rule") {
  // Seller 1 clears at the second bid 0.5 >= ask 0.2; seller 2's clearing
  // price 0.3 misses its ask 0.5.
  const std::vector<Seller> sellers{make_seller(0, 0.2), make_seller(1, 0.5)};
  const std::vector<Buyer> buyers{make_buyer(0, {0.6, 0.4}), make_buyer(1, {0.5, 0.3})};

  DoubleAuctionStats stats;
  const CandidateSet cands =
      candidate_determination(buyers, sellers, SpaEngine{}, &stats);
  REQUIRE(cands.pairs.size() == 1);
  CHECK(cands.pairs[0].seller == 0);
  CHECK(cands.pairs[0].buyer == 0);
  CHECK(cands.pairs[0].price == 0.5);
  CHECK(stats.engine_calls == 2);
}

TEST_CASE("candidate determination edge cases") {
  const std::vector<Seller> sellers{make_seller(0, 0.9), make_seller(1, 0.9)};
  const std::vector<Buyer> buyers{make_buyer(0, {0.6, 0.4}), make_buyer(1, {0.5, 0.3})};
  CHECK(candidate_determination(buyers, sellers, SpaEngine{}).pairs.empty());

  // Single buyer pays the dummy second price 0, so only a zero ask admits.
  const std::vector<Seller> free_seller{make_seller(0, 0.0)};
  const std::vector<Buyer> lone{make_buyer(0, {0.7})};
  const CandidateSet cands = candidate_determination(lone, free_seller, SpaEngine{});
  REQUIRE(cands.pairs.size() == 1);
  CHECK(cands.pairs[0].price == 0.0);

  const std::vector<Seller> paid_seller{make_seller(0, 0.1)};
  CHECK(candidate_determination(lone, paid_seller, SpaEngine{}).pairs.empty());

  const std::vector<Buyer> short_bids{make_buyer(0, {0.7})};
  CHECK_THROWS_AS(candidate_determination(short_bids, sellers, SpaEngine{}),
                  InvalidInput);
}

TEST_CASE("elimination keeps the utility-maximizing seller per buyer") {
  // Buyer 0 wins both sellers; utilities are 0.8-0.5=0.3 and 0.7-0.2=0.5.
  const std::vector<Seller> sellers{make_seller(0, 0.1), make_seller(1, 0.1)};
  const std::vector<Buyer> buyers{make_buyer(0, {0.8, 0.7}), make_buyer(1, {0.5, 0.2})};

  DoubleAuctionStats stats;
  const TradeSet trades =
      run_double_auction(buyers, sellers, SpaEngine{}, 1, &stats);
  REQUIRE(trades.pairs.size() == 1);
  CHECK(trades.pairs[0].seller == 1);
  CHECK(trades.pairs[0].buyer == 0);
  CHECK(trades.pairs[0].price == 0.2);
  CHECK(stats.engine_calls == 2);
  CHECK(stats.elimination_comparisons == 1);
}

TEST_CASE("no conflicts means the trade set equals the candidate set") {
  const std::vector<Seller> sellers{make_seller(0, 0.0), make_seller(1, 0.0)};
  const std::vector<Buyer> buyers{make_buyer(0, {0.9, 0.1}), make_buyer(1, {0.2, 0.8})};
  DoubleAuctionStats stats;
  const CandidateSet cands = candidate_determination(buyers, sellers, SpaEngine{}, &stats);
  Rng tie_rng(7);
  const TradeSet trades = candidate_elimination(cands, buyers, tie_rng, &stats);
  CHECK(trades.pairs.size() == cands.pairs.size());
  CHECK(stats.elimination_comparisons == 0);
}

TEST_CASE("exact utility ties break by seeded coin with equal frequency") {
  // Both sellers clear at price 0.3 for buyer 0 with equal bids 0.5.
  const std::vector<Seller> sellers{make_seller(0, 0.0), make_seller(1, 0.0)};
  const std::vector<Buyer> buyers{make_buyer(0, {0.5, 0.5}), make_buyer(1, {0.3, 0.3})};

  const TradeSet first = run_double_auction(buyers, sellers, SpaEngine{}, 1234);
  for (int repeat = 0; repeat < 5; ++repeat) {
    const TradeSet again = run_double_auction(buyers, sellers, SpaEngine{}, 1234);
    REQUIRE(again.pairs.size() == 1);
    CHECK(again.pairs[0].seller == first.pairs[0].seller);
  }

  int keep_first = 0;
  const int trials = 10000;
  for (int seed = 0; seed < trials; ++seed) {
    const TradeSet trades =
        run_double_auction(buyers, sellers, SpaEngine{}, static_cast<uint64_t>(seed));
    REQUIRE(trades.pairs.size() == 1);
    if (trades.pairs[0].seller == 0) ++keep_first;
  }
  const double freq = static_cast<double>(keep_first) / trials;
  CHECK(freq > 0.48);
  CHECK(freq < 0.52);
}

TEST_CASE("empty buyer set clears nothing") {
  const std::vector<Seller> sellers{make_seller(0, 0.1)};
  const TradeSet trades = run_double_auction({}, sellers, SpaEngine{}, 1);
  CHECK(trades.pairs.empty());
  CHECK(trades.total_prices() == 0.0);
}

TEST_CASE("budget balance is exact and matching injective on random instances") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = random_instance(20, 6, seed);
    DoubleAuctionStats stats;
    const TradeSet trades =
        run_double_auction(inst.buyers, inst.sellers, SpaEngine{}, seed, &stats);

    CHECK(trades.total_prices() - trades.total_payments() == 0.0);
    CHECK(stats.engine_calls == 20);
    CHECK(stats.elimination_comparisons <= 20 * 19 / 2);

    std::vector<int> buyers_seen;
    for (const auto& pair : trades.pairs) {
      const Seller& s = inst.sellers[static_cast<size_t>(pair.seller)];
      const Buyer& b = inst.buyers[static_cast<size_t>(pair.buyer)];
      CHECK(pair.price >= s.ask);
      CHECK(pair.price <= b.bids[static_cast<size_t>(pair.seller)]);
      buyers_seen.push_back(pair.buyer);
    }
    std::sort(buyers_seen.begin(), buyers_seen.end());
    CHECK(std::adjacent_find(buyers_seen.begin(), buyers_seen.end()) == buyers_seen.end());

    const AgentUtilities u = compute_utilities(trades, inst.buyers, inst.sellers);
    for (size_t m = 0; m < u.seller.size(); ++m) {
      if (!trades.has_seller(static_cast<int>(m))) CHECK(u.seller[m] == 0.0);
    }
    for (size_t n = 0; n < u.buyer.size(); ++n) {
      if (trades.has_buyer(static_cast<int>(n))) {
        CHECK(u.buyer[n] >= 0.0);
      } else {
        CHECK(u.buyer[n] == 0.0);
      }
    }
  }
}

namespace {

// Literal transcription of the pairwise elimination loop: repeatedly visit
// seller pairs assigned to the same buyer and drop the lower-utility one.
TradeSet literal_pairwise_elimination(const CandidateSet& cands,
                                      const std::vector<Buyer>& buyers) {
  std::vector<TradePair> pool = cands.pairs;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < pool.size() && !changed; ++i) {
      for (size_t j = i + 1; j < pool.size() && !changed; ++j) {
        if (pool[i].buyer != pool[j].buyer) continue;
        const auto utility = [&](const TradePair& p) {
          return buyers[static_cast<size_t>(p.buyer)].bids[static_cast<size_t>(p.seller)] -
                 p.price;
        };
        const size_t drop = utility(pool[i]) <= utility(pool[j]) ? i : j;
        pool.erase(pool.begin() + static_cast<long>(drop));
        changed = true;
      }
    }
  }
  TradeSet trades;
  trades.pairs = std::move(pool);
  std::sort(trades.pairs.begin(), trades.pairs.end(),
            [](const TradePair& a, const TradePair& b) { return a.seller < b.seller; });
  return trades;
}

}  // namespace

TEST_CASE("per-buyer argmax matches the literal pairwise elimination") {
  for (uint64_t seed = 100; seed < 160; ++seed) {
    const Instance inst = random_instance(12, 5, seed);
    const CandidateSet cands =
        candidate_determination(inst.buyers, inst.sellers, SpaEngine{});

    // Random instances have no exact utility ties, so both orders agree.
    std::map<int, std::vector<double>> utilities_by_buyer;
    bool tie = false;
    for (const auto& pair : cands.pairs) {
      const double u =
          inst.buyers[static_cast<size_t>(pair.buyer)].bids[static_cast<size_t>(pair.seller)] -
          pair.price;
      auto& seen = utilities_by_buyer[pair.buyer];
      for (double v : seen) tie = tie || v == u;
      seen.push_back(u);
    }
    if (tie) continue;

    Rng tie_rng(seed);
    const TradeSet ours = candidate_elimination(cands, inst.buyers, tie_rng);
    const TradeSet literal = literal_pairwise_elimination(cands, inst.buyers);
    REQUIRE(ours.pairs.size() == literal.pairs.size());
    for (size_t k = 0; k < ours.pairs.size(); ++k) {
      CHECK(ours.pairs[k].seller == literal.pairs[k].seller);
      CHECK(ours.pairs[k].buyer == literal.pairs[k].buyer);
      CHECK(ours.pairs[k].price == literal.pairs[k].price);
    }
  }
}

TEST_CASE("identity net engine and spa engine coincide on positive bids") {
  const MonotoneNetEngine identity(MonotoneNetParams::identity(6));
  const SpaEngine spa_engine;
  for (uint64_t seed = 300; seed < 340; ++seed) {
    const Instance inst = random_instance(15, 6, seed);
    const TradeSet a = run_double_auction(inst.buyers, inst.sellers, identity, seed);
    const TradeSet b = run_double_auction(inst.buyers, inst.sellers, spa_engine, seed);
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (size_t k = 0; k < a.pairs.size(); ++k) {
      CHECK(a.pairs[k].seller == b.pairs[k].seller);
      CHECK(a.pairs[k].buyer == b.pairs[k].buyer);
      CHECK(a.pairs[k].price == b.pairs[k].price);
    }
  }
}
