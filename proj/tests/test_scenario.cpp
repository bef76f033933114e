#include <doctest.h>

#include <cmath>

#include "semtrade/scenario.hpp"
#include "semtrade/verification.hpp"

using namespace semtrade;

namespace {

const ScoreCurve& curve() {
  static const ScoreCurve c =
      ScoreCurve::load(std::string(SEMTRADE_DATA_DIR) + "/score_curve_dropout.csv");
  return c;
}

}  // namespace

TEST_CASE("sampled instances respect the parameter table") {
  ScenarioParams params;
  UniformTheta theta(0.0, 1.0);
  Rng rng(1);
  const Instance inst = sample_instance(params, curve(), theta, 6, rng);

  REQUIRE(inst.sellers.size() == 20);
  REQUIRE(inst.buyers.size() == 6);
  for (const auto& s : inst.sellers) {
    CHECK(s.cost_params.data_size >= 10.0);
    CHECK(s.cost_params.data_size <= 100.0);
    CHECK(s.cost_params.model_price >= 0.0);
    CHECK(s.cost_params.model_price <= 1.0);
    CHECK(s.ask == total_cost(s.cost_params));  // truthful ask
    CHECK(s.scores.sim >= 0.0);
    CHECK(s.scores.sim <= 1.0);
  }
  for (const auto& b : inst.buyers) {
    CHECK(b.preference.lambda + b.preference.beta == 1.0);
    REQUIRE(b.bids.size() == 20);
    for (size_t m = 0; m < b.bids.size(); ++m) {
      CHECK(b.bids[m] ==
            info_valuation(b.preference, inst.sellers[m].scores));  // truthful bid
    }
  }
}

TEST_CASE("instance sampling is deterministic in the seed") {
  ScenarioParams params;
  params.sellers = 5;
  UniformTheta theta(0.0, 1.0);
  Rng a(77), b(77), c(78);
  const Instance ia = sample_instance(params, curve(), theta, 3, a);
  const Instance ib = sample_instance(params, curve(), theta, 3, b);
  const Instance ic = sample_instance(params, curve(), theta, 3, c);
  CHECK(ia.sellers[0].ask == ib.sellers[0].ask);
  CHECK(ia.buyers[2].bids == ib.buyers[2].bids);
  CHECK(ia.sellers[0].ask != ic.sellers[0].ask);
}

TEST_CASE("higher model prices buy better scores on average") {
  ScenarioParams params;
  params.sellers = 40;
  UniformTheta theta(0.0, 1.0);
  Rng rng(5);
  double high_sum = 0.0, low_sum = 0.0;
  long high_n = 0, low_n = 0;
  for (int r = 0; r < 100; ++r) {
    const Instance inst = sample_instance(params, curve(), theta, 2, rng);
    for (const auto& s : inst.sellers) {
      if (s.cost_params.model_price >= 0.5) {
        high_sum += s.scores.sim;
        ++high_n;
      } else {
        low_sum += s.scores.sim;
        ++low_n;
      }
    }
  }
  CHECK(high_sum / high_n > low_sum / low_n);
}

TEST_CASE("fixed and model-trade theta sources work") {
  ScenarioParams params;
  params.sellers = 4;
  Rng rng(9);
  const FixedTheta fixed(0.25);
  const Instance inst = sample_instance(params, curve(), fixed, 2, rng);
  for (const auto& s : inst.sellers) CHECK(s.cost_params.model_price == 0.25);

  const ModelTradeTheta model_trade(MonotoneNetParams::identity(6), 0.2, 0.9);
  Rng rng2(10);
  for (int i = 0; i < 50; ++i) {
    const double theta = model_trade.sample(rng2);
    CHECK(theta >= 0.0);
    CHECK(theta <= 0.9);  // a second price never exceeds the bid range
  }
}

TEST_CASE("market sweep aggregates are sane and deterministic") {
  ScenarioParams params;
  params.sellers = 8;
  UniformTheta theta(0.0, 1.0);
  const MonotoneNetEngine identity2(MonotoneNetParams::identity(2));
  const MonotoneNetEngine identity4(MonotoneNetParams::identity(4));
  const auto engine_for = [&](int n) -> const AuctionEngine* {
    return n == 2 ? static_cast<const AuctionEngine*>(&identity2) : &identity4;
  };

  const SweepResult a =
      run_market_sweep(params, curve(), theta, {2, 4}, 50, 123, engine_for, 1);
  const SweepResult b =
      run_market_sweep(params, curve(), theta, {2, 4}, 50, 123, engine_for, 4);

  REQUIRE(a.cells.size() == 4);  // two engines x two buyer counts
  for (size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].engine == b.cells[i].engine);
    CHECK(a.cells[i].mean_winning_seller_utility == b.cells[i].mean_winning_seller_utility);
    CHECK(a.cells[i].winning_pairs == b.cells[i].winning_pairs);
    CHECK(a.cells[i].mean_winning_pairs <= 8.0);
    CHECK(a.cells[i].high_theta_wins + a.cells[i].low_theta_wins ==
          a.cells[i].winning_pairs);
  }

  // With an identity net both engines clear the same trades.
  CHECK(a.cells[0].winning_pairs == a.cells[1].winning_pairs);
  CHECK(a.cells[0].mean_winning_seller_utility ==
        doctest::Approx(a.cells[1].mean_winning_seller_utility).epsilon(1e-12));
}

TEST_CASE("deviation grid covers both endpoints") {
  const std::vector<double> grid = deviation_grid(0.01, 1.0, 50);
  REQUIRE(grid.size() == 50);
  CHECK(grid.front() == 0.01);
  CHECK(grid.back() == 1.0);
  CHECK_THROWS_AS(deviation_grid(1.0, 0.5, 10), InvalidInput);
}

TEST_CASE("parallel map preserves slot order") {
  std::vector<long> out(100, -1);
  parallel_for_indexed(100, 4, [&](long i) { out[static_cast<size_t>(i)] = i * i; });
  for (long i = 0; i < 100; ++i) CHECK(out[static_cast<size_t>(i)] == i * i);
}
