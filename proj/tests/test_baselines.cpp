#include <doctest.h>

#include <cmath>

#include "semtrade/baselines.hpp"
#include "semtrade/rng.hpp"

using namespace semtrade;

TEST_CASE("second-price auction") {
  const AuctionOutcome out = spa(std::vector<double>{0.3, 0.2, 0.1});
  REQUIRE(out.has_winner());
  CHECK(*out.winner == 0);
  CHECK(out.payment == 0.2);

  const AuctionOutcome solo = spa(std::vector<double>{0.5});
  CHECK(*solo.winner == 0);
  CHECK(solo.payment == 0.0);

  const AuctionOutcome tie = spa(std::vector<double>{0.2, 0.2});
  CHECK(*tie.winner == 0);
  CHECK(tie.payment == 0.2);

  CHECK_THROWS_AS(spa(std::vector<double>{}), InvalidInput);
  CHECK_THROWS_AS(spa(std::vector<double>{-0.1}), InvalidInput);
}

TEST_CASE("first-price auction") {
  const AuctionOutcome out = first_price(std::vector<double>{0.3, 0.2});
  CHECK(*out.winner == 0);
  CHECK(out.payment == 0.3);
  CHECK(first_price(std::vector<double>{0.5}).payment == 0.5);
  const AuctionOutcome tie = first_price(std::vector<double>{0.2, 0.2});
  CHECK(*tie.winner == 0);
  CHECK(tie.payment == 0.2);
}

TEST_CASE("spa and first price pick the same winner, payments differ") {
  Rng rng(17);
  std::vector<double> bids(6);
  for (int i = 0; i < 300; ++i) {
    for (double& b : bids) b = rng.uniform(0.0, 1.0);
    const AuctionOutcome s = spa(bids);
    const AuctionOutcome f = first_price(bids);
    CHECK(*s.winner == *f.winner);
    CHECK(f.payment >= s.payment);
  }
}

TEST_CASE("monte-carlo spa revenue matches the order-statistics closed form") {
  // U[0, 0.4], 10 bidders: expected second-highest = 0.4 * 9 / 11.
  const RevenueEstimate est = spa_uniform_revenue(10, 0.0, 0.4, 1000000, 7);
  const double closed_form = 0.4 * 9.0 / 11.0;
  CHECK(std::abs(est.mean_revenue - closed_form) / closed_form < 0.01);
}

TEST_CASE("myerson oracle reserve behaviour") {
  // Single bidder, reserve h/2: revenue = (h/2) * P(v >= h/2) = h/4.
  const RevenueEstimate solo = myerson_uniform_oracle(1, 0.0, 0.4, 1000000, 11);
  CHECK(solo.mean_revenue == doctest::Approx(0.1).epsilon(0.02));

  // Two disjoint million-draw runs agree within three standard errors.
  const RevenueEstimate a = myerson_uniform_oracle(10, 0.0, 0.4, 1000000, 100);
  const RevenueEstimate b = myerson_uniform_oracle(10, 0.0, 0.4, 1000000, 200);
  CHECK(std::abs(a.mean_revenue - b.mean_revenue) < 3.0 * 2e-4);

  // The reserve never hurts a matched uniform distribution.
  const RevenueEstimate plain = spa_uniform_revenue(10, 0.0, 0.4, 1000000, 300);
  CHECK(plain.mean_revenue <= a.mean_revenue + 3.0 * 2e-4);

  CHECK_THROWS_AS(myerson_uniform_oracle(10, 0.4, 0.4, 100, 1), InvalidInput);
  CHECK_THROWS_AS(myerson_uniform_oracle(0, 0.0, 0.4, 100, 1), InvalidInput);
  CHECK_THROWS_AS(myerson_uniform_oracle(10, 0.0, 0.4, 0, 1), InvalidInput);
}

TEST_CASE("oracle block merging is deterministic across draw counts") {
  const RevenueEstimate once = myerson_uniform_oracle(5, 0.0, 1.0, 200000, 42);
  const RevenueEstimate again = myerson_uniform_oracle(5, 0.0, 1.0, 200000, 42);
  CHECK(once.mean_revenue == again.mean_revenue);
}

TEST_CASE("spa double auction is the two-stage mechanism with the spa engine") {
  std::vector<Seller> sellers(2);
  sellers[0].id = 0;
  sellers[0].ask = 0.1;
  sellers[0].cost_params.expected_transmissions = 1.0;
  sellers[1] = sellers[0];
  sellers[1].id = 1;
  sellers[1].ask = 0.2;

  std::vector<Buyer> buyers(2);
  buyers[0].id = 0;
  buyers[0].bids = {0.8, 0.7};
  buyers[1].id = 1;
  buyers[1].bids = {0.5, 0.1};

  DoubleAuctionStats stats;
  const TradeSet direct = spa_double_auction(buyers, sellers, 3, &stats);
  const TradeSet composed = run_double_auction(buyers, sellers, SpaEngine{}, 3);
  REQUIRE(direct.pairs.size() == composed.pairs.size());
  for (size_t i = 0; i < direct.pairs.size(); ++i) {
    CHECK(direct.pairs[i].seller == composed.pairs[i].seller);
    CHECK(direct.pairs[i].price == composed.pairs[i].price);
  }
  CHECK(stats.engine_calls == 2);
  CHECK(spa_double_auction({}, sellers, 3).pairs.empty());
}
