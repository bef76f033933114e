#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "semtrade/baselines.hpp"
#include "semtrade/monotone_auction.hpp"
#include "semtrade/rng.hpp"

using namespace semtrade;

namespace {

MonotoneNetParams affine_net(int bidders, double w, double beta, double kappa = 10.0) {
  MonotoneNetParams p;
  p.bidder_count = bidders;
  p.groups = 1;
  p.units = 1;
  p.kappa = kappa;
  p.log_weights.assign(static_cast<size_t>(bidders), std::log(w));
  p.biases.assign(static_cast<size_t>(bidders), beta);
  return p;
}

MonotoneNetParams random_net(Rng& rng, int bidders, int groups, int units) {
  MonotoneNetParams p;
  p.bidder_count = bidders;
  p.groups = groups;
  p.units = units;
  p.kappa = 10.0;
  const size_t total = static_cast<size_t>(bidders * groups * units);
  p.log_weights.resize(total);
  p.biases.resize(total);
  for (size_t i = 0; i < total; ++i) {
    p.log_weights[i] = rng.uniform(-2.0, 2.0);
    p.biases[i] = rng.uniform(-1.0, 1.0);
  }
  return p;
}

}  // namespace

TEST_CASE("transform evaluates the affine min-max") {
  const MonotoneNetParams identity = MonotoneNetParams::identity(1);
  CHECK(transform(identity, 0, 0.37) == 0.37);

  const MonotoneNetParams net = affine_net(1, 2.0, 0.1);
  CHECK(transform(net, 0, 0.5) == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("transform is strictly increasing for any parameters") {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const MonotoneNetParams p =
        random_net(rng, rng.uniform_int(1, 4), rng.uniform_int(1, 4), rng.uniform_int(1, 4));
    const int m = rng.uniform_int(0, p.bidder_count - 1);
    double b1 = rng.uniform(0.0, 10.0);
    double b2 = rng.uniform(0.0, 10.0);
    if (b1 == b2) continue;
    if (b1 > b2) std::swap(b1, b2);
    CHECK(transform(p, m, b1) < transform(p, m, b2));
  }
}

TEST_CASE("inverse transform undoes the transform") {
  const MonotoneNetParams identity = MonotoneNetParams::identity(1);
  CHECK(inverse_transform(identity, 0, 0.8) == 0.8);

  const MonotoneNetParams net = affine_net(1, 2.0, 0.1);
  CHECK(inverse_transform(net, 0, 1.1) == doctest::Approx(0.5).epsilon(1e-12));

  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    const MonotoneNetParams p =
        random_net(rng, 1, rng.uniform_int(1, 5), rng.uniform_int(1, 5));
    const double b = rng.uniform(0.0, 1.0);
    CHECK(std::abs(inverse_transform(p, 0, transform(p, 0, b)) - b) <= 1e-6);
  }
}

TEST_CASE("spread identity start is bit-exact to the identity") {
  const MonotoneNetParams p = MonotoneNetParams::spread_identity(3, 5, 10, 10.0);
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const double b = rng.uniform(0.0, 2.0);
    for (int m = 0; m < 3; ++m) {
      CHECK(transform(p, m, b) == b);
      CHECK(inverse_transform(p, m, b) == b);
    }
  }
}

TEST_CASE("soft allocation is a distribution with symmetry") {
  const MonotoneNetParams p = MonotoneNetParams::identity(2);
  const std::vector<double> bids{0.4, 0.4};
  const auto z = soft_allocate(p, bids);
  REQUIRE(z.size() == 3);
  CHECK(std::abs(z[0] + z[1] + z[2] - 1.0) <= 1e-12);
  CHECK(z[0] == doctest::Approx(z[1]).epsilon(1e-12));

  // Direct evaluation: bids (0.3, 0.1), kappa 10 -> weights e^3, e^1, e^0.
  const auto z2 = soft_allocate(p, std::vector<double>{0.3, 0.1});
  const double denom = std::exp(3.0) + std::exp(1.0) + 1.0;
  CHECK(z2[0] == doctest::Approx(std::exp(3.0) / denom).epsilon(1e-9));
  CHECK(z2[1] == doctest::Approx(std::exp(1.0) / denom).epsilon(1e-9));
  CHECK(z2[2] == doctest::Approx(1.0 / denom).epsilon(1e-9));
}

TEST_CASE("soft allocation approaches one-hot for large kappa") {
  const MonotoneNetParams p = MonotoneNetParams::identity(3, 500.0);
  const auto z = soft_allocate(p, std::vector<double>{0.5, 0.4, 0.2});
  CHECK(z[0] > 1.0 - 1e-9);
  CHECK(std::abs(z[0] + z[1] + z[2] + z[3] - 1.0) <= 1e-12);
}

TEST_CASE("spa0 payment is the best competing transformed bid") {
  const MonotoneNetParams p = MonotoneNetParams::identity(2);
  CHECK(spa0_payment(p, std::vector<double>{0.3, 0.2}, 0) == 0.2);

  const MonotoneNetParams single = MonotoneNetParams::identity(1);
  CHECK(spa0_payment(single, std::vector<double>{0.5}, 0) == 0.0);

  // All competitors transformed negative: ReLU floors at the dummy 0.
  MonotoneNetParams shifted = affine_net(2, 1.0, -1.0);
  CHECK(spa0_payment(shifted, std::vector<double>{0.3, 0.2}, 0) == 0.0);
}

TEST_CASE("hard inference reduces to a second-price auction on the identity") {
  const MonotoneNetParams p = MonotoneNetParams::identity(3);
  const AuctionOutcome out = infer(p, std::vector<double>{0.3, 0.2, 0.1});
  REQUIRE(out.has_winner());
  CHECK(*out.winner == 0);
  CHECK(out.payment == 0.2);

  CHECK_FALSE(infer(p, std::vector<double>{0.0, 0.0, 0.0}).has_winner());

  const AuctionOutcome tie = infer(p, std::vector<double>{0.2, 0.2});
  REQUIRE(tie.has_winner());
  CHECK(*tie.winner == 0);
  CHECK(tie.payment == 0.2);
}

TEST_CASE("identity inference matches the spa oracle on random profiles") {
  const MonotoneNetParams p = MonotoneNetParams::identity(10);
  Rng rng(44);
  std::vector<double> bids(10);
  for (int i = 0; i < 1000; ++i) {
    for (double& b : bids) b = rng.uniform(1e-9, 1.0);
    const AuctionOutcome net = infer(p, bids);
    const AuctionOutcome oracle = spa(bids);
    REQUIRE(net.has_winner());
    CHECK(*net.winner == *oracle.winner);
    CHECK(net.payment == oracle.payment);
  }
}

TEST_CASE("inference is individually rational for arbitrary parameters") {
  Rng rng(45);
  std::vector<double> bids;
  for (int i = 0; i < 1000; ++i) {
    const MonotoneNetParams p =
        random_net(rng, rng.uniform_int(1, 6), rng.uniform_int(1, 3), rng.uniform_int(1, 3));
    bids.resize(static_cast<size_t>(p.bidder_count));
    for (double& b : bids) b = rng.uniform(0.0, 1.0);
    const AuctionOutcome out = infer(p, bids);
    if (out.has_winner()) {
      CHECK(out.payment >= 0.0);
      CHECK(out.payment <= bids[static_cast<size_t>(*out.winner)]);
    }
  }
}

TEST_CASE("inference is incentive compatible for fixed opponents") {
  Rng rng(46);
  std::vector<double> bids(5);
  for (int instance = 0; instance < 50; ++instance) {
    const MonotoneNetParams p = random_net(rng, 5, 2, 3);
    for (double& b : bids) b = rng.uniform(0.0, 1.0);
    const int deviator = rng.uniform_int(0, 4);
    const double value = bids[static_cast<size_t>(deviator)];

    const AuctionOutcome truthful = infer(p, bids);
    const double truthful_utility =
        truthful.has_winner() && *truthful.winner == deviator ? value - truthful.payment
                                                              : 0.0;
    std::vector<double> deviated = bids;
    for (int g = 0; g <= 60; ++g) {
      deviated[static_cast<size_t>(deviator)] = static_cast<double>(g) / 60.0;
      const AuctionOutcome out = infer(p, deviated);
      const double utility =
          out.has_winner() && *out.winner == deviator ? value - out.payment : 0.0;
      CHECK(utility <= truthful_utility + 1e-9);
    }
  }
}

TEST_CASE("training rejects bad input") {
  CHECK_THROWS_AS(train({}, TrainOptions{}), InvalidInput);
  CHECK_THROWS_AS(train({{0.1, 0.2}, {0.1}}, TrainOptions{}), InvalidInput);
  TrainOptions bad;
  bad.epochs = 0;
  CHECK_THROWS_AS(train({{0.1, 0.2}}, bad), InvalidInput);
}

TEST_CASE("training is deterministic and never below the spa start") {
  Rng rng(47);
  std::vector<std::vector<double>> samples(200, std::vector<double>(4));
  for (auto& profile : samples) {
    for (double& b : profile) b = rng.uniform(0.0, 0.4);
  }
  TrainOptions opt;
  opt.epochs = 60;
  opt.groups = 2;
  opt.units = 3;
  opt.seed = 9;

  const auto [net_a, report_a] = train(samples, opt);
  const auto [net_b, report_b] = train(samples, opt);
  CHECK(net_a.log_weights == net_b.log_weights);
  CHECK(net_a.biases == net_b.biases);
  CHECK(report_a.epoch_loss == report_b.epoch_loss);

  REQUIRE(report_a.epoch_loss.size() == 60);
  for (size_t e = 0; e < report_a.epoch_loss.size(); ++e) {
    CHECK(report_a.epoch_loss[e] == -report_a.epoch_soft_revenue[e]);
  }

  // Snapshot selection keeps at least the identity start, which is exact SPA.
  double spa_revenue = 0.0;
  for (const auto& profile : samples) spa_revenue += spa(profile).payment;
  spa_revenue /= static_cast<double>(samples.size());
  CHECK(report_a.final_train_revenue >= spa_revenue);
  CHECK(hard_revenue(net_a, samples) == report_a.final_train_revenue);
}

TEST_CASE("analytic gradient matches finite differences away from ties") {
  Rng rng(48);
  MonotoneNetParams p = random_net(rng, 3, 2, 2);
  std::vector<std::vector<double>> batch{{0.31, 0.62, 0.17}, {0.52, 0.18, 0.44}};

  std::vector<double> g_logw, g_beta;
  loss_and_gradient(p, batch, g_logw, g_beta);

  const double h = 1e-5;
  for (size_t i = 0; i < p.log_weights.size(); ++i) {
    const double saved = p.log_weights[i];
    p.log_weights[i] = saved + h;
    const double up = batch_loss(p, batch);
    p.log_weights[i] = saved - h;
    const double down = batch_loss(p, batch);
    p.log_weights[i] = saved;
    const double fd = (up - down) / (2.0 * h);
    if (std::abs(fd) < 1e-10 && std::abs(g_logw[i]) < 1e-10) continue;
    CHECK(std::abs(g_logw[i] - fd) / std::max({std::abs(fd), std::abs(g_logw[i]), 1e-8}) <=
          1e-4);
  }
}

TEST_CASE("parameter persistence round-trips bit-exactly and rejects tampering") {
  Rng rng(49);
  const MonotoneNetParams p = random_net(rng, 4, 3, 2);

  std::ostringstream out;
  save_params(p, out);
  std::istringstream in(out.str());
  const MonotoneNetParams q = load_params(in, "mem");
  CHECK(q.bidder_count == p.bidder_count);
  CHECK(q.groups == p.groups);
  CHECK(q.units == p.units);
  CHECK(q.kappa == p.kappa);
  CHECK(q.log_weights == p.log_weights);
  CHECK(q.biases == p.biases);

  // Re-saving the loaded net reproduces the file byte for byte.
  std::ostringstream out2;
  save_params(q, out2);
  CHECK(out.str() == out2.str());

  // Any edit, e.g. negating a stored weight, fails the checksum.
  std::string tampered = out.str();
  const size_t pos = tampered.find("log_weights\n") + 12;
  tampered.insert(pos, "-");
  std::istringstream tin(tampered);
  CHECK_THROWS_AS(load_params(tin, "mem"), InvalidInput);

  std::istringstream junk("not a net\n");
  CHECK_THROWS_AS(load_params(junk, "mem"), InvalidInput);
}

TEST_CASE("parameter validation rejects malformed grids") {
  MonotoneNetParams p = MonotoneNetParams::identity(2);
  p.kappa = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = MonotoneNetParams::identity(2);
  p.log_weights.pop_back();
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = MonotoneNetParams::identity(2);
  p.biases[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(p.validate(), InvalidInput);
}
