#include "semtrade/baselines.hpp"

#include <cmath>
#include <limits>

#include "semtrade/rng.hpp"

namespace semtrade {

namespace {

void check_bid_vector(std::span<const double> bids) {
  if (bids.empty()) throw InvalidInput("auction: bid vector must be nonempty");
  for (double b : bids) {
    if (!std::isfinite(b) || b < 0.0) {
      throw InvalidInput("auction: bids must be finite and nonnegative");
    }
  }
}

}  // namespace

AuctionOutcome spa(std::span<const double> bids) {
  check_bid_vector(bids);
  size_t winner = 0;
  double best = bids[0];
  double second = -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < bids.size(); ++i) {
    if (bids[i] > best) {
      second = best;
      best = bids[i];
      winner = i;
    } else if (bids[i] > second) {
      second = bids[i];
    }
  }
  const double payment = bids.size() == 1 ? 0.0 : second;
  return AuctionOutcome{static_cast<int>(winner), payment};
}

AuctionOutcome first_price(std::span<const double> bids) {
  check_bid_vector(bids);
  size_t winner = 0;
  for (size_t i = 1; i < bids.size(); ++i) {
    if (bids[i] > bids[winner]) winner = i;
  }
  return AuctionOutcome{static_cast<int>(winner), bids[winner]};
}

namespace {

constexpr long kOracleBlock = 1 << 16;

RevenueEstimate mc_reserve_spa(const std::string& label, int bidders, double lo,
                               double hi, double reserve, long draws, uint64_t seed) {
  if (!(lo >= 0.0) || !(lo < hi) || !std::isfinite(hi)) {
    throw InvalidInput("oracle: need 0 <= lo < hi");
  }
  if (bidders < 1) throw InvalidInput("oracle: need at least one bidder");
  if (draws < 1) throw InvalidInput("oracle: need at least one draw");

  double total = 0.0;
  long done = 0;
  for (long block = 0; done < draws; ++block) {
    Rng rng(mix_seed(seed, static_cast<uint64_t>(block)));
    const long count = std::min<long>(kOracleBlock, draws - done);
    double block_sum = 0.0;
    for (long i = 0; i < count; ++i) {
      double best = -1.0, second = -1.0;
      for (int m = 0; m < bidders; ++m) {
        const double v = rng.uniform(lo, hi);
        if (v > best) {
          second = best;
          best = v;
        } else if (v > second) {
          second = v;
        }
      }
      if (best >= reserve) {
        block_sum += std::max(reserve, bidders == 1 ? 0.0 : second);
      }
    }
    total += block_sum;
    done += count;
  }
  return RevenueEstimate{label, total / static_cast<double>(draws), draws, seed};
}

}  // namespace

RevenueEstimate myerson_uniform_oracle(int bidders, double lo, double hi,
                                       long draws, uint64_t seed) {
  const double reserve = lo + (hi - lo) / 2.0;
  return mc_reserve_spa("myerson_oracle", bidders, lo, hi, reserve, draws, seed);
}

RevenueEstimate spa_uniform_revenue(int bidders, double lo, double hi, long draws,
                                    uint64_t seed) {
  return mc_reserve_spa("spa", bidders, lo, hi, 0.0, draws, seed);
}

TradeSet spa_double_auction(const std::vector<Buyer>& buyers,
                            const std::vector<Seller>& sellers, uint64_t seed,
                            DoubleAuctionStats* stats) {
  return run_double_auction(buyers, sellers, SpaEngine{}, seed, stats);
}

}  // namespace semtrade
