#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "semtrade/double_auction.hpp"
#include "semtrade/monotone_auction.hpp"

namespace semtrade {

// Second-price auction: highest bidder wins (lowest index on ties) and pays
// the second-highest bid, or zero when bidding alone.
AuctionOutcome spa(std::span<const double> bids);

// First-price auction: highest bidder wins and pays its own bid.
AuctionOutcome first_price(std::span<const double> bids);

struct RevenueEstimate {
  std::string mechanism;
  double mean_revenue = 0.0;
  long samples = 0;
  uint64_t seed = 0;
};

// Monte-Carlo revenue of a second-price auction with reserve lo + (hi-lo)/2
// over i.i.d. U[lo,hi] bidders; with lo = 0 the reserve is hi/2 and the
// mechanism is revenue-optimal for that family. Draw blocks use derived
// seeds and merge in block order, so the estimate is deterministic.
RevenueEstimate myerson_uniform_oracle(int bidders, double lo, double hi,
                                       long draws, uint64_t seed);

// Same harness with no reserve: plain SPA revenue. Cross-checks the
// order-statistics closed form hi * (M-1) / (M+1) for lo = 0.
RevenueEstimate spa_uniform_revenue(int bidders, double lo, double hi, long draws,
                                    uint64_t seed);

// The baseline double auction: the same two stages with the plain SPA in
// place of the trained engine.
TradeSet spa_double_auction(const std::vector<Buyer>& buyers,
                            const std::vector<Seller>& sellers, uint64_t seed,
                            DoubleAuctionStats* stats = nullptr);

}  // namespace semtrade
