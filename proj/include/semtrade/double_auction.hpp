#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "semtrade/market.hpp"
#include "semtrade/monotone_auction.hpp"
#include "semtrade/rng.hpp"

namespace semtrade {

// Single-item auction plugged into the double auction: a bid vector in,
// winner and payment out. Implementations must be safe to share across
// concurrent runs.
class AuctionEngine {
 public:
  virtual ~AuctionEngine() = default;
  virtual AuctionOutcome run(std::span<const double> bids) const = 0;
  virtual std::string_view name() const = 0;
};

// Plain second-price auction with zero reserve.
class SpaEngine final : public AuctionEngine {
 public:
  AuctionOutcome run(std::span<const double> bids) const override;
  std::string_view name() const override { return "spa"; }
};

// Trained monotone-transform auction.
class MonotoneNetEngine final : public AuctionEngine {
 public:
  explicit MonotoneNetEngine(MonotoneNetParams params);
  AuctionOutcome run(std::span<const double> bids) const override;
  std::string_view name() const override { return "dla"; }
  const MonotoneNetParams& params() const { return params_; }

 private:
  MonotoneNetParams params_;
};

// One matched pair. The price the buyer pays and the payment the seller
// receives are the same value by construction.
struct TradePair {
  int seller = 0;
  int buyer = 0;
  double price = 0.0;
};

// Stage-one output: per-seller winning buyer and clearing price for every
// seller whose ask was met. Sellers ascend; a buyer may appear several times.
struct CandidateSet {
  std::vector<TradePair> pairs;
};

// Final outcome: at most one seller per buyer. Prices are carried over
// unchanged from the candidate stage.
struct TradeSet {
  std::vector<TradePair> pairs;

  double total_prices() const;
  double total_payments() const;
  bool has_seller(int seller) const;
  bool has_buyer(int buyer) const;
  const TradePair* pair_for_seller(int seller) const;
  const TradePair* pair_for_buyer(int buyer) const;
};

struct DoubleAuctionStats {
  long engine_calls = 0;
  long elimination_comparisons = 0;
};

// Stage one: for each seller, run the engine over that seller's bid column;
// admit the winner when the engine payment covers the ask.
CandidateSet candidate_determination(const std::vector<Buyer>& buyers,
                                     const std::vector<Seller>& sellers,
                                     const AuctionEngine& engine,
                                     DoubleAuctionStats* stats = nullptr);

// Stage two: each buyer keeps the candidate seller with the highest utility
// (reported bid minus price). Exact ties are broken by a seeded coin, with
// buyers visited in ascending id and their candidate sellers in ascending id.
TradeSet candidate_elimination(const CandidateSet& candidates,
                               const std::vector<Buyer>& buyers, Rng& tie_rng,
                               DoubleAuctionStats* stats = nullptr);

TradeSet run_double_auction(const std::vector<Buyer>& buyers,
                            const std::vector<Seller>& sellers,
                            const AuctionEngine& engine, uint64_t seed,
                            DoubleAuctionStats* stats = nullptr);

// Utilities realized by a trade set against the agents' true costs and
// valuations: winners get payment minus cost (sellers) or valuation minus
// price (buyers), losers exactly zero. truthful_buyers carries the
// undeviated bids so a deviator's utility is still measured at true value.
struct AgentUtilities {
  std::vector<double> seller;
  std::vector<double> buyer;
};
AgentUtilities compute_utilities(const TradeSet& trades,
                                 const std::vector<Buyer>& truthful_buyers,
                                 const std::vector<Seller>& sellers);

}  // namespace semtrade
