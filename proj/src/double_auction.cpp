#include "semtrade/double_auction.hpp"

#include <algorithm>
#include <cmath>

#include "semtrade/baselines.hpp"

namespace semtrade {

AuctionOutcome SpaEngine::run(std::span<const double> bids) const { return spa(bids); }

MonotoneNetEngine::MonotoneNetEngine(MonotoneNetParams params)
    : params_(std::move(params)) {
  params_.validate();
}

AuctionOutcome MonotoneNetEngine::run(std::span<const double> bids) const {
  return infer(params_, bids);
}

double TradeSet::total_prices() const {
  double sum = 0.0;
  for (const auto& p : pairs) sum += p.price;
  return sum;
}

double TradeSet::total_payments() const {
  // Payment to the seller equals the buyer's price pair by pair; summing in
  // the same order keeps the identity exact in floating point.
  double sum = 0.0;
  for (const auto& p : pairs) sum += p.price;
  return sum;
}

bool TradeSet::has_seller(int seller) const { return pair_for_seller(seller) != nullptr; }
bool TradeSet::has_buyer(int buyer) const { return pair_for_buyer(buyer) != nullptr; }

const TradePair* TradeSet::pair_for_seller(int seller) const {
  for (const auto& p : pairs) {
    if (p.seller == seller) return &p;
  }
  return nullptr;
}

const TradePair* TradeSet::pair_for_buyer(int buyer) const {
  for (const auto& p : pairs) {
    if (p.buyer == buyer) return &p;
  }
  return nullptr;
}

CandidateSet candidate_determination(const std::vector<Buyer>& buyers,
                                     const std::vector<Seller>& sellers,
                                     const AuctionEngine& engine,
                                     DoubleAuctionStats* stats) {
  const size_t seller_count = sellers.size();
  for (const auto& buyer : buyers) {
    if (buyer.bids.size() != seller_count) {
      throw InvalidInput("double auction: bid vector length must equal seller count");
    }
  }

  CandidateSet candidates;
  if (buyers.empty()) return candidates;

  std::vector<double> column(buyers.size());
  for (size_t m = 0; m < seller_count; ++m) {
    for (size_t n = 0; n < buyers.size(); ++n) column[n] = buyers[n].bids[m];
    const AuctionOutcome outcome = engine.run(column);
    if (stats) ++stats->engine_calls;
    if (outcome.has_winner() && outcome.payment >= sellers[m].ask) {
      candidates.pairs.push_back(TradePair{static_cast<int>(m),
                                           *outcome.winner, outcome.payment});
    }
  }
  return candidates;
}

TradeSet candidate_elimination(const CandidateSet& candidates,
                               const std::vector<Buyer>& buyers, Rng& tie_rng,
                               DoubleAuctionStats* stats) {
  // Candidate pairs grouped per buyer, seller order preserved (ascending).
  std::vector<std::vector<const TradePair*>> by_buyer(buyers.size());
  for (const auto& pair : candidates.pairs) {
    if (pair.buyer < 0 || static_cast<size_t>(pair.buyer) >= buyers.size()) {
      throw InvalidInput("double auction: candidate references unknown buyer");
    }
    by_buyer[static_cast<size_t>(pair.buyer)].push_back(&pair);
  }

  TradeSet trades;
  for (size_t n = 0; n < by_buyer.size(); ++n) {
    const auto& group = by_buyer[n];
    if (group.empty()) continue;
    const TradePair* kept = group.front();
    double kept_utility = buyers[n].bids[static_cast<size_t>(kept->seller)] - kept->price;
    for (size_t k = 1; k < group.size(); ++k) {
      const TradePair* challenger = group[k];
      const double utility =
          buyers[n].bids[static_cast<size_t>(challenger->seller)] - challenger->price;
      if (stats) ++stats->elimination_comparisons;
      if (utility > kept_utility || (utility == kept_utility && tie_rng.coin())) {
        kept = challenger;
        kept_utility = utility;
      }
    }
    trades.pairs.push_back(*kept);
  }
  std::sort(trades.pairs.begin(), trades.pairs.end(),
            [](const TradePair& a, const TradePair& b) { return a.seller < b.seller; });
  return trades;
}

TradeSet run_double_auction(const std::vector<Buyer>& buyers,
                            const std::vector<Seller>& sellers,
                            const AuctionEngine& engine, uint64_t seed,
                            DoubleAuctionStats* stats) {
  const CandidateSet candidates = candidate_determination(buyers, sellers, engine, stats);
  Rng tie_rng(seed);
  return candidate_elimination(candidates, buyers, tie_rng, stats);
}

AgentUtilities compute_utilities(const TradeSet& trades,
                                 const std::vector<Buyer>& truthful_buyers,
                                 const std::vector<Seller>& sellers) {
  AgentUtilities u;
  u.seller.assign(sellers.size(), 0.0);
  u.buyer.assign(truthful_buyers.size(), 0.0);
  for (const auto& pair : trades.pairs) {
    const auto& seller = sellers[static_cast<size_t>(pair.seller)];
    u.seller[static_cast<size_t>(pair.seller)] =
        seller_utility(pair.price, total_cost(seller.cost_params), true);
    const double value =
        truthful_buyers[static_cast<size_t>(pair.buyer)].bids[static_cast<size_t>(pair.seller)];
    u.buyer[static_cast<size_t>(pair.buyer)] = buyer_utility(value, pair.price, true);
  }
  return u;
}

}  // namespace semtrade
