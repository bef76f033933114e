#pragma once

#include <vector>

#include "semtrade/common.hpp"

namespace semtrade {

// Weights an agent places on the two semantic performance metrics.
// beta is derived from lambda so the pair always sums to one.
struct Preference {
  double lambda = 1.0;
  double beta = 0.0;

  static Preference from_lambda(double lambda);
};

struct SemanticScores {
  double sim = 0.0;
  double bleu = 0.0;

  static SemanticScores checked(double sim, double bleu);
};

// Per-device cost inputs: data collection, semantic extraction, transmission
// and the amortized price of the semantic model.
struct CostParams {
  double data_size = 0.0;               // words collected
  double unit_data_cost = 0.0;
  double unit_compute_cost = 0.0;
  double comm_power = 0.0;
  double bits = 0.0;                    // bits representing the information
  double rate = 1.0;                    // bits per second
  double unit_energy_cost = 0.0;
  double model_price = 0.0;             // what the device paid for its model
  double expected_transmissions = 1.0;  // transmissions the model amortizes over

  void validate() const;
};

struct Seller {
  int id = 0;
  SemanticScores scores;
  CostParams cost_params;
  double ask = 0.0;
};

struct Buyer {
  int id = 0;
  Preference preference;
  std::vector<double> bids;  // one bid per seller
};

// lambda * sim + beta * bleu.
double accuracy(const Preference& pref, const SemanticScores& scores);

// Value of upgrading from the device's current model to the provider's.
// Negative when the device already outperforms the provider.
double model_valuation(double provider_accuracy, double device_accuracy);

// Data + compute + communication + amortized model cost.
double total_cost(const CostParams& cp);

// Value of a seller's semantic information to a buyer. Same form as accuracy.
double info_valuation(const Preference& pref, const SemanticScores& scores);

double buyer_utility(double valuation, double price, bool won);
double seller_utility(double payment, double cost, bool won);

// Rational devices do not bid negatively; valuations are floored at zero
// before auction entry.
double clamp_bid(double valuation);

}  // namespace semtrade
