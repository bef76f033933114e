#include "semtrade/market.hpp"

#include <cmath>

namespace semtrade {

namespace {

bool in_unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

Preference Preference::from_lambda(double lambda) {
  if (!in_unit_interval(lambda)) {
    throw InvalidInput("preference weight must lie in [0,1]");
  }
  return Preference{lambda, 1.0 - lambda};
}

SemanticScores SemanticScores::checked(double sim, double bleu) {
  if (!in_unit_interval(sim) || !in_unit_interval(bleu)) {
    throw InvalidInput("semantic scores must lie in [0,1]");
  }
  return SemanticScores{sim, bleu};
}

void CostParams::validate() const {
  const double fields[] = {data_size,       unit_data_cost, unit_compute_cost,
                           comm_power,      bits,           rate,
                           unit_energy_cost, model_price,   expected_transmissions};
  for (double f : fields) {
    if (!std::isfinite(f) || f < 0.0) {
      throw InvalidInput("cost parameters must be finite and nonnegative");
    }
  }
  if (rate <= 0.0) throw InvalidInput("transmission rate must be positive");
  if (expected_transmissions < 1.0) {
    throw InvalidInput("expected transmissions must be at least 1");
  }
}

double accuracy(const Preference& pref, const SemanticScores& scores) {
  return pref.lambda * scores.sim + pref.beta * scores.bleu;
}

double model_valuation(double provider_accuracy, double device_accuracy) {
  return provider_accuracy - device_accuracy;
}

double total_cost(const CostParams& cp) {
  cp.validate();
  const double data_term = cp.data_size * cp.unit_data_cost;
  const double compute_term = cp.data_size * cp.unit_compute_cost;
  const double comm_term = cp.comm_power * cp.bits / cp.rate * cp.unit_energy_cost;
  const double model_term = cp.model_price / cp.expected_transmissions;
  return data_term + compute_term + comm_term + model_term;
}

double info_valuation(const Preference& pref, const SemanticScores& scores) {
  return accuracy(pref, scores);
}

double buyer_utility(double valuation, double price, bool won) {
  return won ? valuation - price : 0.0;
}

double seller_utility(double payment, double cost, bool won) {
  return won ? payment - cost : 0.0;
}

double clamp_bid(double valuation) { return valuation > 0.0 ? valuation : 0.0; }

}  // namespace semtrade
