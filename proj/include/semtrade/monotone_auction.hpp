#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semtrade/common.hpp"

namespace semtrade {

// Per-bidder strictly increasing bid transforms: Q groups of S affine units,
// combined as min over groups of max over units. Weights are kept positive
// by optimizing their logs.
struct MonotoneNetParams {
  int bidder_count = 0;  // M
  int groups = 1;        // Q
  int units = 1;         // S
  double kappa = 10.0;   // softmax temperature used during training
  std::vector<double> log_weights;  // M x Q x S, row-major
  std::vector<double> biases;       // M x Q x S, row-major

  size_t index(int bidder, int group, int unit) const {
    return (static_cast<size_t>(bidder) * static_cast<size_t>(groups) +
            static_cast<size_t>(group)) * static_cast<size_t>(units) +
           static_cast<size_t>(unit);
  }

  void validate() const;

  // Q=S=1, w=1, beta=0: the transform is the identity and inference reduces
  // to a second-price auction with zero reserve.
  static MonotoneNetParams identity(int bidder_count, double kappa = 10.0);

  // Identity-valued initialization over a full Q x S grid: unit (0,0) is the
  // exact identity line, the rest of group 0 lies strictly below it and the
  // leading unit of every later group strictly above it for nonnegative bids.
  // The net therefore starts bit-exact to SPA-0 while every unit can become
  // active as training reshapes the transform.
  static MonotoneNetParams spread_identity(int bidder_count, int groups,
                                           int units, double kappa);
};

struct AuctionOutcome {
  std::optional<int> winner;  // bidder index
  double payment = 0.0;       // meaningful only when winner is set

  bool has_winner() const { return winner.has_value(); }
};

double transform(const MonotoneNetParams& params, int bidder, double bid);
double inverse_transform(const MonotoneNetParams& params, int bidder, double y);

// Softmax over the transformed bids plus a zero-valued dummy slot; returns
// M+1 probabilities summing to one. The dummy is the last entry.
std::vector<double> soft_allocate(const MonotoneNetParams& params,
                                  std::span<const double> bids);

// Transformed-space second-price payment with zero reserve: the best
// competing transformed bid, floored at the dummy value 0.
double spa0_payment(const MonotoneNetParams& params, std::span<const double> bids,
                    int bidder);

// Deterministic hard inference: the highest transformed bid wins when it
// beats the dummy, ties to the lowest index; the payment is the inverse
// transform of the SPA-0 price. Never exceeds the winner's bid.
AuctionOutcome infer(const MonotoneNetParams& params, std::span<const double> bids);

struct TrainOptions {
  int epochs = 500;
  double learning_rate = 0.001;
  int groups = 5;
  int units = 10;
  double kappa = 10.0;
  uint64_t seed = 1;
  // Bidders in every training scenario here are drawn i.i.d., so gradients
  // are averaged across bidders and applied to all of them, keeping the
  // transforms symmetric.
  bool tie_bidders = true;
  // The returned parameters are the epoch snapshot with the best hard
  // revenue on the training set (the initial parameters included). A new
  // snapshot must win by more than this margin, which keeps float dust from
  // displacing an exactly-optimal earlier state.
  double selection_tolerance = 1e-9;
};

struct TrainReport {
  std::vector<double> epoch_loss;           // negated soft revenue, per epoch
  std::vector<double> epoch_soft_revenue;   // == -epoch_loss
  std::vector<double> epoch_hard_revenue;   // hard-inference revenue on the batch
  double final_train_revenue = 0.0;         // hard revenue of the selected snapshot
  int selected_epoch = 0;                   // 0 = initial parameters
  int epochs_run = 0;
  uint64_t seed = 0;
};

// Full-batch gradient descent on (log_weights, biases) minimizing the
// negated softmax-smoothed revenue. Deterministic given the seed.
std::pair<MonotoneNetParams, TrainReport> train(
    const std::vector<std::vector<double>>& samples, const TrainOptions& options);

// Loss and analytic gradient of the batch objective at the given parameters.
// Exposed for gradient verification.
double loss_and_gradient(const MonotoneNetParams& params,
                         const std::vector<std::vector<double>>& samples,
                         std::vector<double>& grad_log_weights,
                         std::vector<double>& grad_biases);

// Batch loss only.
double batch_loss(const MonotoneNetParams& params,
                  const std::vector<std::vector<double>>& samples);

// Hard-inference mean revenue over a batch of bid profiles.
double hard_revenue(const MonotoneNetParams& params,
                    const std::vector<std::vector<double>>& samples);

// Text persistence. Doubles are written in shortest round-trip form and a
// checksum over the payload is verified on load, so any edit of a stored
// net is rejected rather than silently accepted.
void save_params(const MonotoneNetParams& params, std::ostream& out);
void save_params_file(const MonotoneNetParams& params, const std::string& path);
MonotoneNetParams load_params(std::istream& in, const std::string& origin);
MonotoneNetParams load_params_file(const std::string& path);

}  // namespace semtrade
