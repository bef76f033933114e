#include "semtrade/monotone_auction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

namespace semtrade {

void MonotoneNetParams::validate() const {
  if (bidder_count < 1 || groups < 1 || units < 1) {
    throw InvalidInput("monotone net: bidder count, groups and units must be at least 1");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidInput("monotone net: kappa must be positive and finite");
  }
  const size_t expected = static_cast<size_t>(bidder_count) *
                          static_cast<size_t>(groups) * static_cast<size_t>(units);
  if (log_weights.size() != expected || biases.size() != expected) {
    throw InvalidInput("monotone net: parameter grid size mismatch");
  }
  for (size_t i = 0; i < expected; ++i) {
    if (!std::isfinite(log_weights[i]) || !std::isfinite(biases[i])) {
      throw InvalidInput("monotone net: parameters must be finite");
    }
  }
}

MonotoneNetParams MonotoneNetParams::identity(int bidder_count, double kappa) {
  MonotoneNetParams p;
  p.bidder_count = bidder_count;
  p.groups = 1;
  p.units = 1;
  p.kappa = kappa;
  p.log_weights.assign(static_cast<size_t>(bidder_count), 0.0);
  p.biases.assign(static_cast<size_t>(bidder_count), 0.0);
  p.validate();
  return p;
}

MonotoneNetParams MonotoneNetParams::spread_identity(int bidder_count, int groups,
                                                     int units, double kappa) {
  MonotoneNetParams p;
  p.bidder_count = bidder_count;
  p.groups = groups;
  p.units = units;
  p.kappa = kappa;
  const size_t total = static_cast<size_t>(bidder_count) *
                       static_cast<size_t>(groups) * static_cast<size_t>(units);
  p.log_weights.assign(total, 0.0);
  p.biases.assign(total, 0.0);
  // Unit (q,s) holds the line exp(0.25(q-s)) * b + 0.05(q-s). For b >= 0,
  // group 0 is dominated by its exact-identity unit (0,0) and every later
  // group stays strictly above the identity, so min-max evaluates to b.
  const double kLogWeightStep = 0.25;
  const double kBiasStep = 0.05;
  for (int m = 0; m < bidder_count; ++m) {
    for (int q = 0; q < groups; ++q) {
      for (int s = 0; s < units; ++s) {
        const size_t i = p.index(m, q, s);
        p.log_weights[i] = kLogWeightStep * (q - s);
        p.biases[i] = kBiasStep * (q - s);
      }
    }
  }
  p.validate();
  return p;
}

namespace {

struct ActiveUnit {
  int q = 0;
  int s = 0;
};

// min over groups of max over units of (w * b + bias). Ties route to the
// lowest (q,s) index so subgradients are deterministic.
double transform_with(const MonotoneNetParams& p, const double* weights, int bidder,
                      double bid, ActiveUnit* active) {
  double best_group = std::numeric_limits<double>::infinity();
  ActiveUnit best{};
  for (int q = 0; q < p.groups; ++q) {
    double group_max = -std::numeric_limits<double>::infinity();
    int max_s = 0;
    for (int s = 0; s < p.units; ++s) {
      const size_t i = p.index(bidder, q, s);
      const double w = weights ? weights[i] : std::exp(p.log_weights[i]);
      const double v = w * bid + p.biases[i];
      if (v > group_max) {
        group_max = v;
        max_s = s;
      }
    }
    if (group_max < best_group) {
      best_group = group_max;
      best = ActiveUnit{q, max_s};
    }
  }
  if (active) *active = best;
  return best_group;
}

// max over groups of min over units of (y - bias) / w.
double inverse_with(const MonotoneNetParams& p, const double* weights, int bidder,
                    double y, ActiveUnit* active) {
  double best = -std::numeric_limits<double>::infinity();
  ActiveUnit best_unit{};
  for (int q = 0; q < p.groups; ++q) {
    double group_min = std::numeric_limits<double>::infinity();
    int min_s = 0;
    for (int s = 0; s < p.units; ++s) {
      const size_t i = p.index(bidder, q, s);
      const double w = weights ? weights[i] : std::exp(p.log_weights[i]);
      const double v = (y - p.biases[i]) / w;
      if (v < group_min) {
        group_min = v;
        min_s = s;
      }
    }
    if (group_min > best) {
      best = group_min;
      best_unit = ActiveUnit{q, min_s};
    }
  }
  if (active) *active = best_unit;
  return best;
}

std::vector<double> realize_weights(const MonotoneNetParams& p) {
  std::vector<double> w(p.log_weights.size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = std::exp(p.log_weights[i]);
  return w;
}

void check_bids(const MonotoneNetParams& p, std::span<const double> bids) {
  if (static_cast<int>(bids.size()) != p.bidder_count) {
    throw InvalidInput("monotone net: bid vector length must equal bidder count");
  }
  for (double b : bids) {
    if (!std::isfinite(b) || b < 0.0) {
      throw InvalidInput("monotone net: bids must be finite and nonnegative");
    }
  }
}

}  // namespace

double transform(const MonotoneNetParams& params, int bidder, double bid) {
  return transform_with(params, nullptr, bidder, bid, nullptr);
}

double inverse_transform(const MonotoneNetParams& params, int bidder, double y) {
  return inverse_with(params, nullptr, bidder, y, nullptr);
}

std::vector<double> soft_allocate(const MonotoneNetParams& params,
                                  std::span<const double> bids) {
  check_bids(params, bids);
  const int m_count = params.bidder_count;
  std::vector<double> z(static_cast<size_t>(m_count) + 1);
  double shift = 0.0;  // the dummy slot has transformed bid 0
  std::vector<double> transformed(static_cast<size_t>(m_count));
  for (int m = 0; m < m_count; ++m) {
    transformed[static_cast<size_t>(m)] = transform_with(params, nullptr, m, bids[m], nullptr);
    shift = std::max(shift, transformed[static_cast<size_t>(m)]);
  }
  double denom = 0.0;
  for (int m = 0; m < m_count; ++m) {
    z[static_cast<size_t>(m)] = std::exp(params.kappa * (transformed[static_cast<size_t>(m)] - shift));
    denom += z[static_cast<size_t>(m)];
  }
  z[static_cast<size_t>(m_count)] = std::exp(params.kappa * (0.0 - shift));
  denom += z[static_cast<size_t>(m_count)];
  for (double& v : z) v /= denom;
  return z;
}

double spa0_payment(const MonotoneNetParams& params, std::span<const double> bids,
                    int bidder) {
  check_bids(params, bids);
  if (bidder < 0 || bidder >= params.bidder_count) {
    throw InvalidInput("monotone net: bidder index out of range");
  }
  double best_other = 0.0;  // dummy competitor
  for (int j = 0; j < params.bidder_count; ++j) {
    if (j == bidder) continue;
    best_other = std::max(best_other, transform_with(params, nullptr, j, bids[j], nullptr));
  }
  return best_other;
}

AuctionOutcome infer(const MonotoneNetParams& params, std::span<const double> bids) {
  check_bids(params, bids);
  const std::vector<double> weights = realize_weights(params);

  int winner = -1;
  double best = 0.0;
  double second = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < params.bidder_count; ++m) {
    const double t = transform_with(params, weights.data(), m, bids[m], nullptr);
    if (winner < 0 || t > best) {
      if (winner >= 0) second = best;
      best = t;
      winner = m;
    } else if (t > second) {
      second = t;
    }
  }
  if (winner < 0 || !(best > 0.0)) return AuctionOutcome{};  // nothing beats the dummy

  const double theta0 = std::max(0.0, second == -std::numeric_limits<double>::infinity()
                                          ? 0.0
                                          : second);
  double payment = inverse_with(params, weights.data(), winner, theta0, nullptr);
  // Theorem guarantees payment <= bid; the clamp only removes float dust and
  // enforces the nonnegative-payment floor in value space.
  payment = std::clamp(payment, 0.0, bids[static_cast<size_t>(winner)]);
  return AuctionOutcome{winner, payment};
}

namespace {

struct ForwardBuffers {
  std::vector<double> transformed;
  std::vector<ActiveUnit> transform_unit;
  std::vector<double> z;
  std::vector<double> theta0;
  std::vector<double> theta;
  std::vector<ActiveUnit> inverse_unit;
  int top1 = -1;
  int top2 = -1;

  void resize(int m_count) {
    transformed.resize(static_cast<size_t>(m_count));
    transform_unit.resize(static_cast<size_t>(m_count));
    z.resize(static_cast<size_t>(m_count) + 1);
    theta0.resize(static_cast<size_t>(m_count));
    theta.resize(static_cast<size_t>(m_count));
    inverse_unit.resize(static_cast<size_t>(m_count));
  }
};

// One profile forward pass: transforms, softmax allocation, SPA-0 payments
// and their inverse images. Returns the softmax-smoothed revenue.
double forward_profile(const MonotoneNetParams& p, const double* weights,
                       std::span<const double> bids, ForwardBuffers& fb) {
  const int m_count = p.bidder_count;
  fb.resize(m_count);

  fb.top1 = -1;
  fb.top2 = -1;
  for (int m = 0; m < m_count; ++m) {
    fb.transformed[static_cast<size_t>(m)] =
        transform_with(p, weights, m, bids[m], &fb.transform_unit[static_cast<size_t>(m)]);
    const double t = fb.transformed[static_cast<size_t>(m)];
    if (fb.top1 < 0 || t > fb.transformed[static_cast<size_t>(fb.top1)]) {
      fb.top2 = fb.top1;
      fb.top1 = m;
    } else if (fb.top2 < 0 || t > fb.transformed[static_cast<size_t>(fb.top2)]) {
      fb.top2 = m;
    }
  }

  double shift = 0.0;
  for (int m = 0; m < m_count; ++m) shift = std::max(shift, fb.transformed[static_cast<size_t>(m)]);
  double denom = 0.0;
  for (int m = 0; m < m_count; ++m) {
    fb.z[static_cast<size_t>(m)] = std::exp(p.kappa * (fb.transformed[static_cast<size_t>(m)] - shift));
    denom += fb.z[static_cast<size_t>(m)];
  }
  fb.z[static_cast<size_t>(m_count)] = std::exp(p.kappa * (0.0 - shift));
  denom += fb.z[static_cast<size_t>(m_count)];
  for (int j = 0; j <= m_count; ++j) fb.z[static_cast<size_t>(j)] /= denom;

  double soft_revenue = 0.0;
  for (int m = 0; m < m_count; ++m) {
    double competing = 0.0;
    if (m_count > 1) {
      const int rival = (m == fb.top1) ? fb.top2 : fb.top1;
      competing = fb.transformed[static_cast<size_t>(rival)];
    }
    fb.theta0[static_cast<size_t>(m)] = std::max(0.0, competing);
    fb.theta[static_cast<size_t>(m)] =
        inverse_with(p, weights, m, fb.theta0[static_cast<size_t>(m)],
                     &fb.inverse_unit[static_cast<size_t>(m)]);
    soft_revenue += fb.z[static_cast<size_t>(m)] * fb.theta[static_cast<size_t>(m)];
  }
  return soft_revenue;
}

// Accumulates the gradient of (-soft revenue) for one profile.
void backward_profile(const MonotoneNetParams& p, const double* weights,
                      std::span<const double> bids, const ForwardBuffers& fb,
                      double soft_revenue, std::vector<double>& g_logw,
                      std::vector<double>& g_beta) {
  const int m_count = p.bidder_count;
  thread_local std::vector<double> g_transformed;
  g_transformed.assign(static_cast<size_t>(m_count), 0.0);

  // Softmax path.
  for (int j = 0; j < m_count; ++j) {
    g_transformed[static_cast<size_t>(j)] =
        -p.kappa * fb.z[static_cast<size_t>(j)] *
        (fb.theta[static_cast<size_t>(j)] - soft_revenue);
  }

  // Payment path: theta0_m = max over rivals when positive; the max routes
  // the gradient to the single best rival.
  for (int m = 0; m < m_count && m_count > 1; ++m) {
    if (fb.theta0[static_cast<size_t>(m)] <= 0.0) continue;
    const int rival = (m == fb.top1) ? fb.top2 : fb.top1;
    const ActiveUnit inv = fb.inverse_unit[static_cast<size_t>(m)];
    const double w_inv = weights[p.index(m, inv.q, inv.s)];
    g_transformed[static_cast<size_t>(rival)] -= fb.z[static_cast<size_t>(m)] / w_inv;
  }

  for (int j = 0; j < m_count; ++j) {
    const ActiveUnit a = fb.transform_unit[static_cast<size_t>(j)];
    const size_t i = p.index(j, a.q, a.s);
    g_logw[i] += g_transformed[static_cast<size_t>(j)] * weights[i] * bids[j];
    g_beta[i] += g_transformed[static_cast<size_t>(j)];
  }
  for (int m = 0; m < m_count; ++m) {
    const ActiveUnit inv = fb.inverse_unit[static_cast<size_t>(m)];
    const size_t i = p.index(m, inv.q, inv.s);
    g_logw[i] += fb.z[static_cast<size_t>(m)] * fb.theta[static_cast<size_t>(m)];
    g_beta[i] += fb.z[static_cast<size_t>(m)] / weights[i];
  }
}

void check_samples(const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw InvalidInput("train: sample set must be nonempty");
  const size_t m_count = samples.front().size();
  if (m_count == 0) throw InvalidInput("train: profiles must contain at least one bid");
  for (const auto& profile : samples) {
    if (profile.size() != m_count) {
      throw InvalidInput("train: all profiles must have the same bidder count");
    }
    for (double b : profile) {
      if (!std::isfinite(b) || b < 0.0) {
        throw InvalidInput("train: bids must be finite and nonnegative");
      }
    }
  }
}

double hard_profile_revenue(std::span<const double> bids, const ForwardBuffers& fb) {
  if (fb.top1 < 0 || !(fb.transformed[static_cast<size_t>(fb.top1)] > 0.0)) return 0.0;
  const double payment = fb.theta[static_cast<size_t>(fb.top1)];
  return std::clamp(payment, 0.0, bids[static_cast<size_t>(fb.top1)]);
}

}  // namespace

double loss_and_gradient(const MonotoneNetParams& params,
                         const std::vector<std::vector<double>>& samples,
                         std::vector<double>& grad_log_weights,
                         std::vector<double>& grad_biases) {
  params.validate();
  check_samples(samples);
  const std::vector<double> weights = realize_weights(params);
  grad_log_weights.assign(params.log_weights.size(), 0.0);
  grad_biases.assign(params.biases.size(), 0.0);

  ForwardBuffers fb;
  double loss_sum = 0.0;
  for (const auto& profile : samples) {
    const double soft_revenue = forward_profile(params, weights.data(), profile, fb);
    loss_sum += -soft_revenue;
    backward_profile(params, weights.data(), profile, fb, soft_revenue,
                     grad_log_weights, grad_biases);
  }
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (double& g : grad_log_weights) g *= inv_n;
  for (double& g : grad_biases) g *= inv_n;
  return loss_sum * inv_n;
}

double batch_loss(const MonotoneNetParams& params,
                  const std::vector<std::vector<double>>& samples) {
  params.validate();
  check_samples(samples);
  const std::vector<double> weights = realize_weights(params);
  ForwardBuffers fb;
  double loss_sum = 0.0;
  for (const auto& profile : samples) {
    loss_sum += -forward_profile(params, weights.data(), profile, fb);
  }
  return loss_sum / static_cast<double>(samples.size());
}

double hard_revenue(const MonotoneNetParams& params,
                    const std::vector<std::vector<double>>& samples) {
  params.validate();
  check_samples(samples);
  const std::vector<double> weights = realize_weights(params);
  ForwardBuffers fb;
  double revenue = 0.0;
  for (const auto& profile : samples) {
    forward_profile(params, weights.data(), profile, fb);
    revenue += hard_profile_revenue(params, profile, fb);
  }
  return revenue / static_cast<double>(samples.size());
}

std::pair<MonotoneNetParams, TrainReport> train(
    const std::vector<std::vector<double>>& samples, const TrainOptions& options) {
  check_samples(samples);
  if (options.epochs < 1) throw InvalidInput("train: epochs must be at least 1");
  if (!(options.learning_rate > 0.0)) throw InvalidInput("train: learning rate must be positive");

  const int m_count = static_cast<int>(samples.front().size());
  MonotoneNetParams params = MonotoneNetParams::spread_identity(
      m_count, options.groups, options.units, options.kappa);
  const size_t grid = params.log_weights.size();
  const size_t per_bidder = static_cast<size_t>(params.groups) * static_cast<size_t>(params.units);

  TrainReport report;
  report.seed = options.seed;
  report.epochs_run = options.epochs;
  report.epoch_loss.reserve(static_cast<size_t>(options.epochs));
  report.epoch_soft_revenue.reserve(static_cast<size_t>(options.epochs));
  report.epoch_hard_revenue.reserve(static_cast<size_t>(options.epochs));

  MonotoneNetParams best = params;
  double best_revenue = -std::numeric_limits<double>::infinity();
  int best_epoch = 0;

  std::vector<double> g_logw(grid), g_beta(grid);
  ForwardBuffers fb;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const std::vector<double> weights = realize_weights(params);
    std::fill(g_logw.begin(), g_logw.end(), 0.0);
    std::fill(g_beta.begin(), g_beta.end(), 0.0);

    double loss_sum = 0.0;
    double hard_sum = 0.0;
    for (const auto& profile : samples) {
      const double soft_revenue = forward_profile(params, weights.data(), profile, fb);
      loss_sum += -soft_revenue;
      hard_sum += hard_profile_revenue(params, profile, fb);
      backward_profile(params, weights.data(), profile, fb, soft_revenue, g_logw, g_beta);
    }
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    const double loss = loss_sum * inv_n;
    const double hard = hard_sum * inv_n;
    report.epoch_loss.push_back(loss);
    report.epoch_soft_revenue.push_back(-loss);
    report.epoch_hard_revenue.push_back(hard);

    if (hard > best_revenue + options.selection_tolerance ||
        best_revenue == -std::numeric_limits<double>::infinity()) {
      best_revenue = hard;
      best = params;
      best_epoch = epoch;  // state before this epoch's update; 0 = init
    }

    if (options.tie_bidders) {
      for (size_t u = 0; u < per_bidder; ++u) {
        double mean_w = 0.0, mean_b = 0.0;
        for (int m = 0; m < m_count; ++m) {
          mean_w += g_logw[static_cast<size_t>(m) * per_bidder + u];
          mean_b += g_beta[static_cast<size_t>(m) * per_bidder + u];
        }
        mean_w /= static_cast<double>(m_count);
        mean_b /= static_cast<double>(m_count);
        for (int m = 0; m < m_count; ++m) {
          g_logw[static_cast<size_t>(m) * per_bidder + u] = mean_w;
          g_beta[static_cast<size_t>(m) * per_bidder + u] = mean_b;
        }
      }
    }

    for (size_t i = 0; i < grid; ++i) {
      params.log_weights[i] -= options.learning_rate * g_logw[i];
      params.biases[i] -= options.learning_rate * g_beta[i];
    }
  }

  // The state after the last update was never scored inside the loop.
  const double final_hard = hard_revenue(params, samples);
  if (final_hard > best_revenue + options.selection_tolerance) {
    best_revenue = final_hard;
    best = params;
    best_epoch = options.epochs;
  }

  report.final_train_revenue = best_revenue;
  report.selected_epoch = best_epoch;
  return {std::move(best), std::move(report)};
}

namespace {

uint64_t fnv1a_bytes(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string double_to_text(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double text_to_double(std::string_view text, const std::string& origin) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidInput(origin + ": malformed number '" + std::string(text) + "'");
  }
  return v;
}

constexpr std::string_view kNetMagic = "semtrade-monotone-net v1";

std::string serialize_body(const MonotoneNetParams& p) {
  std::ostringstream body;
  body << "bidders " << p.bidder_count << "\n";
  body << "groups " << p.groups << "\n";
  body << "units " << p.units << "\n";
  body << "kappa " << double_to_text(p.kappa) << "\n";
  const auto write_grid = [&](const std::vector<double>& grid) {
    for (int m = 0; m < p.bidder_count; ++m) {
      for (int u = 0; u < p.groups * p.units; ++u) {
        if (u > 0) body << ' ';
        body << double_to_text(grid[static_cast<size_t>(m) *
                                    static_cast<size_t>(p.groups * p.units) +
                                    static_cast<size_t>(u)]);
      }
      body << "\n";
    }
  };
  body << "log_weights\n";
  write_grid(p.log_weights);
  body << "biases\n";
  write_grid(p.biases);
  return body.str();
}

}  // namespace

void save_params(const MonotoneNetParams& params, std::ostream& out) {
  params.validate();
  const std::string body = serialize_body(params);
  char checksum[17];
  std::snprintf(checksum, sizeof(checksum), "%016llx",
                static_cast<unsigned long long>(fnv1a_bytes(body)));
  out << kNetMagic << "\n" << body << "checksum " << checksum << "\n";
}

void save_params_file(const MonotoneNetParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_params(params, out);
  if (!out) throw IoError("write failed: " + path);
}

MonotoneNetParams load_params(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line) || line != kNetMagic) {
    throw InvalidInput(origin + ": not a monotone net file");
  }
  std::string body;
  std::string checksum_line;
  while (std::getline(in, line)) {
    if (line.rfind("checksum ", 0) == 0) {
      checksum_line = line;
      break;
    }
    body += line;
    body += '\n';
  }
  if (checksum_line.empty()) throw InvalidInput(origin + ": missing checksum");
  char expected[17];
  std::snprintf(expected, sizeof(expected), "%016llx",
                static_cast<unsigned long long>(fnv1a_bytes(body)));
  if (checksum_line.substr(9) != expected) {
    throw InvalidInput(origin + ": checksum mismatch, stored net was modified");
  }

  std::istringstream bs(body);
  MonotoneNetParams p;
  std::string token;
  const auto expect_key = [&](const char* key) {
    if (!(bs >> token) || token != key) {
      throw InvalidInput(origin + std::string(": expected '") + key + "'");
    }
  };
  expect_key("bidders");
  if (!(bs >> p.bidder_count)) throw InvalidInput(origin + ": malformed bidder count");
  expect_key("groups");
  if (!(bs >> p.groups)) throw InvalidInput(origin + ": malformed group count");
  expect_key("units");
  if (!(bs >> p.units)) throw InvalidInput(origin + ": malformed unit count");
  expect_key("kappa");
  if (!(bs >> token)) throw InvalidInput(origin + ": malformed kappa");
  p.kappa = text_to_double(token, origin);
  if (p.bidder_count < 1 || p.groups < 1 || p.units < 1) {
    throw InvalidInput(origin + ": sizes must be at least 1");
  }

  const size_t total = static_cast<size_t>(p.bidder_count) *
                       static_cast<size_t>(p.groups) * static_cast<size_t>(p.units);
  const auto read_grid = [&](const char* key, std::vector<double>& grid) {
    expect_key(key);
    grid.resize(total);
    for (size_t i = 0; i < total; ++i) {
      if (!(bs >> token)) throw InvalidInput(origin + ": truncated parameter grid");
      grid[i] = text_to_double(token, origin);
    }
  };
  read_grid("log_weights", p.log_weights);
  read_grid("biases", p.biases);
  if (bs >> token) throw InvalidInput(origin + ": trailing data");
  p.validate();
  return p;
}

MonotoneNetParams load_params_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open monotone net file: " + path);
  return load_params(in, path);
}

}  // namespace semtrade
