#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "semtrade/baselines.hpp"
#include "semtrade/config.hpp"
#include "semtrade/csv.hpp"
#include "semtrade/metrics.hpp"
#include "semtrade/scenario.hpp"
#include "semtrade/verification.hpp"

namespace fs = std::filesystem;

namespace semtrade::cli {

namespace {

constexpr const char* kVersion = "semtrade 1.0";

Config load_config(const CommonArgs& args) {
  if (args.config_path.empty()) return Config{};
  return Config::load(args.config_path);
}

void ensure_out_dir(const CommonArgs& args) {
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + args.out_dir);
}

std::string out_path(const CommonArgs& args, const std::string& file) {
  return (fs::path(args.out_dir) / file).string();
}

// Run metadata, including the only timestamp any command emits; CSV bodies
// stay byte-identical across reruns.
void write_manifest(const CommonArgs& args, const std::string& command,
                    const Config& cfg) {
  std::ofstream out(out_path(args, command + "_manifest.txt"), std::ios::binary);
  if (!out) throw IoError("cannot write manifest");
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(cfg.content_hash()));
  const std::time_t now = std::time(nullptr);
  char stamp[32] = "unknown";
  if (std::tm tm_utc{}; gmtime_r(&now, &tm_utc) != nullptr) {
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  }
  out << "command: " << command << "\n"
      << "version: " << kVersion << "\n"
      << "config: " << (args.config_path.empty() ? "(defaults)" : args.config_path) << "\n"
      << "config_hash: " << hash << "\n"
      << "seed: " << args.seed << "\n"
      << "timestamp: " << stamp << "\n";
}

ScenarioParams read_scenario(Config& cfg) {
  ScenarioParams p;
  p.sellers = cfg.get_int("scenario", "sellers", p.sellers);
  p.lambda_low = cfg.get_double("scenario", "lambda_low", p.lambda_low);
  p.lambda_high = cfg.get_double("scenario", "lambda_high", p.lambda_high);
  p.data_size_low = cfg.get_double("scenario", "data_size_low", p.data_size_low);
  p.data_size_high = cfg.get_double("scenario", "data_size_high", p.data_size_high);
  p.unit_data_cost = cfg.get_double("scenario", "unit_data_cost", p.unit_data_cost);
  p.unit_compute_cost = cfg.get_double("scenario", "unit_compute_cost", p.unit_compute_cost);
  p.comm_power = cfg.get_double("scenario", "comm_power", p.comm_power);
  p.bits = cfg.get_double("scenario", "bits", p.bits);
  p.rate = cfg.get_double("scenario", "rate", p.rate);
  p.unit_energy_cost = cfg.get_double("scenario", "unit_energy_cost", p.unit_energy_cost);
  p.expected_transmissions =
      cfg.get_double("scenario", "expected_transmissions", p.expected_transmissions);
  p.dim_low = cfg.get_int("scenario", "dim_low", p.dim_low);
  p.dim_high = cfg.get_int("scenario", "dim_high", p.dim_high);
  p.quality_base = cfg.get_double("scenario", "quality_base", p.quality_base);
  p.quality_slope = cfg.get_double("scenario", "quality_slope", p.quality_slope);
  p.validate();
  return p;
}

ScoreCurve read_curve(Config& cfg) {
  const std::string path =
      cfg.get_string("scenario", "curve_file", "data/score_curve_dropout.csv");
  return ScoreCurve::load(path);
}

TrainOptions read_train_options(Config& cfg, uint64_t seed) {
  TrainOptions opt;
  opt.groups = cfg.get_int("dla", "groups", opt.groups);
  opt.units = cfg.get_int("dla", "units", opt.units);
  opt.kappa = cfg.get_double("dla", "kappa", opt.kappa);
  opt.learning_rate = cfg.get_double("dla", "learning_rate", opt.learning_rate);
  opt.epochs = cfg.get_int("dla", "epochs", opt.epochs);
  opt.tie_bidders = cfg.get_bool("dla", "tie_bidders", opt.tie_bidders);
  opt.selection_tolerance =
      cfg.get_double("dla", "selection_tolerance", opt.selection_tolerance);
  opt.seed = seed;
  return opt;
}

std::unique_ptr<ThetaSampler> read_theta_sampler(Config& cfg, const CommonArgs& args,
                                                 const TrainOptions& train_options) {
  const std::string source = cfg.get_string("scenario", "theta_source", "uniform");
  if (source == "uniform") {
    const double lo = cfg.get_double("scenario", "theta_low", 0.0);
    const double hi = cfg.get_double("scenario", "theta_high", 1.0);
    return std::make_unique<UniformTheta>(lo, hi);
  }
  if (source == "fixed") {
    return std::make_unique<FixedTheta>(cfg.get_double("scenario", "theta_fixed", 0.5));
  }
  if (source == "model-trade") {
    const double lo = cfg.get_double("scenario", "model_trade_bid_low", 0.0);
    const double hi = cfg.get_double("scenario", "model_trade_bid_high", 1.0);
    const int bidders = cfg.get_int("scenario", "model_trade_bidders", 10);
    const int samples = cfg.get_int("dla", "train_samples", 1000);
    Rng rng(mix_seed(args.seed, 0x7468657461ull));
    std::vector<std::vector<double>> profiles(static_cast<size_t>(samples));
    for (auto& profile : profiles) {
      profile.resize(static_cast<size_t>(bidders));
      for (double& b : profile) b = rng.uniform(lo, hi);
    }
    MonotoneNetParams net = train(profiles, train_options).first;
    return std::make_unique<ModelTradeTheta>(std::move(net), lo, hi);
  }
  throw ConfigError("scenario.theta_source must be uniform, fixed or model-trade");
}

// Per-buyer-count trained engines plus the SPA fallback.
class EngineSet {
 public:
  EngineSet(const ScenarioParams& params, const ScoreCurve& curve,
            const ThetaSampler& theta, const std::vector<int>& buyer_counts,
            int profiles, const TrainOptions& options, const std::string& params_file) {
    for (int n : buyer_counts) {
      if (!params_file.empty()) {
        MonotoneNetParams net = load_params_file(params_file);
        if (net.bidder_count != n) {
          throw InvalidInput("stored net serves " + std::to_string(net.bidder_count) +
                             " bidders but the sweep needs " + std::to_string(n));
        }
        engines_.emplace(n, std::make_unique<MonotoneNetEngine>(std::move(net)));
      } else {
        engines_.emplace(n, std::make_unique<MonotoneNetEngine>(train_market_engine(
                                params, curve, theta, n, profiles, options)));
      }
    }
  }

  const AuctionEngine* dla(int buyer_count) const {
    auto it = engines_.find(buyer_count);
    if (it == engines_.end()) throw InvalidInput("no trained engine for this buyer count");
    return it->second.get();
  }

  const AuctionEngine* spa_engine() const { return &spa_; }

 private:
  std::map<int, std::unique_ptr<MonotoneNetEngine>> engines_;
  SpaEngine spa_;
};

}  // namespace

int cmd_train_dla(const CommonArgs& args) {
  Config cfg = load_config(args);
  const int bidders = cfg.get_int("train", "bidders", 10);
  const double bid_low = cfg.get_double("train", "bid_low", 0.0);
  const double bid_high = cfg.get_double("train", "bid_high", 0.4);
  const int heldout_samples = cfg.get_int("train", "heldout_samples", 10000);
  const int train_samples = cfg.get_int("dla", "train_samples", 1000);
  const long oracle_draws = cfg.get_long("train", "oracle_draws", 1000000);
  const TrainOptions options = read_train_options(cfg, args.seed);
  cfg.reject_unknown();
  if (bidders < 1) throw ConfigError("train.bidders must be at least 1");
  if (!(bid_low >= 0.0) || !(bid_low < bid_high)) {
    throw ConfigError("train: need 0 <= bid_low < bid_high");
  }
  ensure_out_dir(args);

  const auto draw_profiles = [&](int count, uint64_t stream) {
    Rng rng(mix_seed(args.seed, stream));
    std::vector<std::vector<double>> profiles(static_cast<size_t>(count));
    for (auto& profile : profiles) {
      profile.resize(static_cast<size_t>(bidders));
      for (double& b : profile) b = rng.uniform(bid_low, bid_high);
    }
    return profiles;
  };
  const auto profiles = draw_profiles(train_samples, 1);
  const auto heldout = draw_profiles(heldout_samples, 2);

  auto [net, report] = train(profiles, options);
  save_params_file(net, out_path(args, "dla_params.txt"));

  const auto spa_mean = [](const std::vector<std::vector<double>>& batch) {
    double total = 0.0;
    for (const auto& profile : batch) total += spa(profile).payment;
    return total / static_cast<double>(batch.size());
  };
  const double spa_train = spa_mean(profiles);
  const double spa_heldout = spa_mean(heldout);
  const double dla_heldout = hard_revenue(net, heldout);
  const RevenueEstimate oracle =
      myerson_uniform_oracle(bidders, bid_low, bid_high, oracle_draws, mix_seed(args.seed, 3));

  {
    CsvWriter csv(out_path(args, "train_revenue.csv"), "semtrade.train_dla.revenue.v1");
    csv.row("epoch", "loss", "soft_revenue", "hard_revenue", "spa_revenue");
    for (size_t e = 0; e < report.epoch_loss.size(); ++e) {
      csv.row(static_cast<long>(e + 1), report.epoch_loss[e], report.epoch_soft_revenue[e],
              report.epoch_hard_revenue[e], spa_train);
    }
  }
  {
    CsvWriter csv(out_path(args, "train_summary.csv"), "semtrade.train_dla.summary.v1");
    csv.row("mechanism", "dataset", "revenue");
    csv.row("dla", "train", report.final_train_revenue);
    csv.row("spa", "train", spa_train);
    csv.row("dla", "heldout", dla_heldout);
    csv.row("spa", "heldout", spa_heldout);
    csv.row("myerson_oracle", "mc", oracle.mean_revenue);
  }
  write_manifest(args, "train_dla", cfg);

  std::cout << "trained " << bidders << "-bidder net on " << train_samples
            << " profiles (selected epoch " << report.selected_epoch << ")\n"
            << "train revenue dla=" << format_double(report.final_train_revenue)
            << " spa=" << format_double(spa_train) << "\n"
            << "heldout revenue dla=" << format_double(dla_heldout)
            << " spa=" << format_double(spa_heldout)
            << " myerson=" << format_double(oracle.mean_revenue) << "\n";
  return 0;
}

int cmd_market_sweep(const CommonArgs& args) {
  Config cfg = load_config(args);
  const ScenarioParams params = read_scenario(cfg);
  const ScoreCurve curve = read_curve(cfg);
  const std::vector<int> buyer_counts =
      cfg.get_int_list("sweep", "buyers", {2, 4, 6, 8, 10});
  const int replicas = cfg.get_int("sweep", "replicas", 1000);
  const int threads = cfg.get_int("sweep", "threads", 0);
  const int train_samples = cfg.get_int("dla", "train_samples", 1000);
  const std::string params_file = cfg.get_string("dla", "params_file", "");
  const TrainOptions options = read_train_options(cfg, args.seed);
  const auto theta = read_theta_sampler(cfg, args, options);
  cfg.reject_unknown();
  ensure_out_dir(args);

  const EngineSet engines(params, curve, *theta, buyer_counts, train_samples, options,
                          params_file);
  const SweepResult result = run_market_sweep(
      params, curve, *theta, buyer_counts, replicas, args.seed,
      [&](int n) { return engines.dla(n); }, threads);

  {
    CsvWriter csv(out_path(args, "market_utilities.csv"),
                  "semtrade.market_sweep.utilities.v1");
    csv.row("engine", "buyers", "mean_winning_seller_utility",
            "mean_winning_buyer_utility", "mean_winning_pairs");
    for (const auto& cell : result.cells) {
      csv.row(cell.engine, cell.buyers, cell.mean_winning_seller_utility,
              cell.mean_winning_buyer_utility, cell.mean_winning_pairs);
    }
  }
  {
    CsvWriter csv(out_path(args, "market_theta_strata.csv"),
                  "semtrade.market_sweep.theta_strata.v1");
    csv.row("engine", "buyers", "stratum", "mean_winning_seller_utility",
            "wins_per_replica", "mean_sim", "mean_bleu");
    for (const auto& cell : result.cells) {
      const double reps = static_cast<double>(cell.replicas);
      csv.row(cell.engine, cell.buyers, "theta_high", cell.high_theta_mean_utility,
              static_cast<double>(cell.high_theta_wins) / reps, cell.high_theta_mean_sim,
              cell.high_theta_mean_bleu);
      csv.row(cell.engine, cell.buyers, "theta_low", cell.low_theta_mean_utility,
              static_cast<double>(cell.low_theta_wins) / reps, cell.low_theta_mean_sim,
              cell.low_theta_mean_bleu);
    }
  }
  {
    CsvWriter csv(out_path(args, "trades_sample.csv"), "semtrade.trades.v1");
    csv.row("engine", "buyers", "seller_id", "buyer_id", "ask", "bid", "price",
            "seller_utility", "buyer_utility");
    for (const auto& rec : result.sample_trades) {
      csv.row(rec.engine, rec.buyers, rec.seller_id, rec.buyer_id, rec.ask, rec.bid,
              rec.price, rec.seller_utility, rec.buyer_utility);
    }
  }
  write_manifest(args, "market_sweep", cfg);

  for (const auto& cell : result.cells) {
    std::cout << cell.engine << " N=" << cell.buyers
              << " seller_utility=" << format_double(cell.mean_winning_seller_utility)
              << " buyer_utility=" << format_double(cell.mean_winning_buyer_utility)
              << " pairs=" << format_double(cell.mean_winning_pairs) << "\n";
  }
  return 0;
}

int cmd_truthfulness_sweep(const CommonArgs& args) {
  Config cfg = load_config(args);
  const ScenarioParams params = read_scenario(cfg);
  const ScoreCurve curve = read_curve(cfg);
  const std::string side = cfg.get_string("truthfulness", "side", "both");
  const int n_buyers = cfg.get_int("truthfulness", "buyers", 10);
  const int seller_id = cfg.get_int("truthfulness", "seller", -1);
  const int buyer_id = cfg.get_int("truthfulness", "buyer", -1);
  const int target_seller = cfg.get_int("truthfulness", "target_seller", -1);
  const double grid_start = cfg.get_double("truthfulness", "grid_start", 0.1);
  const double grid_stop = cfg.get_double("truthfulness", "grid_stop", 1.0);
  const int grid_points = cfg.get_int("truthfulness", "grid_points", 10);
  const std::string engine_kind = cfg.get_string("truthfulness", "engine", "spa");
  const int train_samples = cfg.get_int("dla", "train_samples", 1000);
  const TrainOptions options = read_train_options(cfg, args.seed);
  const auto theta = read_theta_sampler(cfg, args, options);
  cfg.reject_unknown();

  if (side != "seller" && side != "buyer" && side != "both") {
    throw ConfigError("truthfulness.side must be seller, buyer or both");
  }
  ensure_out_dir(args);

  std::unique_ptr<AuctionEngine> engine;
  if (engine_kind == "spa") {
    engine = std::make_unique<SpaEngine>();
  } else if (engine_kind == "dla") {
    engine = std::make_unique<MonotoneNetEngine>(
        train_market_engine(params, curve, *theta, n_buyers, train_samples, options));
  } else {
    throw ConfigError("truthfulness.engine must be spa or dla");
  }

  Rng rng(mix_seed(args.seed, 11));
  const Instance inst = sample_instance(params, curve, *theta, n_buyers, rng);
  const uint64_t tie_seed = mix_seed(args.seed, 12);
  const std::vector<double> grid = deviation_grid(grid_start, grid_stop, grid_points);

  const auto pick = [&](int configured, int limit) {
    if (configured >= 0 && configured < limit) return configured;
    if (configured >= limit) throw InvalidInput("truthfulness: agent id out of range");
    return rng.uniform_int(0, limit - 1);
  };

  bool truthful_is_max = true;
  CsvWriter csv(out_path(args, "truthfulness.csv"), "semtrade.truthfulness.v1");
  csv.row("side", "agent", "target_seller", "deviation", "utility", "is_truthful");

  const auto emit = [&](const std::string& side_name, int agent, int target,
                        const DeviationCurve& dev) {
    for (const auto& [value, utility] : dev.points) {
      csv.row(side_name, agent, target, value, utility, 0L);
      if (utility > dev.truthful_utility + 1e-9) truthful_is_max = false;
    }
    csv.row(side_name, agent, target, dev.truthful_value, dev.truthful_utility, 1L);
  };

  if (side == "seller" || side == "both") {
    const int seller = pick(seller_id, params.sellers);
    emit("seller", seller, seller,
         sweep_seller_ask(inst, seller, *engine, tie_seed, grid));
  }
  if (side == "buyer" || side == "both") {
    const int buyer = pick(buyer_id, n_buyers);
    int target = target_seller;
    if (target < 0) {
      const TradeSet truthful = run_double_auction(inst.buyers, inst.sellers, *engine, tie_seed);
      const TradePair* pair = truthful.pair_for_buyer(buyer);
      target = pair ? pair->seller : rng.uniform_int(0, params.sellers - 1);
    } else if (target >= params.sellers) {
      throw InvalidInput("truthfulness: target seller out of range");
    }
    emit("buyer", buyer, target, sweep_buyer_bid(inst, buyer, target, *engine, tie_seed, grid));
  }
  write_manifest(args, "truthfulness_sweep", cfg);

  if (!truthful_is_max) {
    std::cerr << "truthful report is not a maximizer\n";
    return 1;
  }
  std::cout << "truthful report maximizes utility on the sweep grid\n";
  return 0;
}

int cmd_eval_metrics(const CommonArgs& args, const std::string& ref_path,
                     const std::string& cand_path) {
  Config cfg = load_config(args);
  const int embed_dim = cfg.get_int("metrics", "embed_dim", 256);
  const int bleu_order = cfg.get_int("metrics", "bleu_order", 1);
  cfg.reject_unknown();
  const BleuConfig bleu_cfg = BleuConfig::uniform(bleu_order);

  const auto read_lines = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open text file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
  };
  const auto refs = read_lines(ref_path);
  const auto cands = read_lines(cand_path);
  if (refs.size() != cands.size()) {
    throw InvalidInput("eval-metrics: files have different line counts");
  }
  if (refs.empty()) throw InvalidInput("eval-metrics: files are empty");
  ensure_out_dir(args);

  double sum_std = 0.0, sum_lit = 0.0, sum_cos = 0.0;
  CsvWriter csv(out_path(args, "metrics.csv"), "semtrade.eval_metrics.v1");
  csv.row("line", "bleu_standard", "bleu_paper_literal", "cosine");
  for (size_t i = 0; i < refs.size(); ++i) {
    const Sentence ref = Sentence::tokenize(refs[i]);
    const Sentence cand = Sentence::tokenize(cands[i]);
    if (ref.empty() || cand.empty()) {
      throw InvalidInput("eval-metrics: empty line " + std::to_string(i + 1));
    }
    const double b_std = bleu(ref, cand, bleu_cfg, BrevityMode::kStandard);
    const double b_lit = bleu(ref, cand, bleu_cfg, BrevityMode::kPaperLiteral);
    const double cos = cosine_similarity(hash_embed(ref, embed_dim),
                                         hash_embed(cand, embed_dim));
    csv.row(static_cast<long>(i + 1), b_std, b_lit, cos);
    sum_std += b_std;
    sum_lit += b_lit;
    sum_cos += cos;
  }
  const double n = static_cast<double>(refs.size());
  {
    CsvWriter summary(out_path(args, "metrics_summary.csv"),
                      "semtrade.eval_metrics.summary.v1");
    summary.row("metric", "mean");
    summary.row("bleu_standard", sum_std / n);
    summary.row("bleu_paper_literal", sum_lit / n);
    summary.row("cosine", sum_cos / n);
  }
  write_manifest(args, "eval_metrics", cfg);
  std::cout << "scored " << refs.size() << " line pairs\n";
  return 0;
}

int cmd_verify(const CommonArgs& args) {
  Config cfg = load_config(args);
  const ScenarioParams params = read_scenario(cfg);
  const ScoreCurve curve = read_curve(cfg);
  const int spa_profiles = cfg.get_int("verify", "spa_profiles", 1000);
  const int spa_bidders = cfg.get_int("verify", "spa_bidders", 10);
  const int monotonicity_cases = cfg.get_int("verify", "monotonicity_cases", 2000);
  const int gradient_points = cfg.get_int("verify", "gradient_points", 25);
  const int instances = cfg.get_int("verify", "instances", 300);
  const int truthfulness_instances = cfg.get_int("verify", "truthfulness_instances", 8);
  const int truthfulness_grid = cfg.get_int("verify", "truthfulness_grid", 25);
  const std::vector<int> buyer_counts = cfg.get_int_list("verify", "buyers", {2, 6, 10});
  const int train_samples = cfg.get_int("dla", "train_samples", 1000);
  const TrainOptions options = read_train_options(cfg, args.seed);
  const auto theta = read_theta_sampler(cfg, args, options);
  cfg.reject_unknown();
  ensure_out_dir(args);

  const EngineSet engines(params, curve, *theta, buyer_counts, train_samples, options, "");

  std::vector<CheckResult> results;
  results.push_back(
      check_identity_spa_equivalence(spa_profiles, spa_bidders, mix_seed(args.seed, 21)));
  results.push_back(check_monotonicity_roundtrip(monotonicity_cases, mix_seed(args.seed, 22)));
  results.push_back(check_gradients(gradient_points, mix_seed(args.seed, 23)));
  {
    CheckResult r = check_double_auction_properties(
        params, curve, *theta, [&](int n) { return engines.dla(n); }, buyer_counts,
        instances, mix_seed(args.seed, 24));
    r.name += " (dla engine)";
    results.push_back(std::move(r));
  }
  {
    CheckResult r = check_double_auction_properties(
        params, curve, *theta, [&](int) { return engines.spa_engine(); }, buyer_counts,
        instances, mix_seed(args.seed, 25));
    r.name += " (spa engine)";
    results.push_back(std::move(r));
  }
  {
    CheckResult r = check_truthfulness(params, curve, *theta,
                                       [&](int n) { return engines.dla(n); }, buyer_counts,
                                       truthfulness_instances, truthfulness_grid,
                                       mix_seed(args.seed, 26));
    r.name += " (dla engine)";
    results.push_back(std::move(r));
  }
  {
    CheckResult r = check_truthfulness(params, curve, *theta,
                                       [&](int) { return engines.spa_engine(); },
                                       buyer_counts, truthfulness_instances,
                                       truthfulness_grid, mix_seed(args.seed, 27));
    r.name += " (spa engine)";
    results.push_back(std::move(r));
  }

  bool all_pass = true;
  CsvWriter csv(out_path(args, "verify_report.csv"), "semtrade.verify.v1");
  csv.row("status", "check", "detail");
  for (const auto& r : results) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    csv.row(r.pass ? "PASS" : "FAIL", r.name, detail);
    std::cout << (r.pass ? "PASS" : "FAIL") << "," << r.name << "," << detail << "\n";
    all_pass = all_pass && r.pass;
  }
  write_manifest(args, "verify", cfg);
  return all_pass ? 0 : 1;
}

}  // namespace semtrade::cli
