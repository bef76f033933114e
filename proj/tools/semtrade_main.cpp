// Command line front end: market experiments, metric utilities and the
// property verification suite. Exit codes: 0 success, 1 validation or
// property failure, 2 I/O or config errors.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "semtrade/common.hpp"

int main(int argc, char** argv) {
  CLI::App app{"semtrade: semantic market mechanism simulator"};
  app.require_subcommand(1);

  semtrade::cli::CommonArgs args;
  std::string ref_path, cand_path;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "config file (key = value sections)");
    cmd->add_option("--seed", args.seed, "master seed")->capture_default_str();
    cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
  };

  CLI::App* train = app.add_subcommand(
      "train-dla", "train the monotone auction and compare revenue with SPA");
  add_common(train);

  CLI::App* sweep = app.add_subcommand(
      "market-sweep", "double-auction market sweep over buyer counts");
  add_common(sweep);

  CLI::App* truth = app.add_subcommand(
      "truthfulness-sweep", "utility of one agent under ask/bid deviations");
  add_common(truth);

  CLI::App* metrics = app.add_subcommand(
      "eval-metrics", "per-line BLEU and embedding similarity for two text files");
  metrics->add_option("reference", ref_path, "reference text file")->required();
  metrics->add_option("candidate", cand_path, "candidate text file")->required();
  add_common(metrics);

  CLI::App* verify = app.add_subcommand(
      "verify", "run the mechanism property suite; nonzero exit on violation");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (train->parsed()) return semtrade::cli::cmd_train_dla(args);
    if (sweep->parsed()) return semtrade::cli::cmd_market_sweep(args);
    if (truth->parsed()) return semtrade::cli::cmd_truthfulness_sweep(args);
    if (metrics->parsed()) return semtrade::cli::cmd_eval_metrics(args, ref_path, cand_path);
    if (verify->parsed()) return semtrade::cli::cmd_verify(args);
  } catch (const semtrade::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const semtrade::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const semtrade::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
