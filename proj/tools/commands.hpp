#pragma once

#include <cstdint>
#include <string>

namespace semtrade::cli {

struct CommonArgs {
  std::string config_path;  // empty = built-in defaults
  uint64_t seed = 1;
  std::string out_dir = "out";
};

int cmd_train_dla(const CommonArgs& args);
int cmd_market_sweep(const CommonArgs& args);
int cmd_truthfulness_sweep(const CommonArgs& args);
int cmd_eval_metrics(const CommonArgs& args, const std::string& ref_path,
                     const std::string& cand_path);
int cmd_verify(const CommonArgs& args);

}  // namespace semtrade::cli
