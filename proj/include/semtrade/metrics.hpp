#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semtrade/common.hpp"
#include "semtrade/market.hpp"

namespace semtrade {

struct Sentence {
  std::vector<std::string> tokens;

  // Lowercases and splits on whitespace.
  static Sentence tokenize(std::string_view text);
  bool empty() const { return tokens.empty(); }
};

struct BleuConfig {
  int max_order = 1;
  std::vector<double> weights = {1.0};  // one weight per gram order, sums to 1

  void validate() const;
  static BleuConfig uniform(int order);
};

// The brevity term as printed penalizes long candidates; standard BLEU
// penalizes short ones. Both are selectable and tested.
enum class BrevityMode { kStandard, kPaperLiteral };

// n-gram overlap score in [0,1]. Zero as soon as any weighted gram order
// has zero clipped precision.
double bleu(const Sentence& reference, const Sentence& candidate,
            const BleuConfig& cfg = BleuConfig{},
            BrevityMode mode = BrevityMode::kStandard);

// u.v / (|u||v|), clamped to [-1,1]. Zero-norm input is an error.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

// Deterministic bag-of-words embedding: FNV-1a 64-bit token hash modulo dim,
// bucket counts accumulated. Bit-stable across platforms.
std::vector<double> hash_embed(const Sentence& s, int dim);

// Tabulated semantic performance per encoder output dimension, with the
// per-feature bit width used to map bit budgets onto dimensions.
struct ScoreCurve {
  int max_dim = 0;
  std::vector<double> sim_at;   // index 0 holds dimension 1
  std::vector<double> bleu_at;
  double bits_per_feature = 32.0;

  SemanticScores at(int dim) const;

  // Strict parse of the curve file format (see README). Duplicate, missing
  // or non-monotone rows are load errors.
  static ScoreCurve parse(std::istream& in, const std::string& origin);
  static ScoreCurve load(const std::string& path);
};

// floor(bit_budget / (sentences * length * bits_per_feature)), clamped to
// [1, max_dim]. Budgets below one full dimension are an error.
int dim_from_bits(double bit_budget, int sentence_count, int sentence_length,
                  const ScoreCurve& curve);

}  // namespace semtrade
