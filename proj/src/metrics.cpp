#include "semtrade/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

namespace semtrade {

Sentence Sentence::tokenize(std::string_view text) {
  Sentence s;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) {
        s.tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!current.empty()) s.tokens.push_back(std::move(current));
  return s;
}

void BleuConfig::validate() const {
  if (max_order < 1) throw InvalidInput("bleu: gram order must be at least 1");
  if (static_cast<int>(weights.size()) != max_order) {
    throw InvalidInput("bleu: need one weight per gram order");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidInput("bleu: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("bleu: weights must sum to 1");
}

BleuConfig BleuConfig::uniform(int order) {
  if (order < 1) throw InvalidInput("bleu: gram order must be at least 1");
  BleuConfig cfg;
  cfg.max_order = order;
  cfg.weights.assign(static_cast<size_t>(order), 1.0 / order);
  return cfg;
}

namespace {

// Joins a token range into a single key; '\x1f' cannot appear in tokens.
std::string gram_key(const std::vector<std::string>& tokens, size_t start, int order) {
  std::string key = tokens[start];
  for (int i = 1; i < order; ++i) {
    key.push_back('\x1f');
    key += tokens[start + static_cast<size_t>(i)];
  }
  return key;
}

// Clipped modified precision for one gram order. Returns -1 when the
// candidate has no grams of this order.
double modified_precision(const Sentence& ref, const Sentence& cand, int order) {
  const int cand_grams = static_cast<int>(cand.tokens.size()) - order + 1;
  if (cand_grams <= 0) return -1.0;

  std::unordered_map<std::string, int> ref_counts;
  const int ref_grams = static_cast<int>(ref.tokens.size()) - order + 1;
  for (int i = 0; i < ref_grams; ++i) {
    ++ref_counts[gram_key(ref.tokens, static_cast<size_t>(i), order)];
  }

  std::unordered_map<std::string, int> cand_counts;
  for (int i = 0; i < cand_grams; ++i) {
    ++cand_counts[gram_key(cand.tokens, static_cast<size_t>(i), order)];
  }

  int matched = 0;
  for (const auto& [key, count] : cand_counts) {
    auto it = ref_counts.find(key);
    if (it != ref_counts.end()) matched += std::min(count, it->second);
  }
  return static_cast<double>(matched) / static_cast<double>(cand_grams);
}

}  // namespace

double bleu(const Sentence& reference, const Sentence& candidate,
            const BleuConfig& cfg, BrevityMode mode) {
  cfg.validate();
  if (reference.empty() || candidate.empty()) {
    throw InvalidInput("bleu: sentences must be nonempty");
  }

  const double len_ref = static_cast<double>(reference.tokens.size());
  const double len_cand = static_cast<double>(candidate.tokens.size());

  double log_score = 0.0;
  switch (mode) {
    case BrevityMode::kPaperLiteral:
      log_score = std::min(1.0 - len_cand / len_ref, 0.0);
      break;
    case BrevityMode::kStandard:
      log_score = std::min(1.0 - len_ref / len_cand, 0.0);
      break;
  }

  for (int order = 1; order <= cfg.max_order; ++order) {
    const double weight = cfg.weights[static_cast<size_t>(order - 1)];
    if (weight == 0.0) continue;
    const double p = modified_precision(reference, candidate, order);
    if (p <= 0.0) return 0.0;
    log_score += weight * std::log(p);
  }
  return std::clamp(std::exp(log_score), 0.0, 1.0);
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.empty() || u.size() != v.size()) {
    throw InvalidInput("cosine: vectors must be nonempty and of equal length");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw InvalidInput("cosine: zero-norm vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

namespace {

// FNV-1a, 64-bit. Fixed offset basis acts as the documented seed.
uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::vector<double> hash_embed(const Sentence& s, int dim) {
  if (dim < 1) throw InvalidInput("hash_embed: dimension must be at least 1");
  std::vector<double> v(static_cast<size_t>(dim), 0.0);
  for (const auto& token : s.tokens) {
    v[fnv1a(token) % static_cast<uint64_t>(dim)] += 1.0;
  }
  return v;
}

SemanticScores ScoreCurve::at(int dim) const {
  if (dim < 1 || dim > max_dim) {
    throw InvalidInput("score curve: dimension out of range");
  }
  const size_t i = static_cast<size_t>(dim - 1);
  return SemanticScores{sim_at[i], bleu_at[i]};
}

namespace {

double parse_curve_double(std::string_view text, const std::string& origin) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidInput(origin + ": malformed number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ScoreCurve ScoreCurve::parse(std::istream& in, const std::string& origin) {
  ScoreCurve curve;
  std::string line;

  // Metadata line: "# bits_per_feature=<value>".
  if (!std::getline(in, line)) throw InvalidInput(origin + ": empty curve file");
  const std::string_view meta_prefix = "# bits_per_feature=";
  if (line.rfind(meta_prefix, 0) != 0) {
    throw InvalidInput(origin + ": first line must be '# bits_per_feature=<value>'");
  }
  curve.bits_per_feature = parse_curve_double(
      std::string_view(line).substr(meta_prefix.size()), origin);
  if (!(curve.bits_per_feature > 0.0) || !std::isfinite(curve.bits_per_feature)) {
    throw InvalidInput(origin + ": bits_per_feature must be positive");
  }

  if (!std::getline(in, line) || line != "dim,sim,bleu") {
    throw InvalidInput(origin + ": expected header 'dim,sim,bleu'");
  }

  int expected_dim = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string_view row(line);
    const size_t c1 = row.find(',');
    const size_t c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
      throw InvalidInput(origin + ": rows must be 'dim,sim,bleu'");
    }
    const double dim_value = parse_curve_double(row.substr(0, c1), origin);
    const double sim = parse_curve_double(row.substr(c1 + 1, c2 - c1 - 1), origin);
    const double bl = parse_curve_double(row.substr(c2 + 1), origin);

    if (dim_value != static_cast<double>(expected_dim)) {
      throw InvalidInput(origin + ": dimensions must run 1..D without gaps or duplicates");
    }
    if (!(sim >= 0.0 && sim <= 1.0) || !(bl >= 0.0 && bl <= 1.0)) {
      throw InvalidInput(origin + ": scores must lie in [0,1]");
    }
    if (!curve.sim_at.empty() && (sim < curve.sim_at.back() || bl < curve.bleu_at.back())) {
      throw InvalidInput(origin + ": scores must be nondecreasing in dimension");
    }
    curve.sim_at.push_back(sim);
    curve.bleu_at.push_back(bl);
    ++expected_dim;
  }

  curve.max_dim = static_cast<int>(curve.sim_at.size());
  if (curve.max_dim == 0) throw InvalidInput(origin + ": curve has no rows");
  return curve;
}

ScoreCurve ScoreCurve::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open score curve file: " + path);
  return parse(in, path);
}

int dim_from_bits(double bit_budget, int sentence_count, int sentence_length,
                  const ScoreCurve& curve) {
  if (sentence_count < 1 || sentence_length < 1) {
    throw InvalidInput("dim_from_bits: sentence count and length must be at least 1");
  }
  if (!(bit_budget >= 0.0) || !std::isfinite(bit_budget)) {
    throw InvalidInput("dim_from_bits: bit budget must be finite and nonnegative");
  }
  const double per_dim = static_cast<double>(sentence_count) *
                         static_cast<double>(sentence_length) * curve.bits_per_feature;
  const double dims = std::floor(bit_budget / per_dim);
  if (dims < 1.0) {
    throw InvalidInput("dim_from_bits: bit budget below one output dimension");
  }
  return std::min(curve.max_dim, static_cast<int>(dims));
}

}  // namespace semtrade
