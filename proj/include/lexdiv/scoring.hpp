#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace lexdiv {

struct ScorerConfig {
  std::vector<int> orders{1, 2, 3};  // character n-gram orders
  unsigned dim_log2 = 18;            // 2^18 hashed buckets
  int epochs = 10;
  double learning_rate = 5.0;       // initial rate, decayed linearly to 0
  std::size_t batch_size = 16;
  std::uint64_t seed = 1;
};

struct SparseFeature {
  std::uint32_t index = 0;
  double value = 0.0;
};

// Hashed character n-gram counts of `text` (code points, padded with one space
// on each side), L2-normalized and sorted by index. Bucket = FNV-1a 64 of
// (order byte, UTF-8 n-gram bytes) from a fixed seeded offset, masked to
// dim_log2 bits. Identical on every platform.
std::vector<SparseFeature> extract_features(std::string_view text, std::span<const int> orders,
                                            unsigned dim_log2);

std::uint64_t feature_hash(std::string_view bytes, int order);

// Logistic regression over hashed character n-grams.
struct ScorerModel {
  ScorerConfig config;
  std::vector<double> weights;  // size 2^dim_log2
  double bias = 0.0;
  // Mean training log-loss before the first epoch and after each epoch.
  std::vector<double> loss_history;

  // Zero weights: every prediction is 0.5.
  static ScorerModel zero(const ScorerConfig& config);

  double linear_score(std::string_view text) const;
};

// Validates orders (1..8, non-empty), dim_log2 (1..28), epochs >= 0,
// learning_rate > 0 and batch_size >= 1; throws ConfigError otherwise.
void validate(const ScorerConfig& config);

// Mini-batch gradient descent on mean log-loss; positives are labelled 1
// (original target-language text). The step size falls linearly from
// learning_rate to 0 over the run. Shuffling uses the seed, so training is
// deterministic. Throws InputError on an empty stream and Error when the
// loss becomes non-finite.
ScorerModel train(std::span<const std::string> positives, std::span<const std::string> negatives,
                  const ScorerConfig& config);

// sigmoid(linear score); always inside (0, 1).
double predict_proba(const ScorerModel& model, std::string_view text);

struct LabeledSentence {
  std::string text;
  bool original = false;
};

struct EvalReport {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Metrics from confusion counts; a ratio with a zero denominator is 0.
EvalReport report_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn, std::uint64_t tn);

// Predictions >= 0.5 count as "original". Throws InputError on an empty stream.
EvalReport evaluate(const ScorerModel& model, std::span<const LabeledSentence> data);

// JSON container, format "lexdiv-scorer" version 1. Only non-zero weights are
// stored, as [index, value] pairs.
void save_model(const ScorerModel& model, const std::filesystem::path& path);
ScorerModel load_model(const std::filesystem::path& path);
std::string model_to_json(const ScorerModel& model);
ScorerModel model_from_json(std::string_view text);

// (book_id, sent_id, candidate index) -> probability of original text.
using ScoreKey = std::tuple<std::string, std::uint64_t, std::size_t>;
using ScoreMap = std::map<ScoreKey, double>;

// TSV `book_id sent_id cand_idx p_original`, optional header line.
ScoreMap parse_scores(std::istream& in, const std::string& source_name = "<scores>");
ScoreMap load_scores(const std::filesystem::path& path);
void write_scores(std::ostream& out, const ScoreMap& scores);

}  // namespace lexdiv
