#include "lexdiv/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "lexdiv/corpus.hpp"
#include "lexdiv/error.hpp"
#include "lexdiv/format.hpp"
#include "lexdiv/utf8.hpp"

namespace lexdiv {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
constexpr std::uint64_t kHashSeed = 0x6c65786469760001ULL;
constexpr int kModelVersion = 1;

// Clamped so that extreme scores still give a probability strictly inside (0, 1).
double sigmoid(double z) {
  constexpr double lo = std::numeric_limits<double>::denorm_min();
  const double hi = std::nextafter(1.0, 0.0);
  if (z >= 0) return std::min(hi, 1.0 / (1.0 + std::exp(-z)));
  const double e = std::exp(z);
  return std::max(lo, e / (1.0 + e));
}

// -log p(y | z) computed without overflow.
double log_loss(double z, bool label) {
  const double softplus = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
  return softplus - (label ? z : 0.0);
}

double dot(const std::vector<double>& w, std::span<const SparseFeature> x) {
  double s = 0.0;
  for (const auto& f : x) s += w[f.index] * f.value;
  return s;
}

// Fisher-Yates on the raw engine output; std::shuffle and the standard
// distributions are implementation-defined and would break reproducibility.
void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

std::uint64_t feature_hash(std::string_view bytes, int order) {
  std::uint64_t h = kFnvOffset ^ kHashSeed;
  h ^= static_cast<std::uint8_t>(order);
  h *= kFnvPrime;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

std::vector<SparseFeature> extract_features(std::string_view text, std::span<const int> orders,
                                            unsigned dim_log2) {
  std::string padded;
  padded.reserve(text.size() + 2);
  padded += ' ';
  padded += text;
  padded += ' ';
  utf8::require_valid(padded, "<text>");
  // byte offset of every code point, plus the end
  std::vector<std::size_t> starts;
  for (std::size_t pos = 0; pos < padded.size();) {
    starts.push_back(pos);
    utf8::next(padded, pos);
  }
  const std::size_t n_cp = starts.size();
  starts.push_back(padded.size());

  const std::uint64_t mask = (std::uint64_t{1} << dim_log2) - 1;
  std::map<std::uint32_t, double> counts;
  for (const int order : orders) {
    const auto n = static_cast<std::size_t>(order);
    for (std::size_t i = 0; i + n <= n_cp; ++i) {
      const std::string_view gram(padded.data() + starts[i], starts[i + n] - starts[i]);
      counts[static_cast<std::uint32_t>(feature_hash(gram, order) & mask)] += 1.0;
    }
  }
  double norm2 = 0.0;
  for (const auto& [idx, c] : counts) norm2 += c * c;
  const double inv = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 0.0;
  std::vector<SparseFeature> out;
  out.reserve(counts.size());
  for (const auto& [idx, c] : counts) out.push_back({idx, c * inv});
  return out;
}

void validate(const ScorerConfig& config) {
  if (config.orders.empty()) throw ConfigError("scorer needs at least one n-gram order");
  for (int o : config.orders) {
    if (o < 1 || o > 8) throw ConfigError("n-gram order " + std::to_string(o) + " outside 1..8");
  }
  if (config.dim_log2 < 1 || config.dim_log2 > 28) throw ConfigError("dim_log2 outside 1..28");
  if (config.epochs < 0) throw ConfigError("epochs must be >= 0");
  if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
    throw ConfigError("learning rate must be positive");
  }
  if (config.batch_size < 1) throw ConfigError("batch size must be >= 1");
}

ScorerModel ScorerModel::zero(const ScorerConfig& config) {
  validate(config);
  ScorerModel m;
  m.config = config;
  m.weights.assign(std::size_t{1} << config.dim_log2, 0.0);
  return m;
}

double ScorerModel::linear_score(std::string_view text) const {
  const auto x = extract_features(text, config.orders, config.dim_log2);
  return dot(weights, x) + bias;
}

ScorerModel train(std::span<const std::string> positives, std::span<const std::string> negatives,
                  const ScorerConfig& config) {
  if (positives.empty()) throw InputError("training needs at least one positive sentence");
  if (negatives.empty()) throw InputError("training needs at least one negative sentence");
  ScorerModel model = ScorerModel::zero(config);

  std::vector<std::vector<SparseFeature>> features;
  std::vector<bool> labels;
  features.reserve(positives.size() + negatives.size());
  for (const auto& s : positives) {
    features.push_back(extract_features(s, config.orders, config.dim_log2));
    labels.push_back(true);
  }
  for (const auto& s : negatives) {
    features.push_back(extract_features(s, config.orders, config.dim_log2));
    labels.push_back(false);
  }
  const std::size_t n = features.size();

  auto mean_loss = [&] {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += log_loss(dot(model.weights, features[i]) + model.bias, labels[i]);
    return total / static_cast<double>(n);
  };
  model.loss_history.push_back(mean_loss());

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(model.weights.size(), 0.0);
  std::vector<std::uint32_t> touched;

  const std::size_t batches = (n + config.batch_size - 1) / config.batch_size;
  const double total_steps = static_cast<double>(batches) * config.epochs;
  std::size_t step_no = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle(order, rng);
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + config.batch_size);
      double grad_bias = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const auto i = order[k];
        const double err = sigmoid(dot(model.weights, features[i]) + model.bias) - (labels[i] ? 1.0 : 0.0);
        grad_bias += err;
        for (const auto& f : features[i]) {
          if (grad[f.index] == 0.0) touched.push_back(f.index);
          grad[f.index] += err * f.value;
        }
      }
      const double rate = config.learning_rate * (1.0 - static_cast<double>(step_no++) / total_steps);
      const double step = rate / static_cast<double>(end - start);
      for (auto idx : touched) {
        model.weights[idx] -= step * grad[idx];
        grad[idx] = 0.0;
      }
      touched.clear();
      model.bias -= step * grad_bias;
    }
    const double loss = mean_loss();
    if (!std::isfinite(loss)) {
      std::ostringstream msg;
      msg << "training diverged: non-finite loss after epoch " << epoch << " (learning rate "
          << config.learning_rate << ", previous loss " << model.loss_history.back() << ", bias "
          << model.bias << ")";
      throw Error(msg.str());
    }
    model.loss_history.push_back(loss);
  }
  return model;
}

double predict_proba(const ScorerModel& model, std::string_view text) {
  return sigmoid(model.linear_score(text));
}

EvalReport report_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn, std::uint64_t tn) {
  EvalReport r{tp, fp, fn, tn};
  auto ratio = [](std::uint64_t a, std::uint64_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
  r.accuracy = ratio(tp + tn, tp + tn + fp + fn);
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  r.f1 = (r.precision + r.recall) == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

EvalReport evaluate(const ScorerModel& model, std::span<const LabeledSentence> data) {
  if (data.empty()) throw InputError("evaluation needs at least one labelled sentence");
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& s : data) {
    const bool predicted = predict_proba(model, s.text) >= 0.5;
    if (predicted && s.original) ++tp;
    else if (predicted) ++fp;
    else if (s.original) ++fn;
    else ++tn;
  }
  return report_from_counts(tp, fp, fn, tn);
}

std::string model_to_json(const ScorerModel& model) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["format"] = "lexdiv-scorer";
  j["version"] = kModelVersion;
  j["config"] = {{"orders", model.config.orders},
                 {"dim_log2", model.config.dim_log2},
                 {"epochs", model.config.epochs},
                 {"learning_rate", model.config.learning_rate},
                 {"batch_size", model.config.batch_size},
                 {"seed", model.config.seed}};
  j["bias"] = model.bias;
  auto weights = ordered_json::array();
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    if (model.weights[i] != 0.0) weights.push_back({i, model.weights[i]});
  }
  j["weights"] = std::move(weights);
  j["loss_history"] = model.loss_history;
  return j.dump() + "\n";
}

ScorerModel model_from_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
    if (j.value("format", std::string()) != "lexdiv-scorer") throw ParseError("not a lexdiv-scorer model");
    if (j.at("version").get<int>() != kModelVersion) {
      throw ParseError("unsupported model version " + j.at("version").dump());
    }
    ScorerConfig cfg;
    const auto& c = j.at("config");
    cfg.orders = c.at("orders").get<std::vector<int>>();
    cfg.dim_log2 = c.at("dim_log2").get<unsigned>();
    cfg.epochs = c.at("epochs").get<int>();
    cfg.learning_rate = c.at("learning_rate").get<double>();
    cfg.batch_size = c.at("batch_size").get<std::size_t>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    ScorerModel m = ScorerModel::zero(cfg);
    m.bias = j.at("bias").get<double>();
    if (!std::isfinite(m.bias)) throw ParseError("non-finite bias");
    for (const auto& w : j.at("weights")) {
      const auto idx = w.at(0).get<std::size_t>();
      const auto value = w.at(1).get<double>();
      if (idx >= m.weights.size()) throw ParseError("weight index " + std::to_string(idx) + " out of range");
      if (!std::isfinite(value)) throw ParseError("non-finite weight at index " + std::to_string(idx));
      m.weights[idx] = value;
    }
    if (j.contains("loss_history")) m.loss_history = j["loss_history"].get<std::vector<double>>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const ScorerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << model_to_json(model);
}

ScorerModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_file(path));
}

ScoreMap parse_scores(std::istream& in, const std::string& source_name) {
  ScoreMap scores;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto f = split(line, '\t');
    if (lineno == 1 && !f.empty() && f[0] == "book_id") continue;
    if (f.size() != 4) throw ParseError(source_name, lineno, "expected 4 tab-separated fields");
    std::uint64_t sent_id = 0;
    std::size_t cand = 0;
    double p = 0.0;
    try {
      std::size_t used = 0;
      if (f[1].empty() || f[1][0] == '-') throw std::invalid_argument("sent_id");
      sent_id = std::stoull(f[1], &used);
      if (used != f[1].size()) throw std::invalid_argument("sent_id");
      if (f[2].empty() || f[2][0] == '-') throw std::invalid_argument("cand_idx");
      cand = std::stoull(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument("cand_idx");
      p = std::stod(f[3], &used);
      if (used != f[3].size()) throw std::invalid_argument("p_original");
    } catch (const std::logic_error&) {
      throw ParseError(source_name, lineno, "malformed numeric field");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ParseError(source_name, lineno, "p_original " + f[3] + " outside range [0,1]");
    }
    if (!scores.emplace(ScoreKey{f[0], sent_id, cand}, p).second) {
      throw ParseError(source_name, lineno, "duplicate key (" + f[0] + ", " + f[1] + ", " + f[2] + ")");
    }
  }
  return scores;
}

ScoreMap load_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_scores(in, path.string());
}

void write_scores(std::ostream& out, const ScoreMap& scores) {
  out << "book_id\tsent_id\tcand_idx\tp_original\n";
  for (const auto& [key, p] : scores) {
    out << std::get<0>(key) << '\t' << std::get<1>(key) << '\t' << std::get<2>(key) << '\t'
        << fixed(p, 12) << '\n';
  }
}

}  // namespace lexdiv
