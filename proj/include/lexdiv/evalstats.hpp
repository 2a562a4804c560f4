#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexdiv {

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Sample Pearson correlation with a two-sided p-value from Student's t with
// n - 2 degrees of freedom. Throws InputError on length mismatch or n < 3,
// UndefinedMetric when either vector is constant.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Two-sided p-value of a correlation r over n samples.
double correlation_p_value(double r, std::size_t n);

// Columns of the cross-system summary table, in output order.
enum class Metric { kTtr, kYulesI, kMtld, kPtf, kCdu, kSynTtr, kBleu };
inline constexpr std::size_t kMetricCount = 7;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics{
    Metric::kTtr, Metric::kYulesI, Metric::kMtld, Metric::kPtf, Metric::kCdu, Metric::kSynTtr, Metric::kBleu};

std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

// Per-book metric values of one system (absent metrics simply missing).
struct SystemTable {
  std::string system;
  std::map<std::string, std::map<Metric, double>> books;
};

struct SummaryRow {
  std::string system;
  std::array<std::optional<double>, kMetricCount> means;
  std::array<bool, kMetricCount> closest{};  // closest to the reference system
};

// Unweighted mean over books per metric and system. When `reference` names a
// system, each metric marks the non-reference system whose mean is nearest to
// the reference mean (first wins on ties); a lone system marks itself.
// Throws InputError listing the books missing from any system.
std::vector<SummaryRow> summarize(std::span<const SystemTable> systems,
                                  const std::optional<std::string>& reference = std::nullopt);

// CSV `system,ttr,yules_i,mtld,ptf,cdu,syn_ttr,bleu,closest_to_ht` where the
// last column lists the metrics (';'-separated) this row is closest on.
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

// Reads a per-book metric CSV: a `book_id` column plus any subset of the
// metric columns; other columns are ignored and empty cells are absent values.
SystemTable parse_metric_table(std::istream& in, std::string system,
                               const std::string& source_name = "<metrics>");

}  // namespace lexdiv
