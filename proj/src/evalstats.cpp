#include "lexdiv/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include <boost/math/special_functions/beta.hpp>

#include "lexdiv/error.hpp"
#include "lexdiv/format.hpp"

namespace lexdiv {

double correlation_p_value(double r, std::size_t n) {
  if (n < 3) throw InputError("correlation p-value needs n >= 3");
  const double r2 = std::min(1.0, r * r);
  if (r2 >= 1.0) return 0.0;
  // P(|T| >= |t|) with t = r sqrt(df / (1 - r^2)) reduces to I_{1-r^2}(df/2, 1/2).
  const double df = static_cast<double>(n - 2);
  return boost::math::ibeta(df / 2.0, 0.5, 1.0 - r2);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 3) throw InputError("pearson: needs at least 3 samples, got " + std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedMetric("pearson: correlation undefined for a constant vector");
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {r, correlation_p_value(r, n), n};
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kTtr: return "ttr";
    case Metric::kYulesI: return "yules_i";
    case Metric::kMtld: return "mtld";
    case Metric::kPtf: return "ptf";
    case Metric::kCdu: return "cdu";
    case Metric::kSynTtr: return "syn_ttr";
    case Metric::kBleu: return "bleu";
  }
  return "ttr";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::vector<SummaryRow> summarize(std::span<const SystemTable> systems, const std::optional<std::string>& reference) {
  if (systems.empty()) throw InputError("summarize: no systems given");
  std::set<std::string> all_books;
  for (const auto& s : systems) {
    for (const auto& [book, _] : s.books) all_books.insert(book);
  }
  std::string missing;
  for (const auto& s : systems) {
    for (const auto& book : all_books) {
      if (!s.books.count(book)) missing += (missing.empty() ? "" : "; ") + s.system + " lacks '" + book + "'";
    }
  }
  if (!missing.empty()) throw InputError("summarize: book sets differ: " + missing);

  std::vector<SummaryRow> rows;
  std::optional<std::size_t> ref_row;
  for (const auto& s : systems) {
    SummaryRow row;
    row.system = s.system;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& [book, values] : s.books) {
        const auto it = values.find(kAllMetrics[m]);
        if (it == values.end()) continue;
        sum += it->second;
        ++count;
      }
      if (count > 0) row.means[m] = sum / static_cast<double>(count);
    }
    if (reference && s.system == *reference) ref_row = rows.size();
    rows.push_back(std::move(row));
  }

  if (rows.size() == 1) {
    for (std::size_t m = 0; m < kMetricCount; ++m) rows[0].closest[m] = rows[0].means[m].has_value();
    return rows;
  }
  if (!ref_row) return rows;
  for (std::size_t m = 0; m < kMetricCount; ++m) {
    const auto& target = rows[*ref_row].means[m];
    if (!target) continue;
    std::optional<std::size_t> best;
    double best_gap = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == *ref_row || !rows[i].means[m]) continue;
      const double gap = std::abs(*rows[i].means[m] - *target);
      if (!best || gap < best_gap) {
        best = i;
        best_gap = gap;
      }
    }
    if (best) rows[*best].closest[m] = true;
  }
  return rows;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "system";
  for (Metric m : kAllMetrics) out << ',' << to_string(m);
  out << ",closest_to_ht\n";
  for (const auto& row : rows) {
    out << csv_field(row.system);
    std::string marks;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      out << ',' << fixed(row.means[m]);
      if (row.closest[m]) marks += (marks.empty() ? "" : ";") + std::string(to_string(kAllMetrics[m]));
    }
    out << ',' << marks << '\n';
  }
}

SystemTable parse_metric_table(std::istream& in, std::string system, const std::string& source_name) {
  SystemTable table;
  table.system = std::move(system);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::optional<Metric>> columns;
  std::optional<std::size_t> id_col;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = parse_csv_record(line);
    } catch (const ParseError& e) {
      throw ParseError(source_name, lineno, e.what());
    }
    if (!id_col) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c] == "book_id") id_col = c;
        columns.push_back(parse_metric(fields[c]));
      }
      if (!id_col) throw ParseError(source_name, lineno, "header lacks a book_id column");
      continue;
    }
    if (fields.size() != columns.size()) {
      throw ParseError(source_name, lineno, "expected " + std::to_string(columns.size()) + " fields");
    }
    auto& values = table.books[fields[*id_col]];
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!columns[c] || fields[c].empty()) continue;
      try {
        std::size_t used = 0;
        const double v = std::stod(fields[c], &used);
        if (used != fields[c].size()) throw std::invalid_argument(fields[c]);
        values[*columns[c]] = v;
      } catch (const std::logic_error&) {
        throw ParseError(source_name, lineno, "malformed number '" + fields[c] + "'");
      }
    }
  }
  return table;
}

}  // namespace lexdiv
