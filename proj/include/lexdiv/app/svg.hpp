#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lexdiv::app {

// Self-contained SVG charts. Each chart embeds its data as a CSV table inside
// an XML comment so the figures stay diffable.

struct LabeledValue {
  std::string label;
  double value = 0.0;
};

struct StripGroup {
  std::string name;
  std::vector<LabeledValue> points;
};

// Box (quartiles, median, min/max whiskers) plus individual points per group.
std::string strip_chart(const std::string& title, const std::string& y_label,
                        const std::vector<StripGroup>& groups);

struct BarSeries {
  std::string name;
  std::vector<std::optional<double>> values;  // one per category
};

// One group of bars per category. Reference series are drawn as dashed
// horizontal segments across each category's group.
std::string grouped_bar_chart(const std::string& title, const std::string& y_label,
                              const std::vector<std::string>& categories, const std::vector<BarSeries>& bars,
                              const std::vector<BarSeries>& references);

struct LineSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<LineSeries>& series);

std::string xml_escape(const std::string& text);

}  // namespace lexdiv::app
