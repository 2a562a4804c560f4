#include "lexdiv/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lexdiv/format.hpp"

namespace lexdiv::app {
namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 70;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr const char* kReferencePalette[] = {"#2ca02c", "#d62728", "#7f7f7f", "#17becf"};

std::string num(double v) { return fixed(v, 2); }

// Data comments must not contain "--".
std::string comment_safe(std::string s) {
  std::size_t at;
  while ((at = s.find("--")) != std::string::npos) s.replace(at, 2, "- ");
  return s;
}

struct Axis {
  double lo = 0;
  double hi = 1;
  double step = 0.1;
};

Axis nice_axis(double lo, double hi, bool include_zero) {
  if (include_zero) lo = std::min(lo, 0.0), hi = std::max(hi, 0.0);
  if (!(hi > lo)) {
    const double pad = lo == 0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    step = m * mag;
    if (raw <= step) break;
  }
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

class Canvas {
 public:
  Canvas(const std::string& title, const Axis& y, const std::string& y_label) : y_(y) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
         << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out_ << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">"
         << xml_escape(title) << "</text>\n";
    out_ << "<g class=\"y-axis\">\n";
    out_ << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
         << "\" stroke=\"black\"/>\n";
    const int ticks = static_cast<int>(std::round((y.hi - y.lo) / y.step));
    for (int i = 0; i <= ticks; ++i) {
      const double v = y.lo + i * y.step;
      const double py = ypos(v);
      out_ << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << num(py) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
           << num(py) << "\" stroke=\"#e0e0e0\"/>\n";
      out_ << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">" << tick_label(v)
           << "</text>\n";
    }
    out_ << "<text transform=\"translate(18," << num((kTop + kHeight - kBottom) / 2)
         << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(y_label) << "</text>\n";
    out_ << "</g>\n";
    out_ << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
         << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  }

  double ypos(double v) const {
    return kTop + (kHeight - kTop - kBottom) * (1.0 - (v - y_.lo) / (y_.hi - y_.lo));
  }

  std::string tick_label(double v) const {
    const int decimals = y_.step >= 1 ? 0 : static_cast<int>(std::ceil(-std::log10(y_.step)));
    return fixed(v, std::min(decimals + 1, 6));
  }

  std::ostringstream& out() { return out_; }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries, bool dashed_from = false,
              std::size_t first_dashed = 0) {
    out_ << "<g class=\"legend\">\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const double y = kTop + 10 + 20.0 * static_cast<double>(i);
      const double x = kWidth - kRight + 15;
      if (dashed_from && i >= first_dashed) {
        out_ << "<line x1=\"" << x << "\" y1=\"" << num(y) << "\" x2=\"" << x + 18 << "\" y2=\"" << num(y)
             << "\" stroke=\"" << entries[i].second << "\" stroke-width=\"2\" stroke-dasharray=\"4,3\"/>\n";
      } else {
        out_ << "<rect x=\"" << x << "\" y=\"" << num(y - 6) << "\" width=\"18\" height=\"12\" fill=\""
             << entries[i].second << "\"/>\n";
      }
      out_ << "<text x=\"" << x + 24 << "\" y=\"" << num(y + 4) << "\">" << xml_escape(entries[i].first)
           << "</text>\n";
    }
    out_ << "</g>\n";
  }

  std::string finish(const std::string& data_csv) {
    out_ << "<!-- data\n" << comment_safe(data_csv) << "-->\n";
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  Axis y_;
  std::ostringstream out_;
};

double quantile(std::vector<double> sorted, double q) {
  // linear interpolation between closest ranks
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string strip_chart(const std::string& title, const std::string& y_label, const std::vector<StripGroup>& groups) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& g : groups) {
    for (const auto& p : g.points) lo = std::min(lo, p.value), hi = std::max(hi, p.value);
  }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  Canvas c(title, nice_axis(lo, hi, false), y_label);
  std::ostringstream data;
  data << "group,label,value\n";
  const double plot_w = kWidth - kLeft - kRight;
  const double slot = plot_w / static_cast<double>(std::max<std::size_t>(groups.size(), 1));
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    const double cx = kLeft + slot * (static_cast<double>(gi) + 0.5);
    auto& o = c.out();
    o << "<g class=\"group\" data-name=\"" << xml_escape(g.name) << "\">\n";
    if (!g.points.empty()) {
      std::vector<double> v;
      for (const auto& p : g.points) v.push_back(p.value);
      std::sort(v.begin(), v.end());
      const double q1 = quantile(v, 0.25), med = quantile(v, 0.5), q3 = quantile(v, 0.75);
      const double half = std::min(40.0, slot * 0.3);
      o << "<line class=\"whisker\" x1=\"" << num(cx) << "\" y1=\"" << num(c.ypos(v.front())) << "\" x2=\""
        << num(cx) << "\" y2=\"" << num(c.ypos(v.back())) << "\" stroke=\"black\"/>\n";
      for (double w : {v.front(), v.back()}) {
        o << "<line x1=\"" << num(cx - half / 2) << "\" y1=\"" << num(c.ypos(w)) << "\" x2=\"" << num(cx + half / 2)
          << "\" y2=\"" << num(c.ypos(w)) << "\" stroke=\"black\"/>\n";
      }
      o << "<rect class=\"box\" x=\"" << num(cx - half) << "\" y=\"" << num(c.ypos(q3)) << "\" width=\""
        << num(2 * half) << "\" height=\"" << num(c.ypos(q1) - c.ypos(q3)) << "\" fill=\""
        << kPalette[gi % 10] << "\" fill-opacity=\"0.3\" stroke=\"black\"/>\n";
      o << "<line class=\"median\" x1=\"" << num(cx - half) << "\" y1=\"" << num(c.ypos(med)) << "\" x2=\""
        << num(cx + half) << "\" y2=\"" << num(c.ypos(med)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      for (std::size_t k = 0; k < g.points.size(); ++k) {
        // deterministic jitter
        const double jitter = (static_cast<double>((k * 37) % 11) / 10.0 - 0.5) * half;
        o << "<circle class=\"point\" cx=\"" << num(cx + jitter) << "\" cy=\"" << num(c.ypos(g.points[k].value))
          << "\" r=\"3\" fill=\"" << kPalette[gi % 10] << "\"><title>" << xml_escape(g.points[k].label)
          << "</title></circle>\n";
        data << csv_field(g.name) << ',' << csv_field(g.points[k].label) << ',' << fixed(g.points[k].value) << '\n';
      }
    }
    o << "<text x=\"" << num(cx) << "\" y=\"" << kHeight - kBottom + 20 << "\" text-anchor=\"middle\">"
      << xml_escape(g.name) << "</text>\n";
    o << "</g>\n";
  }
  return c.finish(data.str());
}

std::string grouped_bar_chart(const std::string& title, const std::string& y_label,
                              const std::vector<std::string>& categories, const std::vector<BarSeries>& bars,
                              const std::vector<BarSeries>& references) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto* set : {&bars, &references}) {
    for (const auto& s : *set) {
      for (const auto& v : s.values) {
        if (v) lo = std::min(lo, *v), hi = std::max(hi, *v);
      }
    }
  }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  Canvas c(title, nice_axis(lo, hi, true), y_label);
  auto& o = c.out();
  std::ostringstream data;
  data << "category,series,kind,value\n";
  const double plot_w = kWidth - kLeft - kRight;
  const double slot = plot_w / static_cast<double>(std::max<std::size_t>(categories.size(), 1));
  const double group_w = slot * 0.8;
  const double bar_w = group_w / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
  const double zero = c.ypos(std::max(0.0, nice_axis(lo, hi, true).lo));
  for (std::size_t ci = 0; ci < categories.size(); ++ci) {
    const double x0 = kLeft + slot * static_cast<double>(ci) + (slot - group_w) / 2;
    o << "<g class=\"category\" data-name=\"" << xml_escape(categories[ci]) << "\">\n";
    for (std::size_t si = 0; si < bars.size(); ++si) {
      const auto& v = bars[si].values[ci];
      if (!v) continue;
      const double y = c.ypos(*v);
      o << "<rect class=\"bar\" data-series=\"" << xml_escape(bars[si].name) << "\" x=\""
        << num(x0 + bar_w * static_cast<double>(si)) << "\" y=\"" << num(std::min(y, zero)) << "\" width=\""
        << num(bar_w * 0.95) << "\" height=\"" << num(std::abs(zero - y)) << "\" fill=\"" << kPalette[si % 10]
        << "\"/>\n";
      data << csv_field(categories[ci]) << ',' << csv_field(bars[si].name) << ",bar," << fixed(*v) << '\n';
    }
    o << "<text x=\"" << num(x0 + group_w / 2) << "\" y=\"" << kHeight - kBottom + 15
      << "\" text-anchor=\"end\" transform=\"rotate(-35 " << num(x0 + group_w / 2) << ' '
      << kHeight - kBottom + 15 << ")\">" << xml_escape(categories[ci]) << "</text>\n";
    o << "</g>\n";
  }
  for (std::size_t ri = 0; ri < references.size(); ++ri) {
    const auto& ref = references[ri];
    o << "<g class=\"reference\" data-series=\"" << xml_escape(ref.name) << "\" stroke=\""
      << kReferencePalette[ri % 4] << "\" stroke-width=\"2\" stroke-dasharray=\"4,3\">\n";
    for (std::size_t ci = 0; ci < categories.size(); ++ci) {
      const auto& v = ref.values[ci];
      if (!v) continue;
      const double x0 = kLeft + slot * static_cast<double>(ci) + (slot - group_w) / 2;
      o << "<line x1=\"" << num(x0) << "\" y1=\"" << num(c.ypos(*v)) << "\" x2=\"" << num(x0 + group_w)
        << "\" y2=\"" << num(c.ypos(*v)) << "\"/>\n";
      data << csv_field(categories[ci]) << ',' << csv_field(ref.name) << ",reference," << fixed(*v) << '\n';
    }
    o << "</g>\n";
  }
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t si = 0; si < bars.size(); ++si) legend.emplace_back(bars[si].name, kPalette[si % 10]);
  for (std::size_t ri = 0; ri < references.size(); ++ri) {
    legend.emplace_back(references[ri].name, kReferencePalette[ri % 4]);
  }
  c.legend(legend, true, bars.size());
  return c.finish(data.str());
}

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<LineSeries>& series) {
  double ylo = INFINITY, yhi = -INFINITY, xlo = INFINITY, xhi = -INFINITY;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xlo = std::min(xlo, x), xhi = std::max(xhi, x);
      ylo = std::min(ylo, y), yhi = std::max(yhi, y);
    }
  }
  if (!std::isfinite(ylo)) ylo = 0, yhi = 1, xlo = 0, xhi = 1;
  if (!(xhi > xlo)) xhi = xlo + 1;
  Canvas c(title, nice_axis(ylo, yhi, false), y_label);
  auto& o = c.out();
  const double plot_w = kWidth - kLeft - kRight;
  auto xpos = [&](double x) { return kLeft + plot_w * (x - xlo) / (xhi - xlo); };
  const Axis xa = nice_axis(xlo, xhi, false);
  for (double x = xa.lo; x <= xhi + 1e-9; x += xa.step) {
    if (x < xlo - 1e-9) continue;
    o << "<text x=\"" << num(xpos(x)) << "\" y=\"" << kHeight - kBottom + 18 << "\" text-anchor=\"middle\">"
      << c.tick_label(x) << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\">"
    << xml_escape(x_label) << "</text>\n";
  std::ostringstream data;
  data << "series,x,y\n";
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % 10];
    o << "<g class=\"series\" data-series=\"" << xml_escape(s.name) << "\">\n<polyline fill=\"none\" stroke=\""
      << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      o << (k ? " " : "") << num(xpos(s.points[k].first)) << ',' << num(c.ypos(s.points[k].second));
    }
    o << "\"/>\n";
    for (const auto& [x, y] : s.points) {
      o << "<circle cx=\"" << num(xpos(x)) << "\" cy=\"" << num(c.ypos(y)) << "\" r=\"2.5\" fill=\"" << color
        << "\"/>\n";
      data << csv_field(s.name) << ',' << fixed(x) << ',' << fixed(y) << '\n';
    }
    o << "</g>\n";
    legend.emplace_back(s.name, color);
  }
  c.legend(legend);
  return c.finish(data.str());
}

}  // namespace lexdiv::app
