#include "boostlex/explain/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "boostlex/common.h"

namespace boostlex::explain {
namespace {

std::string fixed(double v, int digits, bool sign = false) {
  char buf[64];
  std::snprintf(buf, sizeof buf, sign ? "%+.*f" : "%.*f", digits, v);
  return buf;
}

// Shortest form that round-trips visually: integers stay integral.
std::string compact(double v) {
  if (v == std::floor(v) && std::fabs(v) < 1e15) return fixed(v, 0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
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

std::string header_line(const ForceReport& r) {
  std::string s;
  if (!r.doc_id.empty()) s += "id=" + r.doc_id + "  ";
  s += "class=" + std::string(class_name(r.class_index)) + "  output=" + fixed(r.output, 4) +
       "  base_value=" + fixed(r.base_value, 4);
  return s;
}

std::string render_text(const ForceReport& r) {
  std::string out = header_line(r) + "\n";
  if (r.contributions.empty()) return out + "no contributing features\n";
  for (const auto& c : r.contributions) {
    out += c.name + "=" + compact(c.value) + "  phi=" + fixed(c.phi, 4, true) + "\n";
  }
  if (r.omitted > 0) out += "+" + std::to_string(r.omitted) + " more\n";
  return out;
}

std::string html_body(const ForceReport& r) {
  double scale = 0;
  for (const auto& c : r.contributions) scale = std::max(scale, std::fabs(c.phi));
  std::string out = "<section>\n<h2>" + html_escape(header_line(r)) + "</h2>\n";
  if (r.contributions.empty()) return out + "<p>no contributing features</p>\n</section>\n";
  out += "<table>\n";
  for (const auto& c : r.contributions) {
    const double pct = scale > 0 ? 100.0 * std::fabs(c.phi) / scale : 0;
    const char* color = c.positive() ? "#d62728" : "#1f77b4";
    out += "<tr><td class=\"name\">" + html_escape(c.name) + "=" + compact(c.value) + "</td><td class=\"phi\">" +
           fixed(c.phi, 4, true) + "</td><td class=\"bar\"><div style=\"width:" + fixed(pct, 1) +
           "%;background:" + color + "\"></div></td></tr>\n";
  }
  out += "</table>\n";
  if (r.omitted > 0) out += "<p>+" + std::to_string(r.omitted) + " more</p>\n";
  return out + "</section>\n";
}

std::string html_page(std::string_view body) {
  return "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>boostlex explanation</title>\n"
         "<style>body{font-family:sans-serif;margin:2em}h2{font-size:1em;font-family:monospace}"
         "td{padding:2px 8px}td.name,td.phi{font-family:monospace;white-space:nowrap}"
         "td.bar{width:60%}td.bar div{height:12px}</style></head><body>\n"
         "<p>Red bars push the margin toward the class, blue bars away from it.</p>\n" +
         std::string(body) + "</body></html>\n";
}

}  // namespace

ReportFormat parse_report_format(std::string_view s) {
  if (s == "text") return ReportFormat::kText;
  if (s == "html") return ReportFormat::kHtml;
  throw UsageError("unknown report format '" + std::string(s) + "' (expected text or html)");
}

ForceReport make_force_report(const Attribution& a, const FeatureVector& x, std::string doc_id, std::size_t top,
                              ReportFormat format) {
  if (x.dimension() != a.phi.size()) throw std::invalid_argument("instance dimension differs from attribution");
  std::vector<std::size_t> order;
  for (std::size_t f = 0; f < a.phi.size(); ++f) {
    if (a.phi[f] != 0) order.push_back(f);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return std::fabs(a.phi[i]) > std::fabs(a.phi[j]); });
  ForceReport r;
  r.doc_id = std::move(doc_id);
  r.base_value = a.base_value;
  r.output = a.output;
  r.class_index = a.class_index;
  r.format = format;
  const std::size_t keep = std::min(top, order.size());
  r.omitted = order.size() - keep;
  for (std::size_t i = 0; i < keep; ++i) {
    const auto f = order[i];
    const auto name = f < a.feature_names.size() ? a.feature_names[f] : "f" + std::to_string(f);
    r.contributions.push_back({name, x.value_or_zero(static_cast<std::uint32_t>(f)), a.phi[f]});
  }
  return r;
}

std::string render_report(const ForceReport& report) {
  return report.format == ReportFormat::kHtml ? html_page(html_body(report)) : render_text(report);
}

std::string render_reports(std::span<const ForceReport> reports, ReportFormat format) {
  std::string body;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (format == ReportFormat::kHtml) {
      body += html_body(reports[i]);
    } else {
      if (i > 0) body += "\n";
      body += render_text(reports[i]);
    }
  }
  return format == ReportFormat::kHtml ? html_page(body) : body;
}

std::vector<std::pair<std::string, double>> mean_abs_phi(std::span<const Attribution> attributions, std::size_t top) {
  if (attributions.empty()) return {};
  const auto dim = attributions.front().phi.size();
  std::vector<double> sum(dim, 0.0);
  for (const auto& a : attributions) {
    if (a.phi.size() != dim) throw std::invalid_argument("attributions differ in dimension");
    for (std::size_t f = 0; f < dim; ++f) sum[f] += std::fabs(a.phi[f]);
  }
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sum[i] > sum[j]; });
  std::vector<std::pair<std::string, double>> out;
  const auto& names = attributions.front().feature_names;
  for (auto f : order) {
    if (out.size() >= top || sum[f] == 0) break;
    out.emplace_back(f < names.size() ? names[f] : "f" + std::to_string(f),
                     sum[f] / static_cast<double>(attributions.size()));
  }
  return out;
}

std::string render_importance_table(std::span<const std::pair<std::string, double>> rows) {
  std::size_t width = 7;
  for (const auto& [name, _] : rows) width = std::max(width, name.size());
  std::string out = "feature" + std::string(width - 7, ' ') + "  mean|phi|\n";
  for (const auto& [name, v] : rows) out += name + std::string(width - name.size(), ' ') + "  " + fixed(v, 4) + "\n";
  return out;
}

}  // namespace boostlex::explain
