#ifndef BOOSTLEX_EXPLAIN_REPORT_H_
#define BOOSTLEX_EXPLAIN_REPORT_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boostlex/explain/shap.h"

namespace boostlex::explain {

enum class ReportFormat { kText, kHtml };

// Throws UsageError for anything but "text" or "html".
ReportFormat parse_report_format(std::string_view s);

struct Contribution {
  std::string name;
  double value = 0;  // instance value; absent features show 0
  double phi = 0;
  bool positive() const { return phi > 0; }
};

struct ForceReport {
  std::string doc_id;
  std::vector<Contribution> contributions;  // |phi| descending, then feature index
  std::size_t omitted = 0;                  // nonzero contributions beyond the limit
  double base_value = 0;
  double output = 0;
  int class_index = 0;
  ReportFormat format = ReportFormat::kText;
};

inline constexpr std::size_t kDefaultReportTop = 20;

// Keeps nonzero-phi features only. Throws std::invalid_argument when x's
// dimension differs from the attribution's.
ForceReport make_force_report(const Attribution& attribution, const FeatureVector& x, std::string doc_id = "",
                              std::size_t top = kDefaultReportTop, ReportFormat format = ReportFormat::kText);

// Text: a header with class, output and base value, then
// "name=value  phi=+x.xxxx" per line. HTML: a standalone page with one
// horizontal bar per contribution.
std::string render_report(const ForceReport& report);

// Several reports in one document (HTML reports share a single page).
std::string render_reports(std::span<const ForceReport> reports, ReportFormat format);

// Mean |phi| per feature over the attributions, largest first, zero means
// dropped, at most `top` entries.
std::vector<std::pair<std::string, double>> mean_abs_phi(std::span<const Attribution> attributions, std::size_t top);
std::string render_importance_table(std::span<const std::pair<std::string, double>> rows);

}  // namespace boostlex::explain

#endif  // BOOSTLEX_EXPLAIN_REPORT_H_
