#include "boostlex/eval/metrics.h"

#include <cstdio>
#include <stdexcept>

namespace boostlex::eval {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts) {
    for (auto c : row) t += c;
  }
  return t;
}

std::uint64_t ConfusionMatrix::support(std::size_t c) const {
  std::uint64_t t = 0;
  for (auto v : counts.at(c)) t += v;
  return t;
}

EvalReport metrics_from_confusion(const ConfusionMatrix& cm) {
  EvalReport r;
  r.confusion = cm;
  double f1_sum = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const std::uint64_t tp = cm.counts[c][c];
    std::uint64_t predicted = 0;
    for (std::size_t t = 0; t < kNumClasses; ++t) predicted += cm.counts[t][c];
    const std::uint64_t actual = cm.support(c);
    auto& m = r.per_class[c];
    m.precision = ratio(tp, predicted);
    m.recall = ratio(tp, actual);
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    m.support = actual;
    m.absent = predicted == 0 && actual == 0;
    f1_sum += m.f1;
  }
  r.macro_f1 = f1_sum / static_cast<double>(kNumClasses);
  return r;
}

EvalReport metrics(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) throw std::invalid_argument("truth and prediction lengths differ");
  if (y_true.empty()) throw std::invalid_argument("no predictions to evaluate");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i], p = y_pred[i];
    if (t < 0 || p < 0 || t >= static_cast<int>(kNumClasses) || p >= static_cast<int>(kNumClasses)) {
      throw std::invalid_argument("class index out of range");
    }
    ++cm.counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
  }
  return metrics_from_confusion(cm);
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json classes = nlohmann::json::object();
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const auto& m = per_class[c];
    classes[std::string(kClassNames[c])] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
                                            {"support", m.support},     {"absent", m.absent}};
  }
  return {{"classes", classes}, {"macro_f1", macro_f1}, {"confusion", confusion.counts}};
}

std::string render_report_text(const EvalReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %9s %9s %9s %9s\n", "class", "precision", "recall", "f1", "support");
  out += buf;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const auto& m = r.per_class[c];
    std::snprintf(buf, sizeof buf, "%-10s %9.4f %9.4f %9.4f %9llu%s\n", std::string(kClassNames[c]).c_str(),
                  m.precision, m.recall, m.f1, static_cast<unsigned long long>(m.support),
                  m.absent ? "  (absent)" : "");
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%-10s %29.4f\n\n", "macro-f1", r.macro_f1);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-12s %9s %9s %9s\n", "true\\pred", "hate", "offensive", "neither");
  out += buf;
  for (std::size_t t = 0; t < kNumClasses; ++t) {
    std::snprintf(buf, sizeof buf, "%-12s %9llu %9llu %9llu\n", std::string(kClassNames[t]).c_str(),
                  static_cast<unsigned long long>(r.confusion.counts[t][0]),
                  static_cast<unsigned long long>(r.confusion.counts[t][1]),
                  static_cast<unsigned long long>(r.confusion.counts[t][2]));
    out += buf;
  }
  return out;
}

}  // namespace boostlex::eval
