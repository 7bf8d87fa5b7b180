#ifndef BOOSTLEX_EVAL_METRICS_H_
#define BOOSTLEX_EVAL_METRICS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "boostlex/common.h"

namespace boostlex::eval {

// counts[true][predicted].
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> counts{};

  std::uint64_t total() const;
  std::uint64_t support(std::size_t c) const;
  bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::uint64_t support = 0;
  // True when the class occurs in neither truth nor predictions, so every
  // metric falls back to the 0/0 = 0 convention.
  bool absent = false;
};

struct EvalReport {
  std::array<ClassMetrics, kNumClasses> per_class{};
  double macro_f1 = 0;
  ConfusionMatrix confusion;

  nlohmann::json to_json() const;
};

// Throws std::invalid_argument on a length mismatch, empty input or a class
// index outside [0, 3).
EvalReport metrics(std::span<const int> y_true, std::span<const int> y_pred);
EvalReport metrics_from_confusion(const ConfusionMatrix& confusion);

// Aligned-column table: one row per class plus macro-F1 and the confusion
// matrix.
std::string render_report_text(const EvalReport& report);

}  // namespace boostlex::eval

#endif  // BOOSTLEX_EVAL_METRICS_H_
