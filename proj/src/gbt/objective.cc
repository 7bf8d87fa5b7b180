#include "boostlex/gbt/objective.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boostlex::gbt {

ClassVector balanced_class_weights(const ClassCounts& counts) {
  double total = 0;
  for (auto c : counts) {
    if (c == 0) throw std::invalid_argument("balanced class weights need every class present");
    total += static_cast<double>(c);
  }
  ClassVector w{};
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    w[k] = total / (static_cast<double>(kNumClasses) * static_cast<double>(counts[k]));
  }
  return w;
}

ClassVector softmax(const ClassVector& margins) {
  const double top = *std::max_element(margins.begin(), margins.end());
  ClassVector p{};
  double sum = 0;
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    p[k] = std::exp(margins[k] - top);
    sum += p[k];
  }
  for (auto& v : p) v /= sum;
  return p;
}

namespace {

void check_shapes(std::span<const double> margins, std::span<const int> labels, std::span<const double> weights) {
  if (margins.size() != labels.size() * kNumClasses || weights.size() != labels.size()) {
    throw std::invalid_argument("margins, labels and weights disagree in length");
  }
}

ClassVector row_of(std::span<const double> margins, std::size_t r) {
  ClassVector m{};
  for (std::size_t k = 0; k < kNumClasses; ++k) m[k] = margins[r * kNumClasses + k];
  return m;
}

}  // namespace

GradHess grad_hess_multiclass(std::span<const double> margins, std::span<const int> labels,
                              std::span<const double> weights) {
  check_shapes(margins, labels, weights);
  for (double m : margins) {
    if (!std::isfinite(m)) throw std::invalid_argument("non-finite margin");
  }
  const auto n = labels.size();
  GradHess out{std::vector<double>(margins.size()), std::vector<double>(margins.size())};
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ri = 0; ri < static_cast<std::ptrdiff_t>(n); ++ri) {
    const auto r = static_cast<std::size_t>(ri);
    const auto p = softmax(row_of(margins, r));
    const double w = weights[r];
    for (std::size_t k = 0; k < kNumClasses; ++k) {
      const double target = static_cast<int>(k) == labels[r] ? 1.0 : 0.0;
      out.g[r * kNumClasses + k] = w * (p[k] - target);
      out.h[r * kNumClasses + k] = std::max(w * p[k] * (1.0 - p[k]), kHessianFloor);
    }
  }
  return out;
}

double weighted_softmax_loss(std::span<const double> margins, std::span<const int> labels,
                             std::span<const double> weights) {
  check_shapes(margins, labels, weights);
  double loss = 0;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const auto m = row_of(margins, r);
    const double top = *std::max_element(m.begin(), m.end());
    double sum = 0;
    for (double v : m) sum += std::exp(v - top);
    const double log_z = top + std::log(sum);
    loss += weights[r] * (log_z - m[static_cast<std::size_t>(labels[r])]);
  }
  return loss;
}

}  // namespace boostlex::gbt
