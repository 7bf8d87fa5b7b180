#ifndef BOOSTLEX_GBT_OBJECTIVE_H_
#define BOOSTLEX_GBT_OBJECTIVE_H_

#include <array>
#include <span>
#include <vector>

#include "boostlex/common.h"

namespace boostlex::gbt {

using ClassVector = std::array<double, kNumClasses>;

inline constexpr double kHessianFloor = 1e-16;

// w_c = N / (K * N_c). Throws std::invalid_argument on a zero count.
ClassVector balanced_class_weights(const ClassCounts& counts);

// Numerically stable softmax.
ClassVector softmax(const ClassVector& margins);

// Row-major n x K gradients and Hessians.
struct GradHess {
  std::vector<double> g;
  std::vector<double> h;
};

// p = softmax(margins); g_k = w (p_k - [k == label]); h_k = w p_k (1 - p_k),
// floored at kHessianFloor. `margins` is row-major n x K. Throws
// std::invalid_argument on a non-finite margin or mismatched lengths.
GradHess grad_hess_multiclass(std::span<const double> margins, std::span<const int> labels,
                              std::span<const double> weights);

// Sum over rows of w * -log softmax(margins)[label].
double weighted_softmax_loss(std::span<const double> margins, std::span<const int> labels,
                             std::span<const double> weights);

}  // namespace boostlex::gbt

#endif  // BOOSTLEX_GBT_OBJECTIVE_H_
