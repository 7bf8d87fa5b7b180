#ifndef BOOSTLEX_PARALLEL_H_
#define BOOSTLEX_PARALLEL_H_

namespace boostlex {

// Worker-thread cap: BOOSTLEX_THREADS if set and positive, otherwise the
// OpenMP default (available cores).
int configured_threads();

// Applies configured_threads() to the OpenMP runtime. Idempotent.
void init_threads();

}  // namespace boostlex

#endif  // BOOSTLEX_PARALLEL_H_
