#include "boostlex/parallel.h"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace boostlex {

int configured_threads() {
  const int available = omp_get_num_procs();
  if (const char* env = std::getenv("BOOSTLEX_THREADS"); env != nullptr) {
    try {
      const int requested = std::stoi(env);
      if (requested > 0) return requested < available ? requested : available;
    } catch (const std::exception&) {
      // Unparsable values fall through to the default.
    }
  }
  return available;
}

void init_threads() { omp_set_num_threads(configured_threads()); }

}  // namespace boostlex
