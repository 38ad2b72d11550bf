#include "vcgap/parallel.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vcgap {

void validate(const Shard& shard) {
  if (shard.count == 0 || shard.index >= shard.count) {
    throw std::invalid_argument("shard index " + std::to_string(shard.index) +
                                " out of range for " + std::to_string(shard.count) + " shards");
  }
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int n) {
  if (n < 1) throw std::invalid_argument("worker count must be positive");
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
}

void configure_workers_from_env() {
  const char* env = std::getenv("VC_GAP_LAB_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    throw std::invalid_argument(std::string("VC_GAP_LAB_THREADS must be a positive integer, got '") +
                                env + "'");
  }
  set_worker_count(static_cast<int>(n));
}

}  // namespace vcgap
