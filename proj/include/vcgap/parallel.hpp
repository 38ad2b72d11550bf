#pragma once

// Thin layer over OpenMP so kernels compile and run without it.

#include <cstdint>

namespace vcgap {

// Partition of an enumeration stream: item i belongs to shard (i mod count).
struct Shard {
  std::uint64_t index = 0;
  std::uint64_t count = 1;

  [[nodiscard]] bool owns(std::uint64_t ordinal) const { return ordinal % count == index; }
};

void validate(const Shard& shard);

// Worker count for parallel kernels. VC_GAP_LAB_THREADS overrides the
// OpenMP default; 1 when built without OpenMP.
int worker_count();

// Applies VC_GAP_LAB_THREADS (if set) to the OpenMP runtime.
void configure_workers_from_env();

void set_worker_count(int n);

}  // namespace vcgap
