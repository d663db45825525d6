#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace apex {

// jobs <= 0 selects the hardware default; without OpenMP everything is serial.
inline int effective_jobs(int jobs) {
#ifdef _OPENMP
  return jobs <= 0 ? omp_get_max_threads() : jobs;
#else
  (void)jobs;
  return 1;
#endif
}

}  // namespace apex
