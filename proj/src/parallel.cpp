#include "beltrami/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace beltrami {

int thread_count() {
  static const int count = [] {
    int available = omp_get_max_threads();
    if (const char* cap = std::getenv("BELTRAMI_THREADS")) {
      try {
        int requested = std::stoi(cap);
        if (requested >= 1 && requested < available) return requested;
      } catch (const std::exception&) {
      }
    }
    return available;
  }();
  return count;
}

}  // namespace beltrami
