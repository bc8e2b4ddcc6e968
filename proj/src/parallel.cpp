#include "collapse/parallel.hpp"

#include <cstdlib>
#include <string>

namespace collapse {

std::size_t worker_count() {
  if (const char* env = std::getenv("COLLAPSE_KIT_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace collapse
