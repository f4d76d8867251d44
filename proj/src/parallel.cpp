#include "epe/parallel.hpp"

#include <cstdlib>
#include <string>

namespace epe {

unsigned default_threads() {
  if (const char* env = std::getenv("EPE_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace epe
