#include "ebreak/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace ebreak {

unsigned worker_limit() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EBREAK_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
    }
  }
  return n;
}

}  // namespace ebreak
