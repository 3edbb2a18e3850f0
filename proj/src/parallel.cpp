#include "latfm/parallel.hpp"

#include <cstdlib>
#include <string>

namespace latfm {

std::size_t worker_count() {
  const char* env = std::getenv("LATFM_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const long v = std::stol(env);
    if (v < 1) return 1;
    return v > 64 ? 64 : static_cast<std::size_t>(v);
  } catch (...) {
    return 1;
  }
}

}  // namespace latfm
