#include <cstdlib>
#include <string>

#include "patdens/parallel.hpp"

namespace patdens {

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("PATDENS_BUDGET");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != std::string(raw).size() || !(v >= 1.0) || v > 1.8e19) return fallback;
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace patdens
