#include "trivext/budget.hpp"

#include <cstdlib>
#include <string>

#include "trivext/errors.hpp"

namespace trivext {

const Budget& default_budget() {
  static const Budget budget = [] {
    Budget b;
    if (const char* env = std::getenv("TRIVEXT_BUDGET")) {
      try {
        auto v = std::stoull(env);
        if (v > 0) b.max_elements = v;
      } catch (const std::exception&) {
        // Malformed values fall back to the default cap.
      }
    }
    return b;
  }();
  return budget;
}

void require_within(std::uint64_t count, std::uint64_t cap, const std::string& what) {
  if (count > cap) {
    throw ResourceError(what + ": " + std::to_string(count) +
                        " exceeds the enumeration budget of " +
                        std::to_string(cap));
  }
}

}  // namespace trivext
