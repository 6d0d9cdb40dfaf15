#include "mvs/runtime/location.hpp"

#include <algorithm>

namespace mvs::runtime {

bool locations_overlap(const Location& a, const Location& b) {
  if (a.root_frame != b.root_frame || a.root_slot != b.root_slot) {
    return false;
  }
  auto common = std::min(a.path.size(), b.path.size());
  return std::equal(a.path.begin(), a.path.begin() + common, b.path.begin());
}

void check_dynamic_overlap(const Location& a, const Location& b, Span span) {
  if (locations_overlap(a, b)) {
    throw RuntimeTrap(TrapKind::OverlapViolation, span,
                      "overlapping inout arguments");
  }
}

}  // namespace mvs::runtime
