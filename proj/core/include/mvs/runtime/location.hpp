#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mvs/diagnostics.hpp"
#include "mvs/runtime/value.hpp"

namespace mvs::runtime {

/// One step of a canonical path from a frame slot: a field position or an
/// element index.
struct CanonicalStep {
  bool is_index = false;
  std::int64_t value = 0;

  bool operator==(const CanonicalStep&) const = default;
};

/// A place a callee may mutate in place: either a frame slot or an element of
/// an array block, followed by residual field steps. The canonical root and
/// path identify the place independently of how it was reached.
struct Location {
  enum class Kind { FrameSlot, ArrayElement };
  Kind kind = Kind::FrameSlot;

  std::size_t frame = 0;  // FrameSlot
  std::uint32_t slot = 0;
  StorageId storage = 0;  // ArrayElement
  std::size_t index = 0;
  std::vector<std::uint32_t> fields;

  std::size_t root_frame = 0;
  std::uint32_t root_slot = 0;
  std::vector<CanonicalStep> path;
};

/// True when both denote the same place or one contains the other.
bool locations_overlap(const Location& a, const Location& b);

/// Throws RuntimeTrap OverlapViolation at `span` when the locations overlap.
void check_dynamic_overlap(const Location& a, const Location& b, Span span);

}  // namespace mvs::runtime
