#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mvs::runtime {

enum class ByteOrder { Little, Big };

/// Byte image of an array block ⟨r, n, k, payload⟩ of integers.
struct ArrayLayout {
  std::size_t r = 1;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::uint8_t> payload;

  bool operator==(const ArrayLayout&) const = default;
};

/// Throws std::invalid_argument when `element_size` is not 1, 2, 4 or 8 or
/// an element does not fit in `element_size` bytes as a signed integer.
ArrayLayout serialize_array_layout(const std::vector<std::int64_t>& elements,
                                   std::size_t element_size, ByteOrder order);

}  // namespace mvs::runtime
