#include "mvs/runtime/layout.hpp"

#include <stdexcept>
#include <string>

namespace mvs::runtime {

ArrayLayout serialize_array_layout(const std::vector<std::int64_t>& elements,
                                   std::size_t element_size, ByteOrder order) {
  if (element_size != 1 && element_size != 2 && element_size != 4 &&
      element_size != 8) {
    throw std::invalid_argument("unsupported element size " +
                                std::to_string(element_size));
  }
  ArrayLayout layout;
  layout.n = elements.size();
  layout.k = layout.n * element_size;
  layout.payload.reserve(layout.k);

  const unsigned bits = static_cast<unsigned>(element_size * 8);
  for (auto e : elements) {
    if (bits < 64) {
      auto lo = -(std::int64_t{1} << (bits - 1));
      auto hi = (std::int64_t{1} << (bits - 1)) - 1;
      if (e < lo || e > hi) {
        throw std::invalid_argument(std::to_string(e) + " does not fit in " +
                                    std::to_string(element_size) + " bytes");
      }
    }
    auto u = static_cast<std::uint64_t>(e);
    for (std::size_t i = 0; i < element_size; ++i) {
      auto shift = order == ByteOrder::Little ? i : element_size - 1 - i;
      layout.payload.push_back(static_cast<std::uint8_t>(u >> (8 * shift)));
    }
  }
  return layout;
}

}  // namespace mvs::runtime
