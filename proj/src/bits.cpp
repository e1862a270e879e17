#include "codedcache/bits.hpp"

#include <algorithm>

namespace codedcache {

void xor_padded(BitVector& dst, const BitVector& src) {
  if (src.size() > dst.size()) dst.resize(src.size());
  if (src.size() == dst.size()) {
    dst ^= src;
    return;
  }
  BitVector widened = src;
  widened.resize(dst.size());
  dst ^= widened;
}

bool dot(const BitVector& a, const BitVector& b) {
  if (a.size() == b.size()) return ((a & b).count() & 1U) != 0;
  const auto n = std::min(a.size(), b.size());
  bool parity = false;
  for (std::size_t i = 0; i < n; ++i) parity ^= (a[i] && b[i]);
  return parity;
}

}  // namespace codedcache
