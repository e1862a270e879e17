#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>

namespace codedcache {

using BitVector = boost::dynamic_bitset<std::uint64_t>;

/// XORs `src` into the prefix of `dst`. If `src` is longer, `dst` is first
/// zero-extended, so the result has length max(|dst|, |src|).
void xor_padded(BitVector& dst, const BitVector& src);

/// Parity of (a AND b) over the common prefix.
bool dot(const BitVector& a, const BitVector& b);

}  // namespace codedcache
