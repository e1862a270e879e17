#pragma once

#include "codedcache/user_set.hpp"

#include <cstdint>
#include <vector>

namespace codedcache {

/// C(n, k); throws std::overflow_error if it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All k-subsets of {0..n-1} (n <= 64) in lexicographic order.
std::vector<UserSet> subsets_of_size(std::uint32_t n, std::uint32_t k);

}  // namespace codedcache
