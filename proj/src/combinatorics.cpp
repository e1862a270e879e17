#include "codedcache/combinatorics.hpp"

#include <stdexcept>

namespace codedcache {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > UINT64_MAX) throw std::overflow_error("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<UserSet> subsets_of_size(std::uint32_t n, std::uint32_t k) {
  if (n > UserSet::kCapacity) throw std::invalid_argument("subset enumeration supports at most 64 users");
  std::vector<UserSet> out;
  if (k > n) return out;
  out.reserve(static_cast<std::size_t>(binomial(n, k)));
  std::vector<std::uint32_t> idx(k);
  for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    UserSet s;
    for (auto i : idx) s = s.with(i);
    out.push_back(s);
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && idx[pos] == n - k + static_cast<std::uint32_t>(pos)) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (auto j = static_cast<std::uint32_t>(pos) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace codedcache
