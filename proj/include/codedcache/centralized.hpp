#pragma once

#include "codedcache/model.hpp"

#include <cstdint>

namespace codedcache {

enum class CentralizedKind { gbc, man };

/// Which centralized placement to run, and at which MAN parameter t.
struct CentralizedPlacementSpec {
  CentralizedKind kind = CentralizedKind::gbc;
  std::uint32_t man_t = 1;

  /// Cache size the placement requires: N/K for GBC, tN/K for MAN.
  Rational required_cache(std::uint32_t n_files, std::uint32_t n_users) const;
  /// File lengths must be multiples of this: K for GBC, K * C(K, t) for MAN.
  std::uint64_t granularity(std::uint32_t n_users) const;
};

/// Smallest multiple of `granularity` that is >= `requested` (and >= granularity).
std::size_t round_up_file_len(std::size_t requested, std::uint64_t granularity);

/// User j caches W_{i,j} for every file i. Requires M = N/K and K | F.
CachePlacement gbc_place(const Database& db, const SystemParams& params);

/// Group-based coded delivery. Payload order: part 1 by group, then part 2
/// over group pairs (i, j), i < j, lexicographically.
Transcript gbc_deliver(const Database& db, const DemandVector& demands, const CachePlacement& placement);

/// Each file split into C(K,t) subfiles indexed by t-subsets of users; user k
/// caches every subfile whose index set contains k. Requires M = tN/K.
CachePlacement man_place(const Database& db, const SystemParams& params, std::uint32_t t);

/// One XOR per (t+1)-subset S of users: XOR over k in S of W_{d_k, S\{k}}.
Transcript man_deliver(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                       std::uint32_t t);

}  // namespace codedcache
