#pragma once

#include "codedcache/model.hpp"
#include "codedcache/ownership.hpp"
#include "codedcache/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace codedcache {

/// floor(MF/N): bits of every file each user caches under random placement.
std::size_t random_quota(const SystemParams& params);

/// Realized ownership of a random placement, without touching file bits.
/// User u's subset of file i is drawn from a generator seeded by (seed, u, i).
OwnershipMap random_ownership(const SystemParams& params, std::uint64_t seed);

struct RandomPlacement {
  CachePlacement placement;
  OwnershipMap ownership;
};

/// Each user caches a uniformly random quota-sized subset of every file.
RandomPlacement random_place(const Database& db, const SystemParams& params, std::uint64_t seed);

/// A fixed-operand XOR (parts 1 and 2).
struct Exchange {
  PartLabel part = PartLabel::part1;
  std::vector<OwnershipKey> operands;
  std::size_t length = 0;
};

/// XOR over u in `members` of W_{d_u, members\{u}}.
struct Coalition {
  UserSet members;
  std::uint32_t length = 0;
};

/// Delivery schedule in label form. Coalitions are stored by member mask;
/// their transmission order is applied when materializing.
struct DeliveryPlan {
  std::string procedure;
  std::vector<Exchange> exchanges;
  std::vector<Coalition> coalitions;
  PartLabel coalition_part = PartLabel::part3;
};

/// DELIVERY-CODED: part 1 sends each requested file's empty-owner class,
/// part 2 runs the GBC pattern on singleton classes, part 3 covers every
/// coalition of three or more users. All-empty payloads are dropped.
DeliveryPlan plan_gbd_coded(const OwnershipMap& ownership, const DemandVector& demands);

/// Decentralized MAN baseline: every nonempty coalition, largest first.
DeliveryPlan plan_man_dec(const OwnershipMap& ownership, const DemandVector& demands);

/// Bit totals of a plan without building payload data.
TranscriptStats measure(const DeliveryPlan& plan, std::size_t file_len);

Transcript materialize(const DeliveryPlan& plan, const Database& db, const OwnershipMap& ownership,
                       const DemandVector& demands);

Transcript gbd_deliver_coded(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                             const OwnershipMap& ownership);

Transcript man_dec_deliver(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                           const OwnershipMap& ownership);

inline constexpr std::size_t kExactRandomMaxLen = 512;

struct RandomDeliveryOptions {
  /// Emit real parity rows (needs F <= kExactRandomMaxLen) instead of accounting payloads.
  bool exact = false;
  /// Extra rows per file in exact mode.
  std::size_t margin = 16;
  std::uint64_t seed = 0;
};

/// DELIVERY-RANDOM: per requested file, as many random combinations as the
/// neediest requesting user is missing (plus the margin in exact mode).
Transcript gbd_deliver_random(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                              const RandomDeliveryOptions& options = {});

/// Bits DELIVERY-RANDOM charges in accounting mode.
std::uint64_t random_delivery_bits(const OwnershipMap& ownership, const DemandVector& demands);

/// Whichever procedure sends fewer bits; ties go to the coded one.
/// `procedure` is "gbd-coded" or "gbd-random".
Transcript gbd_deliver(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                       const OwnershipMap& ownership, const RandomDeliveryOptions& options = {});

}  // namespace codedcache
