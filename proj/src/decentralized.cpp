#include "codedcache/decentralized.hpp"

#include <algorithm>
#include <random>

namespace codedcache {
namespace {

void check_shapes(const OwnershipMap& ownership, const DemandVector& demands) {
  if (ownership.n_users() != demands.n_users() || ownership.n_files() != demands.n_files()) {
    throw ConfigError("demand vector does not match the ownership map");
  }
}

/// cached[i][u] = bits of file i held by user u, read off the classes.
std::vector<std::vector<std::size_t>> cached_counts(const OwnershipMap& ownership) {
  std::vector<std::vector<std::size_t>> out(ownership.n_files(), std::vector<std::size_t>(ownership.n_users()));
  for (FileIndex i = 0; i < ownership.n_files(); ++i) {
    for (const auto& c : ownership.classes(i)) c.cachers.for_each([&](UserIndex u) { out[i][u] += c.count; });
  }
  return out;
}

void check_consistent(const CachePlacement& placement, const OwnershipMap& ownership) {
  if (placement.n_users() != ownership.n_users() || placement.file_len != ownership.file_len()) {
    throw ConfigError("ownership map does not match the placement");
  }
  for (UserIndex u = 0; u < placement.n_users(); ++u) {
    const auto& cached = placement.users[u].cached;
    if (cached.size() != ownership.n_files()) throw ConfigError("ownership map does not match the placement");
    for (FileIndex i = 0; i < ownership.n_files(); ++i) {
      for (std::size_t p = 0; p < ownership.file_len(); ++p) {
        if (cached[i][p] != ownership.owners(i, p).contains(u)) {
          throw ConfigError("ownership map disagrees with the cache of user " + std::to_string(u + 1));
        }
      }
    }
  }
}

/// Every coalition S = T + {u} with d_u = i, |T| >= min_owners and W_{i,T}
/// nonempty, with length the largest such class. Sorted by member mask.
std::vector<Coalition> collect_coalitions(const OwnershipMap& ownership, const DemandVector& demands,
                                          int min_owners) {
  std::vector<std::vector<UserIndex>> requesters(demands.n_files());
  for (UserIndex u = 0; u < demands.n_users(); ++u) requesters[demands[u]].push_back(u);

  std::vector<Coalition> cand;
  for (FileIndex i = 0; i < ownership.n_files(); ++i) {
    if (requesters[i].empty()) continue;
    for (const auto& c : ownership.classes(i)) {
      if (c.cachers.size() < min_owners) continue;
      for (auto u : requesters[i]) {
        if (!c.cachers.contains(u)) cand.push_back({c.cachers.with(u), c.count});
      }
    }
  }
  std::sort(cand.begin(), cand.end(), [](const Coalition& a, const Coalition& b) {
    return a.members.bits() < b.members.bits() || (a.members == b.members && a.length > b.length);
  });
  auto last = std::unique(cand.begin(), cand.end(),
                          [](const Coalition& a, const Coalition& b) { return a.members == b.members; });
  cand.erase(last, cand.end());
  return cand;
}

UserSet to_positions(UserSet users, const std::vector<std::uint32_t>& pos_of) {
  UserSet out;
  users.for_each([&](UserIndex u) { out = out.with(pos_of[u]); });
  return out;
}

}  // namespace

std::size_t random_quota(const SystemParams& params) {
  return floor_to_uint(params.cache * params.file_len / params.n_files);
}

OwnershipMap random_ownership(const SystemParams& params, std::uint64_t seed) {
  params.validate();
  if (params.n_users > UserSet::kCapacity) throw ConfigError("random placement supports at most 64 users");
  const std::size_t len = params.file_len;
  const std::size_t quota = random_quota(params);
  std::vector<std::vector<UserSet>> owners(params.n_files, std::vector<UserSet>(len));
  for (UserIndex u = 0; u < params.n_users; ++u) {
    for (FileIndex i = 0; i < params.n_files; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), u, i};
      std::mt19937_64 gen(seq);
      auto& own = owners[i];
      // Floyd's algorithm: a uniform quota-subset in quota draws.
      for (std::size_t j = len - quota; j < len; ++j) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(gen);
        if (own[t].contains(u)) {
          own[j] = own[j].with(u);
        } else {
          own[t] = own[t].with(u);
        }
      }
    }
  }
  return OwnershipMap(params.n_users, std::move(owners));
}

RandomPlacement random_place(const Database& db, const SystemParams& params, std::uint64_t seed) {
  if (db.n_files() != params.n_files || db.file_len() != params.file_len) {
    throw ConfigError("database does not match the system parameters");
  }
  RandomPlacement out{empty_placement(db, params.n_users), random_ownership(params, seed)};
  for (FileIndex i = 0; i < params.n_files; ++i) {
    for (const auto& c : out.ownership.classes(i)) {
      const auto positions = out.ownership.positions(i, c.cachers);
      c.cachers.for_each([&](UserIndex u) { cache_segment(out.placement, db, u, i, positions); });
    }
  }
  out.placement.check_capacity(params.cache_bits());
  return out;
}

DeliveryPlan plan_gbd_coded(const OwnershipMap& ownership, const DemandVector& demands) {
  check_shapes(ownership, demands);
  const auto groups = group_users(demands);
  const auto& user = groups.user_order;
  DeliveryPlan plan;
  plan.procedure = "gbd-coded";
  plan.coalition_part = PartLabel::part3;

  auto exchange = [&](PartLabel part, std::vector<OwnershipKey> ops) {
    std::size_t len = 0;
    for (const auto& k : ops) len = std::max(len, ownership.class_size(k.file, k.cachers));
    if (len > 0) plan.exchanges.push_back({part, std::move(ops), len});
  };
  auto single = [&](FileIndex file, std::uint32_t pos) { return OwnershipKey{file, UserSet::single(user[pos])}; };
  auto chain = [&](FileIndex file, std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t k = begin; k + 1 < end; ++k) exchange(PartLabel::part2, {single(file, k), single(file, k + 1)});
  };

  const FileIndex n_files = demands.n_files();
  for (FileIndex i = 0; i < n_files; ++i) {
    if (groups.group_sizes[i] > 0) exchange(PartLabel::part1, {OwnershipKey{i, UserSet{}}});
  }
  for (FileIndex i = 0; i < n_files; ++i) chain(i, groups.begin(i), groups.end(i));
  for (FileIndex i = 0; i + 1 < n_files; ++i) {
    for (FileIndex j = i + 1; j < n_files; ++j) {
      if (groups.group_sizes[i] == 0 || groups.group_sizes[j] == 0) continue;
      chain(i, groups.begin(j), groups.end(j));
      chain(j, groups.begin(i), groups.end(i));
      exchange(PartLabel::part2, {single(i, groups.end(j) - 1), single(j, groups.end(i) - 1)});
    }
  }
  plan.coalitions = collect_coalitions(ownership, demands, 2);
  return plan;
}

DeliveryPlan plan_man_dec(const OwnershipMap& ownership, const DemandVector& demands) {
  check_shapes(ownership, demands);
  DeliveryPlan plan;
  plan.procedure = "man-d";
  plan.coalition_part = PartLabel::direct;
  plan.coalitions = collect_coalitions(ownership, demands, 0);
  return plan;
}

TranscriptStats measure(const DeliveryPlan& plan, std::size_t file_len) {
  TranscriptStats stats;
  stats.file_len = file_len;
  for (const auto& e : plan.exchanges) stats.add(e.part, e.length);
  for (const auto& c : plan.coalitions) stats.add(plan.coalition_part, c.length);
  return stats;
}

Transcript materialize(const DeliveryPlan& plan, const Database& db, const OwnershipMap& ownership,
                       const DemandVector& demands) {
  check_shapes(ownership, demands);
  if (db.n_files() != ownership.n_files() || db.file_len() != ownership.file_len()) {
    throw ConfigError("database does not match the ownership map");
  }
  Transcript tx;
  tx.file_len = db.file_len();
  tx.procedure = plan.procedure;
  for (const auto& e : plan.exchanges) {
    std::vector<Segment> ops;
    for (const auto& k : e.operands) ops.push_back(ownership.segment(k.file, k.cachers));
    tx.payloads.push_back(make_xor_payload(e.part, std::move(ops), db));
  }

  // Part 3 follows the group order of the users (smallest position, then
  // size, then lexicographic); the MAN-D baseline goes largest first.
  const bool grouped = plan.coalition_part != PartLabel::direct;
  const auto groups = group_users(demands);
  std::vector<std::uint32_t> pos_of(demands.n_users());
  std::vector<UserIndex> user_at(demands.n_users());
  for (std::uint32_t p = 0; p < demands.n_users(); ++p) {
    const UserIndex u = grouped ? groups.user_order[p] : p;
    pos_of[u] = p;
    user_at[p] = u;
  }
  std::vector<std::pair<UserSet, UserSet>> order;  // (positions, members)
  order.reserve(plan.coalitions.size());
  for (const auto& c : plan.coalitions) order.emplace_back(to_positions(c.members, pos_of), c.members);
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    const UserSet a = x.first, b = y.first;
    if (grouped) {
      if (a.lowest() != b.lowest()) return a.lowest() < b.lowest();
      if (a.size() != b.size()) return a.size() < b.size();
    } else if (a.size() != b.size()) {
      return a.size() > b.size();
    }
    return lex_less(a, b);
  });
  for (const auto& [positions, members] : order) {
    std::vector<Segment> ops;
    positions.for_each([&](std::uint32_t p) {
      const UserIndex u = user_at[p];
      ops.push_back(ownership.segment(demands[u], members.without(u)));
    });
    tx.payloads.push_back(make_xor_payload(plan.coalition_part, std::move(ops), db));
  }
  return tx;
}

Transcript gbd_deliver_coded(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                             const OwnershipMap& ownership) {
  check_consistent(placement, ownership);
  return materialize(plan_gbd_coded(ownership, demands), db, ownership, demands);
}

Transcript man_dec_deliver(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                           const OwnershipMap& ownership) {
  check_consistent(placement, ownership);
  return materialize(plan_man_dec(ownership, demands), db, ownership, demands);
}

Transcript gbd_deliver_random(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                              const RandomDeliveryOptions& options) {
  if (demands.n_users() != placement.n_users() || demands.n_files() != db.n_files()) {
    throw ConfigError("demand vector does not match the placement");
  }
  const std::size_t len = db.file_len();
  if (options.exact && len > kExactRandomMaxLen) {
    throw ConfigError("exact random delivery needs F <= " + std::to_string(kExactRandomMaxLen));
  }
  Transcript tx;
  tx.file_len = len;
  tx.procedure = "gbd-random";
  std::vector<std::size_t> missing(db.n_files(), 0);
  std::vector<bool> requested(db.n_files(), false);
  for (UserIndex u = 0; u < demands.n_users(); ++u) {
    const FileIndex i = demands[u];
    requested[i] = true;
    missing[i] = std::max(missing[i], len - placement.users[u].cached[i].count());
  }
  for (FileIndex i = 0; i < db.n_files(); ++i) {
    if (!requested[i] || missing[i] == 0) continue;
    Payload p;
    p.part = PartLabel::random;
    p.combination = RandomCombination{i, options.seed, missing[i] + (options.exact ? options.margin : 0)};
    p.length = p.combination->rows;
    if (options.exact) {
      p.data.resize(p.length);
      for (std::size_t r = 0; r < p.length; ++r) p.data[r] = dot(combination_row(*p.combination, r, len), db.file(i));
    }
    tx.payloads.push_back(std::move(p));
  }
  return tx;
}

std::uint64_t random_delivery_bits(const OwnershipMap& ownership, const DemandVector& demands) {
  check_shapes(ownership, demands);
  const auto counts = cached_counts(ownership);
  std::vector<std::size_t> missing(demands.n_files(), 0);
  for (UserIndex u = 0; u < demands.n_users(); ++u) {
    const FileIndex i = demands[u];
    missing[i] = std::max(missing[i], ownership.file_len() - counts[i][u]);
  }
  std::uint64_t total = 0;
  for (auto m : missing) total += m;
  return total;
}

Transcript gbd_deliver(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                       const OwnershipMap& ownership, const RandomDeliveryOptions& options) {
  auto coded = gbd_deliver_coded(db, demands, placement, ownership);
  auto random = gbd_deliver_random(db, demands, placement, options);
  return random.total_bits() < coded.total_bits() ? random : coded;
}

}  // namespace codedcache
