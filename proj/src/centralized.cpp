#include "codedcache/centralized.hpp"

#include "codedcache/combinatorics.hpp"

#include <unordered_map>

namespace codedcache {
namespace {

Segment subfile(FileIndex file, UserIndex part, std::size_t len) {
  return Segment{SubfileId{file, part}, BitPositions::range(std::size_t{part} * len, len)};
}

void require_cache(const SystemParams& params, const Rational& required, const char* scheme) {
  if (params.cache != required) {
    throw ConfigError(std::string(scheme) + " placement needs M=" + to_string(required) + ", got M=" +
                      to_string(params.cache));
  }
}

void require_granularity(std::size_t file_len, std::uint64_t g) {
  if (file_len % g != 0) {
    throw GranularityError("F=" + std::to_string(file_len) + " is not a multiple of the granularity " +
                           std::to_string(g));
  }
}

bool holds_exactly(const BitVector& cached, std::size_t start, std::size_t len) {
  if (cached.count() != len) return false;
  for (std::size_t p = start; p < start + len; ++p) {
    if (!cached[p]) return false;
  }
  return true;
}

}  // namespace

Rational CentralizedPlacementSpec::required_cache(std::uint32_t n_files, std::uint32_t n_users) const {
  const Rational per_user = Rational(n_files) / Rational(n_users);
  return kind == CentralizedKind::gbc ? per_user : per_user * man_t;
}

std::uint64_t CentralizedPlacementSpec::granularity(std::uint32_t n_users) const {
  if (kind == CentralizedKind::gbc) return n_users;
  return std::uint64_t{n_users} * binomial(n_users, man_t);
}

std::size_t round_up_file_len(std::size_t requested, std::uint64_t granularity) {
  if (granularity == 0) throw ConfigError("granularity must be positive");
  const std::size_t blocks = requested == 0 ? 1 : (requested + granularity - 1) / granularity;
  return blocks * granularity;
}

CachePlacement gbc_place(const Database& db, const SystemParams& params) {
  params.validate();
  if (db.n_files() != params.n_files || db.file_len() != params.file_len) {
    throw ConfigError("database does not match the system parameters");
  }
  require_cache(params, CentralizedPlacementSpec{CentralizedKind::gbc}.required_cache(params.n_files, params.n_users),
                "GBC");
  require_granularity(params.file_len, params.n_users);
  const std::size_t len = params.file_len / params.n_users;
  auto placement = empty_placement(db, params.n_users);
  for (UserIndex j = 0; j < params.n_users; ++j) {
    for (FileIndex i = 0; i < params.n_files; ++i) cache_segment(placement, db, j, i, subfile(i, j, len).positions);
  }
  placement.check_capacity(params.cache_bits());
  return placement;
}

Transcript gbc_deliver(const Database& db, const DemandVector& demands, const CachePlacement& placement) {
  const std::uint32_t n_users = placement.n_users();
  const std::uint32_t n_files = db.n_files();
  if (demands.n_users() != n_users || demands.n_files() != n_files) {
    throw ConfigError("demand vector does not match the placement");
  }
  require_granularity(db.file_len(), n_users);
  const std::size_t len = db.file_len() / n_users;
  for (UserIndex j = 0; j < n_users; ++j) {
    for (FileIndex i = 0; i < n_files; ++i) {
      if (!holds_exactly(placement.users[j].cached[i], std::size_t{j} * len, len)) {
        throw ConfigError("placement is not a GBC placement (user " + std::to_string(j + 1) + ")");
      }
    }
  }

  const auto groups = group_users(demands);
  const auto& user = groups.user_order;
  Transcript tx;
  tx.file_len = db.file_len();
  tx.procedure = "gbc";

  auto chain = [&](PartLabel part, FileIndex file, std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t k = begin; k + 1 < end; ++k) {
      tx.payloads.push_back(make_xor_payload(part, {subfile(file, user[k], len), subfile(file, user[k + 1], len)}, db));
    }
  };

  for (FileIndex i = 0; i < n_files; ++i) chain(PartLabel::part1, i, groups.begin(i), groups.end(i));

  for (FileIndex i = 0; i + 1 < n_files; ++i) {
    for (FileIndex j = i + 1; j < n_files; ++j) {
      if (groups.group_sizes[i] == 0 || groups.group_sizes[j] == 0) continue;
      chain(PartLabel::part2, i, groups.begin(j), groups.end(j));
      chain(PartLabel::part2, j, groups.begin(i), groups.end(i));
      const UserIndex last_j = user[groups.end(j) - 1];
      const UserIndex last_i = user[groups.end(i) - 1];
      tx.payloads.push_back(
          make_xor_payload(PartLabel::part2, {subfile(i, last_j, len), subfile(j, last_i, len)}, db));
    }
  }
  return tx;
}

CachePlacement man_place(const Database& db, const SystemParams& params, std::uint32_t t) {
  params.validate();
  if (db.n_files() != params.n_files || db.file_len() != params.file_len) {
    throw ConfigError("database does not match the system parameters");
  }
  if (t < 1 || t > params.n_users) throw ConfigError("MAN parameter t must lie in [1, K]");
  if (params.n_users > UserSet::kCapacity) throw ConfigError("MAN placement supports at most 64 users");
  const CentralizedPlacementSpec spec{CentralizedKind::man, t};
  require_cache(params, spec.required_cache(params.n_files, params.n_users), "MAN");
  require_granularity(params.file_len, spec.granularity(params.n_users));

  const auto subsets = subsets_of_size(params.n_users, t);
  const std::size_t len = params.file_len / subsets.size();
  auto placement = empty_placement(db, params.n_users);
  for (std::size_t idx = 0; idx < subsets.size(); ++idx) {
    subsets[idx].for_each([&](UserIndex k) {
      for (FileIndex i = 0; i < params.n_files; ++i) {
        cache_segment(placement, db, k, i, BitPositions::range(idx * len, len));
      }
    });
  }
  placement.check_capacity(params.cache_bits());
  return placement;
}

Transcript man_deliver(const Database& db, const DemandVector& demands, const CachePlacement& placement,
                       std::uint32_t t) {
  const std::uint32_t n_users = placement.n_users();
  if (demands.n_users() != n_users || demands.n_files() != db.n_files()) {
    throw ConfigError("demand vector does not match the placement");
  }
  if (t < 1 || t > n_users) throw ConfigError("MAN parameter t must lie in [1, K]");
  const auto subsets = subsets_of_size(n_users, t);
  require_granularity(db.file_len(), subsets.size());
  const std::size_t len = db.file_len() / subsets.size();
  const std::size_t expected_bits = subsets.size() * len / n_users * t * db.n_files();
  for (const auto& u : placement.users) {
    if (u.cached_bits() != expected_bits) throw ConfigError("placement is not a MAN placement for this t");
  }

  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < subsets.size(); ++i) index.emplace(subsets[i].bits(), i);

  Transcript tx;
  tx.file_len = db.file_len();
  tx.procedure = "man";
  for (const auto& s : subsets_of_size(n_users, t + 1)) {
    std::vector<Segment> operands;
    s.for_each([&](UserIndex k) {
      const UserSet rest = s.without(k);
      operands.push_back(Segment{OwnershipKey{demands[k], rest}, BitPositions::range(index.at(rest.bits()) * len, len)});
    });
    tx.payloads.push_back(make_xor_payload(PartLabel::direct, std::move(operands), db));
  }
  return tx;
}

}  // namespace codedcache
