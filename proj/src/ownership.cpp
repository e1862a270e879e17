#include "codedcache/ownership.hpp"

#include <algorithm>
#include <numeric>

namespace codedcache {

OwnershipMap::OwnershipMap(std::uint32_t n_users, std::vector<std::vector<UserSet>> owners) : n_users_(n_users) {
  if (n_users > UserSet::kCapacity) throw ConfigError("ownership classes support at most 64 users");
  files_.reserve(owners.size());
  for (auto& file_owners : owners) {
    if (!files_.empty() && file_owners.size() != files_.front().owners.size()) {
      throw ConfigError("ownership map needs equal file lengths");
    }
    FileClasses fc;
    fc.owners = std::move(file_owners);
    auto order = std::make_shared<std::vector<std::uint32_t>>(fc.owners.size());
    std::iota(order->begin(), order->end(), 0U);
    const auto& own = fc.owners;
    std::stable_sort(order->begin(), order->end(), [&](auto a, auto b) { return own[a].bits() < own[b].bits(); });
    for (std::uint32_t i = 0; i < order->size(); ++i) {
      const UserSet v = own[(*order)[i]];
      if (fc.classes.empty() || fc.classes.back().cachers != v) fc.classes.push_back({v, i, 0});
      ++fc.classes.back().count;
    }
    fc.sorted = std::move(order);
    files_.push_back(std::move(fc));
  }
}

const OwnershipClass* OwnershipMap::find(FileIndex file, UserSet cachers) const {
  const auto& cls = files_.at(file).classes;
  auto it = std::lower_bound(cls.begin(), cls.end(), cachers,
                             [](const OwnershipClass& c, UserSet v) { return c.cachers.bits() < v.bits(); });
  return it != cls.end() && it->cachers == cachers ? &*it : nullptr;
}

std::size_t OwnershipMap::class_size(FileIndex file, UserSet cachers) const {
  const auto* c = find(file, cachers);
  return c ? c->count : 0;
}

BitPositions OwnershipMap::positions(FileIndex file, UserSet cachers) const {
  const auto* c = find(file, cachers);
  if (!c) return BitPositions::range(0, 0);
  return BitPositions::slice(files_[file].sorted, c->offset, c->count);
}

Segment OwnershipMap::segment(FileIndex file, UserSet cachers) const {
  return Segment{OwnershipKey{file, cachers}, positions(file, cachers)};
}

std::size_t OwnershipMap::cached_count(FileIndex file, UserIndex user) const {
  std::size_t n = 0;
  for (const auto& c : classes(file)) {
    if (c.cachers.contains(user)) n += c.count;
  }
  return n;
}

OwnershipMap ownership_from_placement(const CachePlacement& placement) {
  const std::uint32_t n_users = placement.n_users();
  if (n_users == 0) throw ConfigError("placement has no users");
  const std::size_t n_files = placement.users.front().cached.size();
  std::vector<std::vector<UserSet>> owners(n_files, std::vector<UserSet>(placement.file_len));
  for (UserIndex u = 0; u < n_users; ++u) {
    for (std::size_t i = 0; i < n_files; ++i) {
      const auto& c = placement.users[u].cached[i];
      for (auto p = c.find_first(); p != BitVector::npos; p = c.find_next(p)) owners[i][p] = owners[i][p].with(u);
    }
  }
  return OwnershipMap(n_users, std::move(owners));
}

}  // namespace codedcache
