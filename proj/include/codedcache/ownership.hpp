#pragma once

#include "codedcache/model.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace codedcache {

/// One ownership class W_{i,V}: a run of `count` entries starting at
/// `offset` in the file's class-sorted position list.
struct OwnershipClass {
  UserSet cachers;
  std::uint32_t offset = 0;
  std::uint32_t count = 0;
};

/// For every file, the partition of its bit positions by the exact set of
/// users caching them. Classes are sorted by cacher mask; positions inside a
/// class are ascending.
class OwnershipMap {
 public:
  OwnershipMap() = default;
  /// owners[i][p] = users caching bit p of file i.
  OwnershipMap(std::uint32_t n_users, std::vector<std::vector<UserSet>> owners);

  std::uint32_t n_files() const { return static_cast<std::uint32_t>(files_.size()); }
  std::uint32_t n_users() const { return n_users_; }
  std::size_t file_len() const { return files_.empty() ? 0 : files_.front().owners.size(); }

  const std::vector<OwnershipClass>& classes(FileIndex file) const { return files_.at(file).classes; }
  std::size_t class_size(FileIndex file, UserSet cachers) const;
  BitPositions positions(FileIndex file, UserSet cachers) const;
  Segment segment(FileIndex file, UserSet cachers) const;
  UserSet owners(FileIndex file, std::size_t bit) const { return files_.at(file).owners[bit]; }
  /// Bits of `file` cached by `user`.
  std::size_t cached_count(FileIndex file, UserIndex user) const;

 private:
  struct FileClasses {
    std::vector<UserSet> owners;
    std::shared_ptr<const std::vector<std::uint32_t>> sorted;
    std::vector<OwnershipClass> classes;
  };
  const OwnershipClass* find(FileIndex file, UserSet cachers) const;

  std::uint32_t n_users_ = 0;
  std::vector<FileClasses> files_;
};

/// Ownership partition of a realized placement.
OwnershipMap ownership_from_placement(const CachePlacement& placement);

}  // namespace codedcache
