#pragma once

#include "codedcache/bits.hpp"
#include "codedcache/rational.hpp"
#include "codedcache/user_set.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace codedcache {

class CachingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid problem instance or scheme configuration.
class ConfigError : public CachingError {
 public:
  using CachingError::CachingError;
};

/// File length is not a multiple of the scheme's granularity.
class GranularityError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Rate formula evaluated outside the regime where it is defined.
class DomainError : public CachingError {
 public:
  using CachingError::CachingError;
};

/// Problem instance: N files of F bits, K users with caches of M files each.
struct SystemParams {
  std::uint32_t n_files = 1;
  std::uint32_t n_users = 1;
  Rational cache = 0;
  std::size_t file_len = 1;

  void validate() const;
  /// floor(M F), the per-user cache budget in bits.
  std::size_t cache_bits() const;
};

class Database {
 public:
  explicit Database(std::vector<BitVector> files);

  std::uint32_t n_files() const { return static_cast<std::uint32_t>(files_.size()); }
  std::size_t file_len() const { return files_.front().size(); }
  const BitVector& file(FileIndex i) const { return files_.at(i); }

 private:
  std::vector<BitVector> files_;
};

/// N files of F pseudorandom bits, deterministic in `seed`.
Database make_database(const SystemParams& params, std::uint64_t seed);

/// d_k for every user, 0-based file indices.
class DemandVector {
 public:
  DemandVector(std::vector<FileIndex> demands, std::uint32_t n_files);

  std::uint32_t n_files() const { return n_files_; }
  std::uint32_t n_users() const { return static_cast<std::uint32_t>(demands_.size()); }
  FileIndex operator[](UserIndex k) const { return demands_[k]; }
  const std::vector<FileIndex>& values() const { return demands_; }

 private:
  std::vector<FileIndex> demands_;
  std::uint32_t n_files_;
};

/// Worst-case demand vector: every file requested when N < K (balanced group
/// sizes, remainder to the lowest-indexed files), all distinct otherwise.
DemandVector worst_case_demands(std::uint32_t n_files, std::uint32_t n_users);

/// Users re-ordered so that group G_i (everyone requesting file i) occupies
/// the contiguous positions [S_{i-1}, S_i).
struct GroupPartition {
  std::vector<std::uint32_t> group_sizes;  // K_i
  std::vector<std::uint32_t> prefix_sums;  // S_0 = 0, ..., S_N = K
  std::vector<UserIndex> user_order;       // position -> user

  std::uint32_t begin(FileIndex i) const { return prefix_sums[i]; }
  std::uint32_t end(FileIndex i) const { return prefix_sums[i + 1]; }
  bool all_groups_nonempty() const;
};

/// Stable grouping of users by demanded file.
GroupPartition group_users(const DemandVector& demands);

/// Centralized subfile W_{i,j}: the j-th of K equal slices of file i.
struct SubfileId {
  FileIndex file = 0;
  UserIndex part = 0;
  friend bool operator==(const SubfileId&, const SubfileId&) = default;
};

/// W_{i,V}: bits of file i held by exactly the users in V.
struct OwnershipKey {
  FileIndex file = 0;
  UserSet cachers;
  friend bool operator==(const OwnershipKey&, const OwnershipKey&) = default;
};

using SegmentLabel = std::variant<SubfileId, OwnershipKey>;

FileIndex file_of(const SegmentLabel& label);

/// Ordered bit positions inside one file: a contiguous range or a slice of a
/// shared position list.
class BitPositions {
 public:
  BitPositions() = default;
  static BitPositions range(std::size_t start, std::size_t length);
  static BitPositions slice(std::shared_ptr<const std::vector<std::uint32_t>> list, std::size_t offset,
                            std::size_t length);

  std::size_t size() const { return length_; }
  bool empty() const { return length_ == 0; }
  bool contiguous() const { return list_ == nullptr; }
  std::size_t operator[](std::size_t i) const { return list_ ? (*list_)[offset_ + i] : offset_ + i; }

 private:
  std::shared_ptr<const std::vector<std::uint32_t>> list_;
  std::size_t offset_ = 0;
  std::size_t length_ = 0;
};

/// Labeled reference to bits of one file.
struct Segment {
  SegmentLabel label;
  BitPositions positions;

  FileIndex file() const { return file_of(label); }
  std::size_t length() const { return positions.size(); }
};

/// The K contiguous, equal-length segments W_{i,1..K} of file i.
/// Throws GranularityError when K does not divide F.
std::vector<Segment> partition_subfiles(const SystemParams& params, FileIndex file);

/// Bits of `file` at `positions`, in order.
BitVector gather(const BitVector& file, const BitPositions& positions);

/// Random linear combinations of one file's bits. Coefficient rows are
/// regenerated from the seed, so sender and receivers share them.
struct RandomCombination {
  FileIndex file = 0;
  std::uint64_t seed = 0;
  std::size_t rows = 0;
};

BitVector combination_row(const RandomCombination& combination, std::size_t row, std::size_t file_len);

enum class PartLabel { part1, part2, part3, random, direct };
inline constexpr std::size_t kPartLabelCount = 5;

const char* to_string(PartLabel part);

/// One broadcast unit: the XOR of zero-padded operand segments, or a block of
/// random parity rows. For accounting-only random payloads `data` is empty and
/// `length` still carries the charged bit count.
struct Payload {
  PartLabel part = PartLabel::direct;
  std::vector<Segment> operands;
  std::optional<RandomCombination> combination;
  BitVector data;
  std::size_t length = 0;

  bool accounting_only() const { return combination.has_value() && data.size() != length; }
};

/// XOR of the operands read from `db`, zero-padded to the longest operand.
Payload make_xor_payload(PartLabel part, std::vector<Segment> operands, const Database& db);

/// Human-readable label, 1-based like the usual W_{i,j} notation.
std::string describe(const SegmentLabel& label);
std::string describe(const Payload& payload);

/// The common broadcast message X.
struct Transcript {
  std::vector<Payload> payloads;
  std::size_t file_len = 1;
  std::string procedure;

  std::uint64_t total_bits() const;
  Rational rate() const;
};

/// Z_k: which bits of every file user k holds, and their values.
struct UserCache {
  std::vector<BitVector> cached;
  std::vector<BitVector> values;

  std::size_t cached_bits() const;
};

struct CachePlacement {
  std::vector<UserCache> users;
  std::size_t file_len = 0;

  std::uint32_t n_users() const { return static_cast<std::uint32_t>(users.size()); }
  /// Throws CachingError if any user holds more than `limit` bits.
  void check_capacity(std::size_t limit) const;
};

/// Empty caches for `n_users` users over the files of `db`.
CachePlacement empty_placement(const Database& db, std::uint32_t n_users);

/// Marks `positions` of file `file` as cached by user `user`, copying values from `db`.
void cache_segment(CachePlacement& placement, const Database& db, UserIndex user, FileIndex file,
                   const BitPositions& positions);

}  // namespace codedcache
