#pragma once

#include "codedcache/model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace codedcache {

/// Peeling result for one user.
struct DecodedFile {
  BitVector bits;   // reconstructed demanded file (undecoded positions are 0)
  BitVector known;  // which positions were recovered
  bool complete = false;
  /// Segments still unknown at the fixpoint, in first-seen order.
  std::vector<std::string> unresolved;
};

/// Resolves XOR payloads that have exactly one operand unknown to user k,
/// until nothing changes, then assembles the demanded file from the cache
/// and every recovered segment of it. Random-combination payloads are ignored.
DecodedFile peel_decode(const UserCache& cache, const Transcript& transcript, const DemandVector& demands,
                        UserIndex k);

/// Gaussian elimination over GF(2) on the random-combination payloads for
/// the demanded file, starting from what user k already knows.
DecodedFile eliminate_decode(const UserCache& cache, const Transcript& transcript, const DemandVector& demands,
                             UserIndex k);

enum class DecodeMethod { peeling, elimination, accounting };

const char* to_string(DecodeMethod method);

struct UserOutcome {
  bool success = false;
  std::size_t mismatched_bits = 0;
  std::size_t unresolved_bits = 0;
  DecodeMethod method = DecodeMethod::peeling;
};

struct DecodeReport {
  std::vector<UserOutcome> users;
  Rational measured_rate = 0;
  std::string procedure;

  bool all_succeeded() const;
  std::size_t failures() const;
};

/// Decodes every user and compares against the database. Accounting-only
/// random payloads are checked by row budget: a user passes when its file
/// got at least as many rows as it has missing bits.
DecodeReport verify_all(const Database& db, const CachePlacement& placement, const Transcript& transcript,
                        const DemandVector& demands);

}  // namespace codedcache
