#pragma once

#include "codedcache/model.hpp"

#include <array>
#include <cstdint>

namespace codedcache {

/// Exact bit totals of a transcript, split by part label.
struct TranscriptStats {
  std::array<std::uint64_t, kPartLabelCount> bits{};
  std::array<std::uint64_t, kPartLabelCount> payloads{};
  std::size_t file_len = 1;

  std::uint64_t bits_in(PartLabel part) const { return bits[static_cast<std::size_t>(part)]; }
  std::uint64_t payloads_in(PartLabel part) const { return payloads[static_cast<std::size_t>(part)]; }
  std::uint64_t total_bits() const;
  Rational rate() const;
  Rational part_rate(PartLabel part) const;

  void add(PartLabel part, std::uint64_t length);
  friend bool operator==(const TranscriptStats&, const TranscriptStats&) = default;
};

TranscriptStats transcript_stats(const Transcript& transcript);

}  // namespace codedcache
