#include "codedcache/stats.hpp"

#include <numeric>

namespace codedcache {

std::uint64_t TranscriptStats::total_bits() const { return std::accumulate(bits.begin(), bits.end(), std::uint64_t{0}); }

Rational TranscriptStats::rate() const { return Rational(total_bits()) / Rational(file_len); }

Rational TranscriptStats::part_rate(PartLabel part) const { return Rational(bits_in(part)) / Rational(file_len); }

void TranscriptStats::add(PartLabel part, std::uint64_t length) {
  bits[static_cast<std::size_t>(part)] += length;
  payloads[static_cast<std::size_t>(part)] += 1;
}

TranscriptStats transcript_stats(const Transcript& transcript) {
  TranscriptStats stats;
  stats.file_len = transcript.file_len;
  for (const auto& p : transcript.payloads) stats.add(p.part, p.length);
  return stats;
}

}  // namespace codedcache
