#include "codedcache/decoder.hpp"

#include <deque>
#include <map>
#include <tuple>

namespace codedcache {
namespace {

using SegmentKey = std::tuple<FileIndex, int, std::uint64_t>;

SegmentKey key_of(const SegmentLabel& label) {
  if (const auto* s = std::get_if<SubfileId>(&label)) return {s->file, 0, s->part};
  const auto& o = std::get<OwnershipKey>(label);
  return {o.file, 1, o.cachers.bits()};
}

struct SegmentState {
  const Segment* segment = nullptr;
  bool known = false;
  BitVector value;
  std::vector<std::size_t> payloads;
};

DecodedFile assemble(const UserCache& cache, FileIndex file) {
  DecodedFile out;
  out.bits = cache.values.at(file);
  out.known = cache.cached.at(file);
  return out;
}

}  // namespace

DecodedFile peel_decode(const UserCache& cache, const Transcript& transcript, const DemandVector& demands,
                        UserIndex k) {
  const FileIndex want = demands[k];
  std::map<SegmentKey, std::size_t> index;
  std::vector<SegmentState> segs;
  std::vector<std::vector<std::size_t>> operands(transcript.payloads.size());
  std::vector<std::size_t> unknown(transcript.payloads.size(), 0);

  for (std::size_t p = 0; p < transcript.payloads.size(); ++p) {
    const auto& payload = transcript.payloads[p];
    if (payload.combination) continue;
    for (const auto& op : payload.operands) {
      auto [it, fresh] = index.try_emplace(key_of(op.label), segs.size());
      if (fresh) {
        SegmentState s;
        s.segment = &op;
        const auto& cached = cache.cached.at(op.file());
        s.known = true;
        for (std::size_t i = 0; i < op.length() && s.known; ++i) s.known = cached[op.positions[i]];
        if (s.known) s.value = gather(cache.values[op.file()], op.positions);
        segs.push_back(std::move(s));
      }
      operands[p].push_back(it->second);
      segs[it->second].payloads.push_back(p);
    }
  }

  std::deque<std::size_t> ready;
  for (std::size_t p = 0; p < operands.size(); ++p) {
    for (auto s : operands[p]) unknown[p] += segs[s].known ? 0 : 1;
    if (unknown[p] == 1) ready.push_back(p);
  }
  while (!ready.empty()) {
    const std::size_t p = ready.front();
    ready.pop_front();
    if (unknown[p] != 1) continue;
    BitVector residual = transcript.payloads[p].data;
    std::size_t target = 0;
    for (auto s : operands[p]) {
      if (segs[s].known) {
        xor_padded(residual, segs[s].value);
      } else {
        target = s;
      }
    }
    auto& t = segs[target];
    residual.resize(t.segment->length());
    t.value = std::move(residual);
    t.known = true;
    for (auto q : t.payloads) {
      if (--unknown[q] == 1) ready.push_back(q);
    }
  }

  DecodedFile out = assemble(cache, want);
  for (const auto& s : segs) {
    if (s.segment->file() != want) continue;
    if (!s.known) {
      out.unresolved.push_back(describe(s.segment->label));
      continue;
    }
    for (std::size_t i = 0; i < s.segment->length(); ++i) {
      const auto pos = s.segment->positions[i];
      out.bits[pos] = s.value[i];
      out.known.set(pos);
    }
  }
  out.complete = out.known.all();
  return out;
}

DecodedFile eliminate_decode(const UserCache& cache, const Transcript& transcript, const DemandVector& demands,
                             UserIndex k) {
  const FileIndex want = demands[k];
  DecodedFile out = assemble(cache, want);
  const std::size_t len = out.bits.size();
  std::vector<std::size_t> missing;
  for (std::size_t p = 0; p < len; ++p) {
    if (!out.known[p]) missing.push_back(p);
  }
  const std::size_t m = missing.size();

  // Row layout: m coefficient bits followed by the right-hand side.
  std::vector<BitVector> rows;
  for (const auto& payload : transcript.payloads) {
    if (!payload.combination || payload.combination->file != want || payload.accounting_only()) continue;
    for (std::size_t r = 0; r < payload.combination->rows; ++r) {
      const BitVector coef = combination_row(*payload.combination, r, len);
      bool rhs = payload.data[r] ^ dot(coef & out.known, out.bits);
      BitVector row(m + 1);
      for (std::size_t j = 0; j < m; ++j) row[j] = coef[missing[j]];
      row[m] = rhs;
      rows.push_back(std::move(row));
    }
  }

  std::vector<std::size_t> pivot_row(m, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && !rows[sel][col]) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][col]) rows[r] ^= rows[rank];
    }
    pivot_row[col] = rank++;
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (pivot_row[j] == SIZE_MAX) continue;
    out.bits[missing[j]] = rows[pivot_row[j]][m];
    out.known.set(missing[j]);
  }
  if (rank < m) out.unresolved.push_back("W_" + std::to_string(want + 1) + ": rank " + std::to_string(rank) + " of " +
                                         std::to_string(m));
  out.complete = out.known.all();
  return out;
}

const char* to_string(DecodeMethod method) {
  switch (method) {
    case DecodeMethod::peeling: return "peeling";
    case DecodeMethod::elimination: return "elimination";
    case DecodeMethod::accounting: return "accounting";
  }
  return "unknown";
}

bool DecodeReport::all_succeeded() const { return failures() == 0; }

std::size_t DecodeReport::failures() const {
  std::size_t n = 0;
  for (const auto& u : users) n += u.success ? 0 : 1;
  return n;
}

DecodeReport verify_all(const Database& db, const CachePlacement& placement, const Transcript& transcript,
                        const DemandVector& demands) {
  if (placement.n_users() != demands.n_users()) throw ConfigError("demand vector does not match the placement");
  DecodeReport report;
  report.procedure = transcript.procedure;
  report.measured_rate = transcript.rate();
  for (UserIndex k = 0; k < demands.n_users(); ++k) {
    const FileIndex want = demands[k];
    const auto& cache = placement.users[k];
    bool has_combination = false, accounting = false;
    std::size_t rows = 0;
    for (const auto& p : transcript.payloads) {
      if (!p.combination || p.combination->file != want) continue;
      has_combination = true;
      accounting = accounting || p.accounting_only();
      rows += p.combination->rows;
    }
    UserOutcome outcome;
    if (accounting) {
      const std::size_t missing = db.file_len() - cache.cached[want].count();
      outcome.method = DecodeMethod::accounting;
      outcome.unresolved_bits = rows >= missing ? 0 : missing - rows;
      outcome.success = outcome.unresolved_bits == 0;
    } else {
      const auto decoded = has_combination ? eliminate_decode(cache, transcript, demands, k)
                                           : peel_decode(cache, transcript, demands, k);
      outcome.method = has_combination ? DecodeMethod::elimination : DecodeMethod::peeling;
      outcome.mismatched_bits = ((decoded.bits ^ db.file(want)) & decoded.known).count();
      outcome.unresolved_bits = decoded.known.size() - decoded.known.count();
      outcome.success = decoded.complete && outcome.mismatched_bits == 0;
    }
    report.users.push_back(outcome);
  }
  return report;
}

}  // namespace codedcache
