#include "codedcache/model.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace codedcache {
namespace {

BitVector random_bits(std::mt19937_64& gen, std::size_t n_bits) {
  std::vector<std::uint64_t> blocks((n_bits + 63) / 64);
  for (auto& b : blocks) b = gen();
  BitVector bits(blocks.begin(), blocks.end());
  bits.resize(n_bits);
  return bits;
}

std::string one_based(std::uint64_t i) { return std::to_string(i + 1); }

}  // namespace

void SystemParams::validate() const {
  if (n_files < 1) throw ConfigError("N must be at least 1");
  if (n_users < 1) throw ConfigError("K must be at least 1");
  if (file_len < 1) throw ConfigError("F must be at least 1");
  if (cache < 0 || cache > n_files) throw ConfigError("cache capacity M must lie in [0, N]");
}

std::size_t SystemParams::cache_bits() const { return floor_to_uint(cache * file_len); }

Database::Database(std::vector<BitVector> files) : files_(std::move(files)) {
  if (files_.empty()) throw ConfigError("database needs at least one file");
  const auto len = files_.front().size();
  for (const auto& f : files_) {
    if (f.size() != len) throw ConfigError("database files must have equal length");
  }
}

Database make_database(const SystemParams& params, std::uint64_t seed) {
  params.validate();
  std::mt19937_64 gen(seed);
  std::vector<BitVector> files;
  files.reserve(params.n_files);
  for (std::uint32_t i = 0; i < params.n_files; ++i) files.push_back(random_bits(gen, params.file_len));
  return Database(std::move(files));
}

DemandVector::DemandVector(std::vector<FileIndex> demands, std::uint32_t n_files)
    : demands_(std::move(demands)), n_files_(n_files) {
  if (demands_.empty()) throw ConfigError("demand vector must cover at least one user");
  for (auto d : demands_) {
    if (d >= n_files_) throw ConfigError("demand " + one_based(d) + " exceeds N=" + std::to_string(n_files_));
  }
}

DemandVector worst_case_demands(std::uint32_t n_files, std::uint32_t n_users) {
  if (n_files < 1 || n_users < 1) throw ConfigError("N and K must be positive");
  std::vector<FileIndex> demands(n_users);
  if (n_files >= n_users) {
    for (UserIndex k = 0; k < n_users; ++k) demands[k] = k;
    return DemandVector(std::move(demands), n_files);
  }
  const std::uint32_t base = n_users / n_files;
  const std::uint32_t extra = n_users % n_files;
  UserIndex k = 0;
  for (FileIndex i = 0; i < n_files; ++i) {
    const std::uint32_t size = base + (i < extra ? 1 : 0);
    for (std::uint32_t j = 0; j < size; ++j) demands[k++] = i;
  }
  return DemandVector(std::move(demands), n_files);
}

bool GroupPartition::all_groups_nonempty() const {
  return std::all_of(group_sizes.begin(), group_sizes.end(), [](auto s) { return s > 0; });
}

GroupPartition group_users(const DemandVector& demands) {
  GroupPartition g;
  g.group_sizes.assign(demands.n_files(), 0);
  for (auto d : demands.values()) ++g.group_sizes[d];
  g.prefix_sums.assign(demands.n_files() + 1, 0);
  for (FileIndex i = 0; i < demands.n_files(); ++i) g.prefix_sums[i + 1] = g.prefix_sums[i] + g.group_sizes[i];
  g.user_order.assign(demands.n_users(), 0);
  std::vector<std::uint32_t> cursor(g.prefix_sums.begin(), g.prefix_sums.end() - 1);
  for (UserIndex k = 0; k < demands.n_users(); ++k) g.user_order[cursor[demands[k]]++] = k;
  return g;
}

FileIndex file_of(const SegmentLabel& label) {
  return std::visit([](const auto& l) { return l.file; }, label);
}

BitPositions BitPositions::range(std::size_t start, std::size_t length) {
  BitPositions p;
  p.offset_ = start;
  p.length_ = length;
  return p;
}

BitPositions BitPositions::slice(std::shared_ptr<const std::vector<std::uint32_t>> list, std::size_t offset,
                                 std::size_t length) {
  BitPositions p;
  p.list_ = std::move(list);
  p.offset_ = offset;
  p.length_ = length;
  return p;
}

std::vector<Segment> partition_subfiles(const SystemParams& params, FileIndex file) {
  params.validate();
  if (file >= params.n_files) throw ConfigError("file index out of range");
  if (params.file_len % params.n_users != 0) {
    throw GranularityError("F=" + std::to_string(params.file_len) + " is not a multiple of K=" +
                           std::to_string(params.n_users));
  }
  const std::size_t len = params.file_len / params.n_users;
  std::vector<Segment> out;
  out.reserve(params.n_users);
  for (UserIndex j = 0; j < params.n_users; ++j) {
    out.push_back(Segment{SubfileId{file, j}, BitPositions::range(j * len, len)});
  }
  return out;
}

BitVector gather(const BitVector& file, const BitPositions& positions) {
  BitVector out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (file[positions[i]]) out.set(i);
  }
  return out;
}

BitVector combination_row(const RandomCombination& combination, std::size_t row, std::size_t file_len) {
  std::seed_seq seq{static_cast<std::uint32_t>(combination.seed), static_cast<std::uint32_t>(combination.seed >> 32),
                    static_cast<std::uint32_t>(combination.file), static_cast<std::uint32_t>(row),
                    static_cast<std::uint32_t>(row >> 32)};
  std::mt19937_64 gen(seq);
  return random_bits(gen, file_len);
}

const char* to_string(PartLabel part) {
  switch (part) {
    case PartLabel::part1: return "part1";
    case PartLabel::part2: return "part2";
    case PartLabel::part3: return "part3";
    case PartLabel::random: return "random";
    case PartLabel::direct: return "direct";
  }
  return "unknown";
}

Payload make_xor_payload(PartLabel part, std::vector<Segment> operands, const Database& db) {
  Payload p;
  p.part = part;
  for (const auto& op : operands) xor_padded(p.data, gather(db.file(op.file()), op.positions));
  p.length = p.data.size();
  p.operands = std::move(operands);
  return p;
}

std::string describe(const SegmentLabel& label) {
  if (const auto* s = std::get_if<SubfileId>(&label)) {
    return "W_{" + one_based(s->file) + "," + one_based(s->part) + "}";
  }
  const auto& key = std::get<OwnershipKey>(label);
  std::string out = "W_{" + one_based(key.file) + ",{";
  bool first = true;
  key.cachers.for_each([&](UserIndex u) {
    if (!first) out += ",";
    out += one_based(u);
    first = false;
  });
  return out + "}}";
}

std::string describe(const Payload& payload) {
  std::ostringstream os;
  os << to_string(payload.part) << ": ";
  if (payload.combination) {
    os << "RLC(W_" << one_based(payload.combination->file) << "; rows=" << payload.combination->rows << ")";
    if (payload.accounting_only()) os << " [accounting]";
  }
  for (std::size_t i = 0; i < payload.operands.size(); ++i) {
    if (i) os << " ^ ";
    os << describe(payload.operands[i].label);
  }
  os << " (" << payload.length << " bits)";
  return os.str();
}

std::uint64_t Transcript::total_bits() const {
  std::uint64_t total = 0;
  for (const auto& p : payloads) total += p.length;
  return total;
}

Rational Transcript::rate() const { return Rational(total_bits()) / Rational(file_len); }

std::size_t UserCache::cached_bits() const {
  std::size_t total = 0;
  for (const auto& c : cached) total += c.count();
  return total;
}

void CachePlacement::check_capacity(std::size_t limit) const {
  for (std::size_t k = 0; k < users.size(); ++k) {
    if (users[k].cached_bits() > limit) {
      throw CachingError("user " + one_based(k) + " caches " + std::to_string(users[k].cached_bits()) +
                         " bits, above the budget of " + std::to_string(limit));
    }
  }
}

CachePlacement empty_placement(const Database& db, std::uint32_t n_users) {
  CachePlacement placement;
  placement.file_len = db.file_len();
  placement.users.resize(n_users);
  for (auto& user : placement.users) {
    user.cached.assign(db.n_files(), BitVector(db.file_len()));
    user.values.assign(db.n_files(), BitVector(db.file_len()));
  }
  return placement;
}

void cache_segment(CachePlacement& placement, const Database& db, UserIndex user, FileIndex file,
                   const BitPositions& positions) {
  auto& cache = placement.users.at(user);
  const auto& bits = db.file(file);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto p = positions[i];
    cache.cached[file].set(p);
    cache.values[file][p] = bits[p];
  }
}

}  // namespace codedcache
