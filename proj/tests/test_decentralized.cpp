#include "codedcache/decentralized.hpp"
#include "codedcache/decoder.hpp"
#include "codedcache/rates.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace codedcache;

namespace {

SystemParams dec_params(std::uint32_t n, std::uint32_t k, Rational m, std::size_t f) {
  SystemParams p;
  p.n_files = n;
  p.n_users = k;
  p.cache = m;
  p.file_len = f;
  return p;
}

struct DecRun {
  Database db;
  RandomPlacement placed;
};

DecRun place(const SystemParams& p, std::uint64_t seed) {
  auto db = make_database(p, seed);
  auto placed = random_place(db, p, seed);
  return {std::move(db), std::move(placed)};
}

}  // namespace

TEST_SUITE("decentralized") {
  TEST_CASE("random placement extremes") {
    SUBCASE("M = 0") {
      const auto r = place(dec_params(3, 4, 0, 50), 1);
      for (FileIndex i = 0; i < 3; ++i) {
        REQUIRE(r.placed.ownership.classes(i).size() == 1);
        CHECK(r.placed.ownership.classes(i)[0].cachers.empty());
        CHECK(r.placed.ownership.classes(i)[0].count == 50);
      }
    }
    SUBCASE("M = N") {
      const auto r = place(dec_params(3, 4, 3, 50), 1);
      for (FileIndex i = 0; i < 3; ++i) {
        REQUIRE(r.placed.ownership.classes(i).size() == 1);
        CHECK(r.placed.ownership.classes(i)[0].cachers == UserSet::first(4));
      }
    }
  }

  TEST_CASE("fixed quota per file and user; classes partition every file") {
    const auto p = dec_params(4, 7, Rational(3, 2), 1000);
    const auto r = place(p, 4);
    const std::size_t quota = random_quota(p);
    CHECK(quota == 375);
    for (UserIndex u = 0; u < 7; ++u) {
      for (FileIndex i = 0; i < 4; ++i) CHECK(r.placed.placement.users[u].cached[i].count() == quota);
      CHECK(r.placed.placement.users[u].cached_bits() <= p.cache_bits());
    }
    for (FileIndex i = 0; i < 4; ++i) {
      BitVector seen(1000);
      std::size_t total = 0;
      for (const auto& c : r.placed.ownership.classes(i)) {
        const auto pos = r.placed.ownership.positions(i, c.cachers);
        total += pos.size();
        for (std::size_t j = 0; j < pos.size(); ++j) {
          CHECK(!seen[pos[j]]);
          seen.set(pos[j]);
          c.cachers.for_each([&](UserIndex u) { CHECK(r.placed.placement.users[u].cached[i][pos[j]]); });
          CHECK(r.placed.ownership.owners(i, pos[j]) == c.cachers);
        }
      }
      CHECK(total == 1000);
      CHECK(seen.all());
    }
    const auto rebuilt = ownership_from_placement(r.placed.placement);
    for (FileIndex i = 0; i < 4; ++i) {
      for (const auto& c : r.placed.ownership.classes(i)) CHECK(rebuilt.class_size(i, c.cachers) == c.count);
    }
  }

  TEST_CASE("placement is reproducible and seed dependent") {
    const auto p = dec_params(2, 3, 1, 200);
    const auto a = random_ownership(p, 8), b = random_ownership(p, 8), c = random_ownership(p, 9);
    bool differs = false;
    for (std::size_t bit = 0; bit < 200; ++bit) {
      CHECK(a.owners(0, bit) == b.owners(0, bit));
      differs = differs || a.owners(0, bit) != c.owners(0, bit);
    }
    CHECK(differs);
  }

  TEST_CASE("class sizes concentrate around (M/N)^|V| (1-M/N)^(K-|V|) F") {
    const auto p = dec_params(3, 5, 1, 100000);
    const double q = 1.0 / 3;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto own = random_ownership(p, seed);
      for (FileIndex i = 0; i < 3; ++i) {
        for (std::uint64_t mask = 0; mask < 32; ++mask) {
          const UserSet v(mask);
          const double prob = std::pow(q, v.size()) * std::pow(1 - q, 5 - v.size());
          const double mean = prob * 100000, sd = std::sqrt(100000 * prob * (1 - prob));
          CHECK(std::abs(double(own.class_size(i, v)) - mean) <= 4.5 * sd + 1);
        }
      }
    }
  }

  TEST_CASE("Example 2 transcript") {
    const auto p = dec_params(3, 5, 1, 100000);
    const auto r = place(p, 1);
    const auto d = worst_case_demands(3, 5);
    const auto tx = gbd_deliver_coded(r.db, d, r.placed.placement, r.placed.ownership);
    CHECK(oracle::operands(tx, PartLabel::part1) == oracle::example2_part1());
    CHECK(oracle::operands(tx, PartLabel::part2) == oracle::example2_part2());
    CHECK(oracle::operands(tx, PartLabel::part3) == oracle::example2_part3());
    CHECK(tx.payloads.size() == 28);
    // Operands in delivery order: the two chain members, then the bridge term.
    const auto& first = tx.payloads[12];
    REQUIRE(first.operands.size() == 3);
    CHECK(describe(first.operands[0].label) == "W_{1,{2,3}}");
    CHECK(describe(first.operands[1].label) == "W_{1,{1,3}}");
    CHECK(describe(first.operands[2].label) == "W_{2,{1,2}}");
    CHECK(verify_all(r.db, r.placed.placement, tx, d).all_succeeded());
  }

  TEST_CASE("payload lengths are the longest operand") {
    const auto p = dec_params(3, 6, 1, 3000);
    const auto r = place(p, 2);
    const auto d = worst_case_demands(3, 6);
    for (const auto& tx : {gbd_deliver_coded(r.db, d, r.placed.placement, r.placed.ownership),
                           man_dec_deliver(r.db, d, r.placed.placement, r.placed.ownership)}) {
      for (const auto& pay : tx.payloads) {
        std::size_t longest = 0;
        for (const auto& op : pay.operands) longest = std::max(longest, op.length());
        CHECK(pay.length == longest);
        CHECK(pay.data.size() == longest);
        CHECK(longest > 0);
      }
    }
  }

  TEST_CASE("part 2 sends NK - N(N+1)/2 payloads") {
    for (auto [n, k] : {std::pair{3u, 5u}, std::pair{4u, 9u}, std::pair{2u, 7u}}) {
      const auto own = random_ownership(dec_params(n, k, 1, 20000), 3);
      const auto stats = measure(plan_gbd_coded(own, worst_case_demands(n, k)), 20000);
      CHECK(stats.payloads_in(PartLabel::part2) == n * k - n * (n + 1) / 2);
    }
  }

  TEST_CASE("M = N leaves nothing to send") {
    const auto r = place(dec_params(3, 5, 3, 100), 1);
    const auto d = worst_case_demands(3, 5);
    CHECK(gbd_deliver_coded(r.db, d, r.placed.placement, r.placed.ownership).payloads.empty());
    CHECK(man_dec_deliver(r.db, d, r.placed.placement, r.placed.ownership).rate() == 0);
    const auto tx = gbd_deliver(r.db, d, r.placed.placement, r.placed.ownership);
    CHECK(tx.rate() == 0);
    CHECK(verify_all(r.db, r.placed.placement, tx, d).all_succeeded());
  }

  TEST_CASE("coded procedures decode for every user") {
    std::mt19937_64 gen(17);
    for (auto [n, k] : {std::pair{3u, 5u}, std::pair{2u, 6u}, std::pair{4u, 9u}, std::pair{5u, 4u}, std::pair{1u, 3u}}) {
      for (const Rational m : {Rational(1, 2), Rational(1), Rational(n, 2)}) {
        const auto p = dec_params(n, k, m, 1500);
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
          const auto r = place(p, seed);
          std::vector<FileIndex> v(k);
          for (auto& x : v) x = static_cast<FileIndex>(gen() % n);
          for (const auto& d : {worst_case_demands(n, k), DemandVector(v, n)}) {
            const auto gbd = gbd_deliver_coded(r.db, d, r.placed.placement, r.placed.ownership);
            const auto man = man_dec_deliver(r.db, d, r.placed.placement, r.placed.ownership);
            CHECK(verify_all(r.db, r.placed.placement, gbd, d).all_succeeded());
            CHECK(verify_all(r.db, r.placed.placement, man, d).all_succeeded());
          }
        }
      }
    }
  }

  TEST_CASE("GBD coded never sends more than the MAN-D coded procedure") {
    for (auto [n, k] : {std::pair{3u, 5u}, std::pair{2u, 6u}, std::pair{4u, 9u}, std::pair{5u, 12u}}) {
      for (const Rational m : {Rational(1, 4), Rational(1), Rational(n, 2)}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
          const auto own = random_ownership(dec_params(n, k, m, 5000), seed);
          const auto d = worst_case_demands(n, k);
          CHECK(measure(plan_gbd_coded(own, d), 5000).total_bits() <= measure(plan_man_dec(own, d), 5000).total_bits());
        }
      }
    }
  }

  TEST_CASE("measure agrees with the materialized transcript") {
    const auto p = dec_params(3, 7, Rational(3, 4), 4000);
    const auto r = place(p, 6);
    const auto d = worst_case_demands(3, 7);
    for (const auto& plan : {plan_gbd_coded(r.placed.ownership, d), plan_man_dec(r.placed.ownership, d)}) {
      CHECK(measure(plan, 4000) == transcript_stats(materialize(plan, r.db, r.placed.ownership, d)));
    }
  }

  TEST_CASE("MAN-D with one user sends its missing bits") {
    const auto p = dec_params(3, 1, 1, 300);
    const auto r = place(p, 2);
    const auto tx = man_dec_deliver(r.db, worst_case_demands(3, 1), r.placed.placement, r.placed.ownership);
    CHECK(tx.rate() == 1 - Rational(random_quota(p), 300));
  }

  TEST_CASE("MAN-D example rate") {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto own = random_ownership(dec_params(3, 5, 1, 100000), seed);
      sum += to_double(measure(plan_man_dec(own, worst_case_demands(3, 5)), 100000).rate());
    }
    CHECK(std::abs(sum / 5 - 1.7366) / 1.7366 < 0.02);
  }

  TEST_CASE("random delivery in accounting mode") {
    const auto p = dec_params(3, 5, 1, 999);
    const auto r = place(p, 1);
    const auto d = worst_case_demands(3, 5);
    const auto tx = gbd_deliver_random(r.db, d, r.placed.placement);
    CHECK(tx.rate() == 3 * (1 - Rational(random_quota(p), 999)));
    CHECK(tx.total_bits() == random_delivery_bits(r.placed.ownership, d));
    const auto report = verify_all(r.db, r.placed.placement, tx, d);
    CHECK(report.all_succeeded());
    CHECK(report.users[0].method == DecodeMethod::accounting);
    for (const auto& pay : tx.payloads) CHECK(pay.accounting_only());

    const auto zero = place(dec_params(3, 5, 0, 100), 1);
    CHECK(gbd_deliver_random(zero.db, d, zero.placed.placement).rate() == 3);
  }

  TEST_CASE("random delivery in exact mode decodes by elimination") {
    const auto p = dec_params(2, 3, 1, 256);
    const auto r = place(p, 5);
    const auto d = worst_case_demands(2, 3);
    const auto tx = gbd_deliver_random(r.db, d, r.placed.placement, RandomDeliveryOptions{true, 16, 77});
    CHECK(tx.total_bits() == 2 * (128 + 16));
    const auto report = verify_all(r.db, r.placed.placement, tx, d);
    CHECK(report.all_succeeded());
    for (const auto& u : report.users) CHECK(u.method == DecodeMethod::elimination);
    CHECK_THROWS_AS(gbd_deliver_random(make_database(dec_params(2, 3, 1, 1024), 1), d,
                                       random_place(make_database(dec_params(2, 3, 1, 1024), 1), dec_params(2, 3, 1, 1024), 1).placement,
                                       RandomDeliveryOptions{true, 16, 1}),
                    ConfigError);
  }

  TEST_CASE("exact mode with too few rows is rank deficient") {
    const auto p = dec_params(1, 2, Rational(1, 2), 64);
    const auto r = place(p, 5);
    const auto d = worst_case_demands(1, 2);
    auto tx = gbd_deliver_random(r.db, d, r.placed.placement, RandomDeliveryOptions{true, 0, 3});
    tx.payloads[0].combination->rows -= 4;
    tx.payloads[0].data.resize(tx.payloads[0].combination->rows);
    tx.payloads[0].length = tx.payloads[0].data.size();
    CHECK_FALSE(verify_all(r.db, r.placed.placement, tx, d).all_succeeded());
  }

  TEST_CASE("the cheaper procedure is chosen") {
    const auto d = worst_case_demands(3, 5);
    const auto r = place(dec_params(3, 5, 1, 20000), 3);
    const auto tx = gbd_deliver(r.db, d, r.placed.placement, r.placed.ownership);
    CHECK(tx.procedure == "gbd-coded");
    CHECK(tx.rate() < 2);

    const auto z = place(dec_params(3, 5, 0, 100), 3);
    const auto tz = gbd_deliver(z.db, d, z.placed.placement, z.placed.ownership);
    CHECK(tz.procedure == "gbd-coded");
    CHECK(tz.rate() == 3);

    // Sparse classes make the coded procedure lose at this length.
    const auto dd = worst_case_demands(6, 30);
    const auto big = place(dec_params(6, 30, 2, 2000), 1);
    const auto tb = gbd_deliver(big.db, dd, big.placed.placement, big.placed.ownership);
    const auto coded = gbd_deliver_coded(big.db, dd, big.placed.placement, big.placed.ownership);
    CHECK(tb.total_bits() == std::min(coded.total_bits(), random_delivery_bits(big.placed.ownership, dd)));
  }

  TEST_CASE("inconsistent ownership is rejected") {
    const auto a = place(dec_params(2, 3, 1, 100), 1);
    const auto b = place(dec_params(2, 3, 1, 100), 2);
    CHECK_THROWS_AS(gbd_deliver_coded(a.db, worst_case_demands(2, 3), a.placed.placement, random_ownership(dec_params(2, 3, Rational(1, 2), 100), 1)),
                    ConfigError);
    CHECK_THROWS_AS(gbd_deliver_coded(a.db, worst_case_demands(2, 3), a.placed.placement, b.placed.ownership), ConfigError);
    CHECK_NOTHROW(gbd_deliver_coded(a.db, worst_case_demands(2, 3), a.placed.placement, a.placed.ownership));
  }
}
