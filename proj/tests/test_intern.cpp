#include <map>
#include <random>
#include <unordered_set>

#include "doctest.h"
#include "hcons/error.hpp"
#include "hcons/intern.hpp"

using namespace hcons;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected hcons::Error");
  return Errc::usage;
}

}  // namespace

TEST_CASE("interning a payload twice returns the same identifier") {
  Pool pool;
  Payload leaf(0, {}, {7});
  UniqueId a = pool.intern(leaf);
  auto nodes = pool.stats().node_count;
  UniqueId b = pool.intern(leaf);
  CHECK(a == b);
  CHECK(pool.stats().node_count == nodes);
  CHECK(pool.stats().intern_hits == 1);
  CHECK(pool.stats().intern_misses == 1);
}

TEST_CASE("payloads differing in one attribute get distinct identifiers") {
  Pool pool;
  CHECK(pool.intern(Payload(1, {}, {3})) != pool.intern(Payload(1, {}, {4})));
  CHECK(pool.intern(Payload(1, {}, {3})) != pool.intern(Payload(2, {}, {3})));
}

TEST_CASE("preallocated identifiers come first") {
  Pool pool;
  CHECK(pool.preallocate(Payload(0, {}, {0})).value == 0);
  CHECK(pool.preallocate(Payload(0, {}, {1})).value == 1);
  UniqueId first = pool.intern(Payload(1, {UniqueId{0}, UniqueId{1}}, {5}));
  CHECK(first.value == 2);
  CHECK(pool.next().value == 3);
  CHECK(pool.preallocated_count() == 2);

  // interning a preallocated payload finds it
  CHECK(pool.intern(Payload(0, {}, {1})).value == 1);

  CHECK(code_of([&] { pool.preallocate(Payload(0, {}, {2})); }) == Errc::usage);
}

TEST_CASE("resolve") {
  Pool pool;
  UniqueId leaf = pool.preallocate(Payload(0, {}, {1}));
  Payload p(1, {leaf, leaf}, {9});
  UniqueId id = pool.intern(p);
  CHECK(pool.resolve(id) == p);
  CHECK(pool.resolve(leaf) == Payload(0, {}, {1}));
  CHECK(code_of([&] { (void)pool.resolve(pool.next()); }) == Errc::unknown_identifier);
}

TEST_CASE("children must already be in the pool") {
  Pool pool;
  UniqueId a = pool.intern(Payload(0, {}, {1}));
  CHECK(code_of([&] { pool.intern(Payload(1, {a, UniqueId{1}})); }) == Errc::invalid_child);
  CHECK(pool.size() == 1);
}

TEST_CASE("payload capacity is bounded") {
  std::vector<UniqueId> four(4);
  CHECK(code_of([&] { Payload(0, four, {}); }) == Errc::usage);
}

TEST_CASE("hash_payload is shallow and deterministic") {
  Payload p(1, {UniqueId{4}, UniqueId{9}}, {3});
  CHECK(hash_payload(p) == hash_payload(Payload(1, {UniqueId{4}, UniqueId{9}}, {3})));

  // a hash collision would be tolerated; equality must still tell them apart
  Payload q(1, {UniqueId{4}, UniqueId{10}}, {3});
  CHECK_FALSE(p == q);
  CHECK(hash_payload(Payload(1, {UniqueId{3}}, {})) != hash_payload(Payload(1, {}, {3})));
}

TEST_CASE("hash collisions over 1e5 random distinct payloads stay below 1%") {
  std::mt19937_64 rng(42);
  std::unordered_set<Payload, PayloadHash> payloads;
  while (payloads.size() < 100'000) {
    std::uint64_t v = rng() % 64;
    payloads.insert(Payload(static_cast<std::uint8_t>(rng() % 3), {UniqueId{rng() % 50'000}, UniqueId{rng() % 50'000}}, {v}));
  }
  std::unordered_set<std::uint64_t> hashes;
  for (const Payload& p : payloads) hashes.insert(hash_payload(p));
  const double collision_rate = 1.0 - static_cast<double>(hashes.size()) / static_cast<double>(payloads.size());
  CHECK(collision_rate < 0.01);
}

TEST_CASE("scan_duplicates") {
  SUBCASE("empty pool") {
    Pool pool;
    CHECK(scan_duplicates(pool).empty());
  }
  SUBCASE("pool built through intern") {
    Pool pool;
    UniqueId a = pool.intern(Payload(0, {}, {1}));
    UniqueId b = pool.intern(Payload(0, {}, {2}));
    pool.intern(Payload(1, {a, b}));
    pool.intern(Payload(1, {a, b}));
    pool.intern(Payload(1, {b, a}));
    CHECK(scan_duplicates(pool).empty());
  }
  SUBCASE("an injected duplicate is reported once") {
    Pool pool;
    UniqueId a = pool.intern(Payload(0, {}, {1}));
    pool.intern(Payload(0, {}, {2}));
    UniqueId dup = pool.append_unchecked_for_testing(Payload(0, {}, {1}));
    auto pairs = scan_duplicates(pool);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == DuplicatePair{a, dup});
    CHECK_FALSE(pool.check_invariants());
  }
}

TEST_CASE("random interning workloads keep the pool invariants") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 20; ++round) {
    Pool pool;
    std::map<std::pair<std::vector<std::uint64_t>, std::uint64_t>, UniqueId> oracle;  // (children, attr) -> id
    PoolStats last = pool.stats();
    for (int i = 0; i < 2000; ++i) {
      std::vector<UniqueId> children;
      const std::size_t arity = pool.size() == 0 ? 0 : rng() % 3;
      for (std::size_t c = 0; c < arity; ++c) children.push_back(UniqueId{rng() % pool.size()});
      const std::uint64_t attr = rng() % 4;
      Payload p(static_cast<std::uint8_t>(arity), children, std::vector<std::uint64_t>{attr});
      UniqueId id = pool.intern(p);

      // freshness and identifier/structure agreement
      CHECK(id < pool.next());
      std::vector<std::uint64_t> key;
      for (UniqueId c : children) key.push_back(c.value);
      auto [it, fresh] = oracle.try_emplace({key, attr}, id);
      CHECK(it->second == id);
      if (fresh) CHECK(id.value == pool.size() - 1);

      // counters monotone
      const PoolStats& s = pool.stats();
      CHECK(s.node_count >= last.node_count);
      CHECK(s.intern_hits >= last.intern_hits);
      CHECK(s.intern_misses >= last.intern_misses);
      last = s;
    }
    CHECK(pool.size() == oracle.size());
    CHECK(pool.check_invariants());
    CHECK(scan_duplicates(pool).empty());
  }
}
