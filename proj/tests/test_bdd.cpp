#include <algorithm>
#include <random>

#include "doctest.h"
#include "hcons/bdd.hpp"
#include "hcons/error.hpp"
#include "hcons/formula.hpp"
#include "support.hpp"

using namespace hcons;
using namespace hcons::bdd;
using formula::compile;
using formula::Formula;
using testing::brute_table;
using testing::random_formula;

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

BddOptions checked() {
  BddOptions o;
  o.check_order = true;
  return o;
}

// random diagram over at most `nvars` variables, together with its formula
std::pair<Formula, BddRef> random_bdd(BddManager& m, std::mt19937_64& rng, VarIndex nvars, int depth = 5) {
  Formula f = random_formula(rng, nvars, depth);
  return {f, compile(m, f)};
}

}  // namespace

TEST_CASE("leaves are preallocated") {
  BddManager m;
  CHECK(kFalse.id.value == 0);
  CHECK(kTrue.id.value == 1);
  CHECK(m.pool().size() == 2);
  CHECK(m.is_leaf(kTrue));
  CHECK(m.head_var(kFalse) == kLeafVar);
}

TEST_CASE("mk_node") {
  BddManager m(checked());
  BddRef x = m.var(3);
  auto before = m.pool().size();
  CHECK(m.mk_node(x, 1, x) == x);
  CHECK(m.pool().size() == before);

  BddRef a = m.mk_node(kTrue, 2, kFalse);
  CHECK(m.mk_node(kTrue, 2, kFalse) == a);
  BddNode n = m.node(a);
  CHECK(n.low == kTrue);
  CHECK(n.var == 2);
  CHECK(n.high == kFalse);

  CHECK(code_of([&] { m.mk_node(x, 3, kTrue); }) == Errc::ill_ordered);
  CHECK(code_of([&] { m.mk_node(kTrue, 5, x); }) == Errc::ill_ordered);
  CHECK(code_of([&] { m.mk_node(BddRef{UniqueId{999}}, 1, kTrue); }) == Errc::invalid_child);
}

TEST_CASE("the two-variable example function f = T iff x2 = 0") {
  BddManager m;
  BddRef f = compile(m, !Formula::var(2));
  BddNode n = m.node(f);
  CHECK(n.low == kTrue);
  CHECK(n.var == 2);
  CHECK(n.high == kFalse);
  CHECK(m.node_count(f) == 1);
  CHECK(m.eval(f, Env().set(2, true)) == false);
  CHECK(m.eval(f, Env().set(1, true).set(2, false)) == true);
}

TEST_CASE("leaf rewrite rules") {
  BddManager m;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    BddRef b = random_bdd(m, rng, 6).second;
    CHECK(m.mk_and(kTrue, b) == b);
    CHECK(m.mk_and(b, kTrue) == b);
    CHECK(m.mk_and(kFalse, b) == kFalse);
    CHECK(m.mk_and(b, kFalse) == kFalse);
    CHECK(m.mk_or(kTrue, b) == kTrue);
    CHECK(m.mk_or(kFalse, b) == b);
    CHECK(m.mk_xor(kFalse, b) == b);
    CHECK(m.mk_xor(kTrue, b) == m.mk_not(b));
  }
}

TEST_CASE("xor of a diagram with itself is FALSE") {
  BddManager m;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    auto [f, a] = random_bdd(m, rng, 8);
    CHECK(m.mk_xor(a, a) == kFalse);
    // truth-table view of the same fact
    auto t = brute_table(f ^ f, 8);
    CHECK(std::none_of(t.begin(), t.end(), [](bool v) { return v; }));
  }
}

TEST_CASE("binary operations agree with boolean semantics pointwise") {
  BddManager m;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    auto [f, a] = random_bdd(m, rng, 8);
    auto [g, b] = random_bdd(m, rng, 8);
    for (BinOp op : {BinOp::And, BinOp::Or, BinOp::Xor}) {
      BddRef r = m.apply2(op, a, b);
      CHECK(m.well_formed(r));
      for (std::uint64_t env = 0; env < 256; ++env) {
        Env e = Env::from_mask(8, env);
        REQUIRE(m.eval(r, e) == apply_bool(op, m.eval(a, e), m.eval(b, e)));
      }
    }
  }
}

TEST_CASE("mk_not") {
  BddManager m;
  CHECK(m.mk_not(kTrue) == kFalse);
  CHECK(m.mk_not(kFalse) == kTrue);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    auto [f, a] = random_bdd(m, rng, 8);
    BddRef na = m.mk_not(a);
    CHECK(m.mk_not(na) == a);
    auto t = brute_table(f, 8);
    for (std::uint64_t env = 0; env < 256; ++env) REQUIRE(m.eval(na, Env::from_mask(8, env)) == !t[env]);
  }
}

TEST_CASE("mk_ite") {
  BddManager m;
  std::mt19937_64 rng(5);
  BddRef c0 = m.var(1), t0 = m.var(2), e0 = m.var(3);
  CHECK(m.mk_ite(kTrue, t0, e0) == t0);
  CHECK(m.mk_ite(kFalse, t0, e0) == e0);
  CHECK(m.mk_ite(c0, kTrue, kFalse) == c0);

  for (int i = 0; i < 200; ++i) {
    BddRef c = random_bdd(m, rng, 6).second;
    BddRef t = random_bdd(m, rng, 6).second;
    BddRef e = random_bdd(m, rng, 6).second;
    BddRef direct = m.mk_ite(c, t, e);
    BddRef derived = m.mk_or(m.mk_and(c, t), m.mk_and(m.mk_not(c), e));
    CHECK(direct == derived);
    CHECK(m.mk_ite(c, kTrue, kFalse) == c);
  }
}

TEST_CASE("eval") {
  BddManager m;
  CHECK(m.eval(kTrue, Env{}));
  CHECK_FALSE(m.eval(kFalse, Env{}));
  BddRef f = m.mk_and(m.var(1), m.var(4));
  CHECK(code_of([&] { (void)m.eval(f, Env().set(1, true)); }) == Errc::unbound_variable);
  // x4 is never reached when x1 is false
  CHECK_FALSE(m.eval(f, Env().set(1, false)));

  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    VarIndex nvars = 1 + rng() % 8;
    auto [g, a] = random_bdd(m, rng, nvars);
    auto table = brute_table(g, nvars);
    for (std::uint64_t env = 0; env < table.size(); ++env) REQUIRE(m.eval(a, Env::from_mask(nvars, env)) == table[env]);
  }
}

TEST_CASE("is_tautology") {
  BddManager m;
  CHECK(m.is_tautology(kTrue));
  CHECK(m.is_tautology(compile(m, Formula::var(1) | !Formula::var(1))));
  CHECK_FALSE(m.is_tautology(compile(m, Formula::var(1))));
  CHECK_FALSE(m.is_tautology(kFalse));
}

TEST_CASE("node_count") {
  BddManager m;
  CHECK(m.node_count(kTrue) == 0);
  Formula chain = Formula::var(1) ^ Formula::var(2) ^ Formula::var(3);
  const std::size_t oracle = testing::robdd_size_oracle(brute_table(chain, 3), 3);
  CHECK(oracle == 5);
  CHECK(m.node_count(compile(m, chain)) == oracle);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto [f, a] = random_bdd(m, rng, 7);
    CHECK(m.node_count(a) == testing::robdd_size_oracle(brute_table(f, 7), 7));
  }
}

TEST_CASE("canonicity: equal truth tables iff equal identifiers") {
  BddManager m;
  std::mt19937_64 rng(8);
  int equal_pairs = 0;
  for (int i = 0; i < 400; ++i) {
    VarIndex nvars = 1 + rng() % 4;  // few variables so equal functions actually occur
    Formula f = random_formula(rng, nvars, 4);
    Formula g = random_formula(rng, nvars, 4);
    bool same = brute_table(f, nvars) == brute_table(g, nvars);
    equal_pairs += same;
    CHECK(same == (compile(m, f) == compile(m, g)));
  }
  CHECK(equal_pairs > 0);
}

TEST_CASE("reduced and ordered") {
  BddManager m(checked());
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) CHECK(m.well_formed(random_bdd(m, rng, 8, 6).second));
}

TEST_CASE("memoized melding stays within (|a|+1)(|b|+1) distinct sub-problems") {
  BddManager m;
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    BddRef a = random_bdd(m, rng, 8, 6).second;
    BddRef b = random_bdd(m, rng, 8, 6).second;
    const std::size_t bound = (m.node_count(a) + 1) * (m.node_count(b) + 1);
    for (BinOp op : {BinOp::And, BinOp::Or, BinOp::Xor}) {
      m.reset_memo();
      m.apply2(op, a, b);
      CHECK(m.table(op).stats().body_evaluations <= bound);
    }
  }
}

TEST_CASE("results do not depend on memo tables") {
  BddManager m;
  std::mt19937_64 rng(11);
  std::vector<std::pair<Formula, BddRef>> memoized;
  for (int i = 0; i < 100; ++i) memoized.push_back(random_bdd(m, rng, 8));
  m.set_memoize(false);
  for (const auto& [f, r] : memoized) CHECK(compile(m, f) == r);
  CHECK(m.table(BinOp::And).stats().hits > 0);  // hits only from the memoized phase

  BddManager plain(BddOptions{.memoize = false});
  BddManager memo;
  std::mt19937_64 r1(12), r2(12);
  for (int i = 0; i < 50; ++i) {
    Formula f = random_formula(r1, 8, 5), g = random_formula(r2, 8, 5);
    // compare across managers through their truth tables
    BddRef a = compile(plain, f), b = compile(memo, g);
    CHECK(plain.node_count(a) == memo.node_count(b));
  }
}

TEST_CASE("operations never alter existing nodes") {
  BddManager m;
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) random_bdd(m, rng, 8);
  std::vector<Payload> snapshot;
  for (std::uint64_t id = 0; id < m.pool().size(); ++id) snapshot.push_back(m.pool().resolve(UniqueId{id}));
  for (int i = 0; i < 50; ++i) {
    auto [f, a] = random_bdd(m, rng, 8);
    m.mk_ite(a, m.var(2), m.mk_not(a));
  }
  REQUIRE(m.pool().size() >= snapshot.size());
  for (std::uint64_t id = 0; id < snapshot.size(); ++id) CHECK(m.pool().resolve(UniqueId{id}) == snapshot[id]);
  CHECK(m.pool().check_invariants());
  CHECK(scan_duplicates(m.pool()).empty());
}

TEST_CASE("depth guard surfaces as depth-exceeded") {
  BddOptions o;
  o.max_depth = 3;
  BddManager m(o);
  BddRef chain_a = m.mk_node(kFalse, 1, m.mk_node(kFalse, 3, m.mk_node(kFalse, 5, kTrue)));
  BddRef chain_b = m.mk_node(kFalse, 2, m.mk_node(kFalse, 4, m.mk_node(kFalse, 6, kTrue)));
  CHECK(code_of([&] { m.mk_and(chain_a, chain_b); }) == Errc::depth_exceeded);
}
