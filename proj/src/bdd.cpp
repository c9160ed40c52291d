#include "hcons/bdd.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "hcons/error.hpp"

namespace hcons::bdd {

namespace {

constexpr std::uint8_t kLeafTag = 0;
constexpr std::uint8_t kNodeTag = 1;

}  // namespace

std::string_view to_string(BinOp op) noexcept {
  switch (op) {
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
    case BinOp::Xor: return "xor";
  }
  return "?";
}

bool apply_bool(BinOp op, bool a, bool b) noexcept {
  switch (op) {
    case BinOp::And: return a && b;
    case BinOp::Or: return a || b;
    case BinOp::Xor: return a != b;
  }
  return false;
}

Env Env::from_mask(VarIndex nvars, std::uint64_t mask) {
  Env env;
  env.values_.assign(static_cast<std::size_t>(nvars) + 1, -1);
  for (VarIndex i = 1; i <= nvars; ++i) env.values_[i] = static_cast<std::int8_t>((mask >> (i - 1)) & 1U);
  return env;
}

Env& Env::set(VarIndex v, bool value) {
  if (v >= values_.size()) values_.resize(static_cast<std::size_t>(v) + 1, -1);
  values_[v] = value ? 1 : 0;
  return *this;
}

std::optional<bool> Env::get(VarIndex v) const noexcept {
  if (v >= values_.size() || values_[v] < 0) return std::nullopt;
  return values_[v] == 1;
}

// Leaf rewrite rules for one binary operation. Returns nothing when neither
// argument is a leaf the rules cover; the operation then melds the two nodes.
// Every operation here is commutative, so only one orientation is written out.
struct BddManager::LeafRules {
  std::optional<BddRef> (*leaf)(BddManager&, BddRef, BddRef);
  bool commutative;
};

namespace {

std::optional<BddRef> and_leaf(BddManager&, BddRef a, BddRef b) {
  if (a == kFalse || b == kFalse) return kFalse;
  if (a == kTrue) return b;
  if (b == kTrue) return a;
  return std::nullopt;
}

std::optional<BddRef> or_leaf(BddManager&, BddRef a, BddRef b) {
  if (a == kTrue || b == kTrue) return kTrue;
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  return std::nullopt;
}

// T xor a allocates: the complement has to be built.
std::optional<BddRef> xor_leaf(BddManager& m, BddRef a, BddRef b) {
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  if (a == kTrue) return m.mk_not(b);
  if (b == kTrue) return m.mk_not(a);
  return std::nullopt;
}

}  // namespace

BddManager::BddManager(BddOptions options) : options_(options), guard_(options.max_depth) {
  pool_.preallocate(Payload(kLeafTag, {}, {0}));
  pool_.preallocate(Payload(kLeafTag, {}, {1}));
  set_memoize(options_.memoize);
}

void BddManager::check_valid(BddRef a) const {
  if (!pool_.contains(a.id)) raise(Errc::invalid_child, "bdd " + std::to_string(a.id.value) + " not in manager");
}

BddNode BddManager::node(BddRef a) const {
  const Payload& p = pool_.resolve(a.id);
  if (p.tag() != kNodeTag) raise(Errc::usage, "leaf has no decision node");
  return BddNode{BddRef{p.child(0)}, static_cast<VarIndex>(p.attr(0)), BddRef{p.child(1)}};
}

VarIndex BddManager::head_var(BddRef a) const {
  if (is_leaf(a)) return kLeafVar;
  return static_cast<VarIndex>(pool_.resolve(a.id).attr(0));
}

BddRef BddManager::var(VarIndex v) { return mk_node(kFalse, v, kTrue); }

BddRef BddManager::mk_node(BddRef low, VarIndex v, BddRef high) {
  check_valid(low);
  check_valid(high);
  if (low == high) return low;
  if (v == kLeafVar) raise(Errc::range, "variable index reserved for leaves");
  if (options_.check_order && (v >= head_var(low) || v >= head_var(high))) {
    raise(Errc::ill_ordered, "x" + std::to_string(v) + " above x" + std::to_string(head_var(low)) + "/x" +
                                 std::to_string(head_var(high)));
  }
  return BddRef{pool_.intern(Payload(kNodeTag, {low.id, high.id}, {v}))};
}

MemoTable<BddRef>& BddManager::table_for(BinOp op) noexcept {
  switch (op) {
    case BinOp::And: return m_and_;
    case BinOp::Or: return m_or_;
    case BinOp::Xor: return m_xor_;
  }
  return m_and_;
}

const MemoTable<BddRef>& BddManager::table(BinOp op) const noexcept {
  return const_cast<BddManager*>(this)->table_for(op);
}

BddRef BddManager::apply2(BinOp op, BddRef a, BddRef b) {
  static constexpr LeafRules kAnd{&and_leaf, true};
  static constexpr LeafRules kOr{&or_leaf, true};
  static constexpr LeafRules kXor{&xor_leaf, true};
  check_valid(a);
  check_valid(b);
  switch (op) {
    case BinOp::And: return meld(kAnd, m_and_, a, b);
    case BinOp::Or: return meld(kOr, m_or_, a, b);
    case BinOp::Xor: return meld(kXor, m_xor_, a, b);
  }
  return kFalse;
}

// Simultaneous traversal of two diagrams in variable order. The node with the
// smaller head variable is decomposed; equal heads decompose both.
BddRef BddManager::meld(const LeafRules& rules, MemoTable<BddRef>& table, BddRef a, BddRef b) {
  auto step = [this, &rules](auto& self, BddRef x, BddRef y) -> BddRef {
    if (auto r = rules.leaf(*this, x, y)) return *r;
    if (rules.commutative && y < x) std::swap(x, y);
    return self(MemoKey{x.id.value, y.id.value});
  };
  auto fix = memo_fix(
      table,
      [this, &step](auto& self, const MemoKey& key) -> BddRef {
        BddRef x{UniqueId{key[0]}}, y{UniqueId{key[1]}};
        BddNode nx = node(x), ny = node(y);
        if (nx.var == ny.var) {
          BddRef lo = step(self, nx.low, ny.low);
          BddRef hi = step(self, nx.high, ny.high);
          return mk_node(lo, nx.var, hi);
        }
        if (nx.var < ny.var) {
          BddRef lo = step(self, nx.low, y);
          BddRef hi = step(self, nx.high, y);
          return mk_node(lo, nx.var, hi);
        }
        BddRef lo = step(self, x, ny.low);
        BddRef hi = step(self, x, ny.high);
        return mk_node(lo, ny.var, hi);
      },
      guard_);
  return step(fix, a, b);
}

BddRef BddManager::mk_not(BddRef a) {
  check_valid(a);
  auto fix = memo_fix(
      m_not_,
      [this](auto& self, const MemoKey& key) -> BddRef {
        BddNode n = node(BddRef{UniqueId{key[0]}});
        auto neg = [&self](BddRef x) {
          if (x == kTrue) return kFalse;
          if (x == kFalse) return kTrue;
          return self(MemoKey{x.id.value});
        };
        BddRef lo = neg(n.low);
        BddRef hi = neg(n.high);
        return mk_node(lo, n.var, hi);
      },
      guard_);
  if (a == kTrue) return kFalse;
  if (a == kFalse) return kTrue;
  return fix(MemoKey{a.id.value});
}

BddRef BddManager::mk_ite(BddRef c, BddRef t, BddRef e) {
  check_valid(c);
  check_valid(t);
  check_valid(e);
  auto terminal = [](BddRef c, BddRef t, BddRef e) -> std::optional<BddRef> {
    if (c == kTrue) return t;
    if (c == kFalse) return e;
    if (t == e) return t;
    if (t == kTrue && e == kFalse) return c;
    return std::nullopt;
  };
  auto cofactors = [this](BddRef x, VarIndex v) -> std::pair<BddRef, BddRef> {
    if (head_var(x) != v) return {x, x};
    BddNode n = node(x);
    return {n.low, n.high};
  };
  auto fix = memo_fix(
      m_ite_,
      [&](auto& self, const MemoKey& key) -> BddRef {
        BddRef kc{UniqueId{key[0]}}, kt{UniqueId{key[1]}}, ke{UniqueId{key[2]}};
        VarIndex v = std::min({head_var(kc), head_var(kt), head_var(ke)});
        auto [c0, c1] = cofactors(kc, v);
        auto [t0, t1] = cofactors(kt, v);
        auto [e0, e1] = cofactors(ke, v);
        auto branch = [&](BddRef bc, BddRef bt, BddRef be) {
          if (auto r = terminal(bc, bt, be)) return *r;
          return self(MemoKey{bc.id.value, bt.id.value, be.id.value});
        };
        BddRef lo = branch(c0, t0, e0);
        BddRef hi = branch(c1, t1, e1);
        return mk_node(lo, v, hi);
      },
      guard_);
  if (auto r = terminal(c, t, e)) return *r;
  return fix(MemoKey{c.id.value, t.id.value, e.id.value});
}

bool BddManager::eval(BddRef a, const Env& env) const {
  check_valid(a);
  while (!is_leaf(a)) {
    BddNode n = node(a);
    auto value = env.get(n.var);
    if (!value) raise(Errc::unbound_variable, "x" + std::to_string(n.var));
    a = *value ? n.high : n.low;
  }
  return a == kTrue;
}

std::size_t BddManager::node_count(BddRef a) const {
  check_valid(a);
  std::unordered_set<UniqueId> seen;
  std::vector<BddRef> stack{a};
  while (!stack.empty()) {
    BddRef x = stack.back();
    stack.pop_back();
    if (is_leaf(x) || !seen.insert(x.id).second) continue;
    BddNode n = node(x);
    stack.push_back(n.low);
    stack.push_back(n.high);
  }
  return seen.size();
}

bool BddManager::well_formed(BddRef a) const {
  check_valid(a);
  std::unordered_set<UniqueId> seen;
  std::vector<BddRef> stack{a};
  while (!stack.empty()) {
    BddRef x = stack.back();
    stack.pop_back();
    if (is_leaf(x) || !seen.insert(x.id).second) continue;
    BddNode n = node(x);
    if (n.low == n.high) return false;
    if (n.var >= head_var(n.low) || n.var >= head_var(n.high)) return false;
    stack.push_back(n.low);
    stack.push_back(n.high);
  }
  return true;
}

std::vector<std::pair<std::string, MemoStats>> BddManager::memo_stats() const {
  return {{"and", m_and_.stats()}, {"or", m_or_.stats()}, {"xor", m_xor_.stats()},
          {"not", m_not_.stats()}, {"ite", m_ite_.stats()}};
}

void BddManager::reset_memo() {
  for (auto* t : {&m_and_, &m_or_, &m_xor_, &m_not_, &m_ite_}) {
    t->clear();
    t->reset_stats();
  }
}

void BddManager::set_memoize(bool on) noexcept {
  options_.memoize = on;
  for (auto* t : {&m_and_, &m_or_, &m_xor_, &m_not_, &m_ite_}) t->set_enabled(on);
}

}  // namespace hcons::bdd
