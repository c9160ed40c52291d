#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcons/intern.hpp"
#include "hcons/memo.hpp"

namespace hcons::bdd {

/// Variable x_i. Variables closer to the root have smaller indices.
using VarIndex = std::uint32_t;

/// Head variable reported for leaves; compares greater than every real variable.
inline constexpr VarIndex kLeafVar = std::numeric_limits<VarIndex>::max();

/// Handle on a diagram owned by one BddManager. Equality is identifier
/// equality, which by canonicity is equality of the represented functions.
struct BddRef {
  UniqueId id;

  friend constexpr auto operator<=>(BddRef, BddRef) = default;
};

inline constexpr BddRef kFalse{UniqueId{0}};
inline constexpr BddRef kTrue{UniqueId{1}};

struct BddNode {
  BddRef low;
  VarIndex var = 0;
  BddRef high;
};

enum class BinOp { And, Or, Xor };

std::string_view to_string(BinOp op) noexcept;
bool apply_bool(BinOp op, bool a, bool b) noexcept;

/// Partial assignment of variables to booleans.
class Env {
 public:
  Env() = default;

  /// Binds x1..x_nvars from the low bits of `mask` (bit i-1 holds x_i).
  static Env from_mask(VarIndex nvars, std::uint64_t mask);

  Env& set(VarIndex v, bool value);
  std::optional<bool> get(VarIndex v) const noexcept;

 private:
  std::vector<std::int8_t> values_;  // -1 unbound
};

struct BddOptions {
#ifdef NDEBUG
  static constexpr bool kCheckOrderDefault = false;
#else
  static constexpr bool kCheckOrderDefault = true;
#endif
  bool memoize = true;
  bool check_order = kCheckOrderDefault;
  std::size_t max_depth = DepthGuard::kDefaultMaxDepth;
};

/// Owns the node pool and the per-operation memo tables. BddRefs are only
/// meaningful for the manager that produced them.
class BddManager {
 public:
  explicit BddManager(BddOptions options = {});

  BddManager(const BddManager&) = delete;
  BddManager& operator=(const BddManager&) = delete;
  BddManager(BddManager&&) = delete;
  BddManager& operator=(BddManager&&) = delete;

  /// The diagram of the single variable v: (FALSE, v, TRUE).
  BddRef var(VarIndex v);

  /// Reduced constructor: returns `low` when low == high, otherwise the
  /// interned node. With check_order, rejects v >= head(low) or head(high).
  BddRef mk_node(BddRef low, VarIndex v, BddRef high);

  BddRef apply2(BinOp op, BddRef a, BddRef b);
  BddRef mk_and(BddRef a, BddRef b) { return apply2(BinOp::And, a, b); }
  BddRef mk_or(BddRef a, BddRef b) { return apply2(BinOp::Or, a, b); }
  BddRef mk_xor(BddRef a, BddRef b) { return apply2(BinOp::Xor, a, b); }
  BddRef mk_not(BddRef a);
  BddRef mk_ite(BddRef c, BddRef t, BddRef e);

  bool eval(BddRef a, const Env& env) const;
  bool is_tautology(BddRef a) const noexcept { return a == kTrue; }

  /// Number of distinct decision nodes reachable from `a`.
  std::size_t node_count(BddRef a) const;

  bool is_leaf(BddRef a) const noexcept { return a.id.value < 2; }
  BddNode node(BddRef a) const;
  VarIndex head_var(BddRef a) const;

  /// Checks reducedness and ordering of every node reachable from `a`.
  bool well_formed(BddRef a) const;

  const Pool& pool() const noexcept { return pool_; }
  const MemoTable<BddRef>& table(BinOp op) const noexcept;
  const MemoTable<BddRef>& not_table() const noexcept { return m_not_; }
  const MemoTable<BddRef>& ite_table() const noexcept { return m_ite_; }
  std::vector<std::pair<std::string, MemoStats>> memo_stats() const;

  /// Empties every memo table and zeroes their counters.
  void reset_memo();
  void set_memoize(bool on) noexcept;
  const BddOptions& options() const noexcept { return options_; }

 private:
  struct LeafRules;

  BddRef meld(const LeafRules& rules, MemoTable<BddRef>& table, BddRef a, BddRef b);
  MemoTable<BddRef>& table_for(BinOp op) noexcept;
  void check_valid(BddRef a) const;

  BddOptions options_;
  Pool pool_;
  DepthGuard guard_;
  MemoTable<BddRef> m_and_{2};
  MemoTable<BddRef> m_or_{2};
  MemoTable<BddRef> m_xor_{2};
  MemoTable<BddRef> m_not_{1};
  MemoTable<BddRef> m_ite_{3};
};

}  // namespace hcons::bdd
