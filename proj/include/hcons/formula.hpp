#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcons/bdd.hpp"

namespace hcons::formula {

using bdd::VarIndex;

enum class Op : std::uint8_t { Const, Var, Not, And, Or, Xor, Implies, Iff };

/// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  static Formula constant(bool value);
  static Formula var(VarIndex index);  // 1-based
  static Formula unary(Op op, Formula operand);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  Op op() const noexcept;
  bool value() const noexcept;
  VarIndex index() const noexcept;
  const Formula& lhs() const noexcept;  // also the operand of Not
  const Formula& rhs() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula operator!(Formula f);
Formula operator&(Formula f, Formula g);
Formula operator|(Formula f, Formula g);
Formula operator^(Formula f, Formula g);
Formula implies(Formula f, Formula g);
Formula iff(Formula f, Formula g);

/// Largest variable index occurring in `f`; 0 for closed formulas.
VarIndex max_var(const Formula& f);

/// Grammar, loosest to tightest: `<->` and `->` (both right-associative),
/// then `|`, `^`, `&` (left-associative), then prefix `!`. Atoms are `x<n>`
/// with n >= 1, the constants `0` and `1`, and parenthesised formulas. `#`
/// comments run to end of line. Errors report line and column.
Formula parse(std::string_view text);

/// Prints with the minimum parentheses needed for parse() to rebuild the same tree.
std::string to_string(const Formula& f);

bool eval_formula(const Formula& f, const bdd::Env& env);

/// Bottom-up translation to a canonical diagram. Implies a b is (not a) or b,
/// Iff is the complement of Xor.
bdd::BddRef compile(bdd::BddManager& mgr, const Formula& f);

/// x1 <-> (x2 <-> ... (xn <-> (x1 <-> ... (x(n-1) <-> xn)))), right-nested.
Formula urquhart(unsigned n);

/// n+1 pigeons into n holes; p(i,j) = x((i-1)*n + j).
/// (AND_i OR_j p(i,j)) -> OR_j OR_{i<i'} (p(i,j) & p(i',j)).
Formula pigeonhole(unsigned n);

inline constexpr VarIndex kMaxOracleVars = 24;

/// Packed truth table: bit a of the table is the value under the assignment
/// whose bit i-1 gives x_i. Tables for fewer than 6 variables occupy the low
/// 2^n bits of a single word; the rest is zero.
struct TruthTable {
  VarIndex nvars = 0;
  std::vector<std::uint64_t> words;

  bool at(std::uint64_t assignment) const noexcept { return (words[assignment >> 6] >> (assignment & 63)) & 1U; }
  friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

TruthTable truth_table(const Formula& f, VarIndex nvars);

struct EquivResult {
  bool equivalent = false;
  std::optional<std::uint64_t> witness;  // an assignment on which f and g differ
};

/// Exhaustive comparison over all 2^nvars assignments. nvars <= kMaxOracleVars.
EquivResult truth_table_equiv(const Formula& f, const Formula& g, VarIndex nvars);

}  // namespace hcons::formula
