#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcons/intern.hpp"
#include "hcons/memo.hpp"

namespace hcons::lambda {

/// Hash-consed de Bruijn term; equality is identifier equality.
struct TermRef {
  UniqueId id;

  friend constexpr auto operator<=>(TermRef, TermRef) = default;
};

enum class TermKind : std::uint8_t { Var, App, Abs };

/// Decoded view of one term node. Var uses `index`; App uses `fn` and `arg`;
/// Abs uses `body`.
struct TermNode {
  TermKind kind;
  std::uint64_t index = 0;
  TermRef fn{};
  TermRef arg{};
  TermRef body{};
};

struct LambdaOptions {
  bool memoize = true;
  std::uint64_t max_steps = 10'000'000;  // beta steps per top-level hnf/nf call
  std::size_t max_depth = DepthGuard::kDefaultMaxDepth;
};

/// Term pool plus memo tables for lift, subst, hnf and nf. Every TermRef it
/// hands out is the pool's canonical representative.
///
/// hnf and nf use normal-order (leftmost-outermost) reduction; they terminate
/// on every term that has a normal form, up to max_steps beta steps.
class LambdaManager {
 public:
  explicit LambdaManager(LambdaOptions options = {});

  LambdaManager(const LambdaManager&) = delete;
  LambdaManager& operator=(const LambdaManager&) = delete;

  TermRef mk_var(std::uint64_t index);
  TermRef mk_app(TermRef fn, TermRef arg);
  TermRef mk_abs(TermRef body);

  TermNode node(TermRef t) const;

  /// Adds n to every variable index >= k.
  TermRef lifti(std::uint64_t n, TermRef t, std::uint64_t k);
  TermRef lift(std::uint64_t n, TermRef t) { return lifti(n, t, 0); }

  /// Replaces Var n in t by w (lifted by n), decrementing indices above n.
  TermRef subst(TermRef w, std::uint64_t n, TermRef t);

  TermRef hnf(TermRef t);
  TermRef nf(TermRef t);

  // Church encodings.
  TermRef church(std::uint64_t n);
  TermRef church_list(std::span<const std::uint64_t> xs);
  TermRef church_add(TermRef a, TermRef b);
  TermRef church_mul(TermRef a, TermRef b);
  std::uint64_t decode_church(TermRef t) const;
  std::vector<std::uint64_t> decode_list(TermRef t) const;

  /// Closed quicksort over Church lists of Church numerals, built with
  /// Turing's fixed-point combinator. Cached after the first call.
  TermRef quicksort_term();

  /// nf(quicksort_term xs), decoded.
  std::vector<std::uint64_t> sort(std::span<const std::uint64_t> xs);

  const Pool& pool() const noexcept { return pool_; }
  std::vector<std::pair<std::string, MemoStats>> memo_stats() const;
  std::uint64_t total_steps() const noexcept { return total_steps_; }
  void reset_memo();
  void set_memoize(bool on) noexcept;
  const LambdaOptions& options() const noexcept { return options_; }

 private:
  void check_valid(TermRef t) const;
  void count_step();
  TermRef hnf_rec(TermRef t);
  TermRef nf_rec(TermRef t);

  template <class Fn>
  TermRef top_level(Fn fn);

  LambdaOptions options_;
  Pool pool_;
  DepthGuard guard_;
  MemoTable<TermRef> m_lifti_{3};
  MemoTable<TermRef> m_subst_{3};
  MemoTable<TermRef> m_hnf_{1};
  MemoTable<TermRef> m_nf_{1};
  std::uint64_t steps_ = 0;
  std::uint64_t total_steps_ = 0;
  bool quicksort_built_ = false;
  TermRef quicksort_{};
};

/// De Bruijn rendering, e.g. "\\ \\ (1 (1 0))". For diagnostics.
std::string to_string(const LambdaManager& m, TermRef t);

}  // namespace hcons::lambda
