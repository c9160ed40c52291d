#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "hcons/error.hpp"
#include "hcons/intern.hpp"

namespace hcons {

/// Fixed-arity tuple of up to four identifiers or small scalars.
class MemoKey {
 public:
  static constexpr std::size_t kMaxArity = 4;

  MemoKey(std::initializer_list<std::uint64_t> parts) {
    if (parts.size() == 0 || parts.size() > kMaxArity) raise(Errc::usage, "memo key arity out of range");
    std::size_t i = 0;
    for (std::uint64_t p : parts) parts_[i++] = p;
    arity_ = static_cast<std::uint8_t>(parts.size());
  }

  std::size_t arity() const noexcept { return arity_; }
  std::uint64_t operator[](std::size_t i) const noexcept { return parts_[i]; }

  friend bool operator==(const MemoKey&, const MemoKey&) = default;

 private:
  std::array<std::uint64_t, kMaxArity> parts_{};
  std::uint8_t arity_ = 0;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ k.arity();
    for (std::size_t i = 0; i < k.arity(); ++i) {
      h ^= k[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct MemoStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t body_evaluations = 0;
};

/// Map from fixed-arity keys to results. A binding, once made, may only be
/// re-made with the same value; anything else means the memoized function is
/// not pure and is reported as a contract violation.
///
/// A disabled table behaves as if always empty: every get() misses and put()
/// stores nothing. Used to check that memoization does not change results.
template <class Value>
class MemoTable {
 public:
  static constexpr std::size_t kDefaultCapacity = 16;

  explicit MemoTable(std::size_t arity, std::size_t initial_capacity = kDefaultCapacity) : arity_(arity) {
    if (arity == 0 || arity > MemoKey::kMaxArity) raise(Errc::usage, "memo table arity out of range");
    entries_.reserve(initial_capacity);
  }

  std::optional<Value> get(const MemoKey& key) {
    check_arity(key);
    if (enabled_) {
      if (auto it = entries_.find(key); it != entries_.end()) {
        ++stats_.hits;
        return it->second;
      }
    }
    ++stats_.misses;
    return std::nullopt;
  }

  void put(const MemoKey& key, const Value& value) {
    check_arity(key);
    if (!enabled_) return;
    auto [it, inserted] = entries_.try_emplace(key, value);
    if (!inserted && !(it->second == value)) {
      raise(Errc::contract_violation, "memo entry rebound to a different value");
    }
  }

  /// Drops every entry. Counters keep running.
  void clear() { entries_.clear(); }
  void reset_stats() noexcept { stats_ = {}; }

  void set_enabled(bool on) noexcept { enabled_ = on; }
  bool enabled() const noexcept { return enabled_; }

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const MemoStats& stats() const noexcept { return stats_; }

  void note_body_evaluation() noexcept { ++stats_.body_evaluations; }

 private:
  void check_arity(const MemoKey& key) const {
    if (key.arity() != arity_) {
      raise(Errc::usage, "memo key arity " + std::to_string(key.arity()) + " on table of arity " +
                             std::to_string(arity_));
    }
  }

  std::unordered_map<MemoKey, Value, MemoKeyHash> entries_;
  std::size_t arity_;
  MemoStats stats_;
  bool enabled_ = true;
};

/// Tracks nesting of memoized bodies. Shared by all fixpoints of one manager so
/// that mutually recursive operations are bounded together.
class DepthGuard {
 public:
  static constexpr std::size_t kDefaultMaxDepth = 100'000;

  explicit DepthGuard(std::size_t max_depth = kDefaultMaxDepth) : max_depth_(max_depth) {}

  class Frame {
   public:
    explicit Frame(DepthGuard& g) : guard_(g) {
      if (++guard_.depth_ > guard_.max_depth_) {
        --guard_.depth_;
        raise(Errc::depth_exceeded, "recursion deeper than " + std::to_string(guard_.max_depth_) + " frames");
      }
    }
    ~Frame() { --guard_.depth_; }
    Frame(const Frame&) = delete;
    Frame& operator=(const Frame&) = delete;

   private:
    DepthGuard& guard_;
  };

  std::size_t depth() const noexcept { return depth_; }
  std::size_t max_depth() const noexcept { return max_depth_; }
  void set_max_depth(std::size_t d) noexcept { max_depth_ = d; }

 private:
  std::size_t depth_ = 0;
  std::size_t max_depth_;
};

/// Memoizing fixpoint. `body(self, key)` computes the result for `key`,
/// calling `self(k)` for recursive sub-problems; each distinct key runs the
/// body at most once per table lifetime.
///
/// Termination of self-calls is the caller's obligation; the depth guard turns
/// a runaway recursion into Errc::depth_exceeded instead of a stack overflow.
template <class Value, class Body>
class MemoFix {
 public:
  MemoFix(MemoTable<Value>& table, Body body, DepthGuard& guard)
      : table_(table), body_(std::move(body)), guard_(&guard) {}
  MemoFix(MemoTable<Value>& table, Body body, std::size_t max_depth)
      : table_(table), body_(std::move(body)), own_guard_(std::in_place, max_depth), guard_(&*own_guard_) {}

  MemoFix(const MemoFix&) = delete;
  MemoFix& operator=(const MemoFix&) = delete;

  Value operator()(const MemoKey& key) {
    if (auto hit = table_.get(key)) return *hit;
    DepthGuard::Frame frame(*guard_);
    table_.note_body_evaluation();
    Value result = body_(*this, key);
    table_.put(key, result);
    return result;
  }

 private:
  MemoTable<Value>& table_;
  Body body_;
  std::optional<DepthGuard> own_guard_;
  DepthGuard* guard_;
};

template <class Value, class Body>
MemoFix<Value, Body> memo_fix(MemoTable<Value>& table, Body body, DepthGuard& guard) {
  return MemoFix<Value, Body>(table, std::move(body), guard);
}

template <class Value, class Body>
MemoFix<Value, Body> memo_fix(MemoTable<Value>& table, Body body,
                              std::size_t max_depth = DepthGuard::kDefaultMaxDepth) {
  return MemoFix<Value, Body>(table, std::move(body), max_depth);
}

}  // namespace hcons
