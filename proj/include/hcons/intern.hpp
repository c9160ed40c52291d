#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hcons {

/// Names one interned node. Only meaningful relative to the pool that issued it.
struct UniqueId {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(UniqueId, UniqueId) = default;
};

/// Structured content of one node: a constructor tag, child identifiers and
/// scalar attributes. Storage is inline; children and attributes are bounded.
class Payload {
 public:
  static constexpr std::size_t kMaxChildren = 3;
  static constexpr std::size_t kMaxAttrs = 2;

  Payload() = default;
  Payload(std::uint8_t tag, std::span<const UniqueId> children, std::span<const std::uint64_t> attrs);
  Payload(std::uint8_t tag, std::initializer_list<UniqueId> children,
          std::initializer_list<std::uint64_t> attrs = {})
      : Payload(tag, std::span<const UniqueId>(children.begin(), children.size()),
                std::span<const std::uint64_t>(attrs.begin(), attrs.size())) {}

  std::uint8_t tag() const noexcept { return tag_; }
  std::span<const UniqueId> children() const noexcept { return {children_.data(), child_count_}; }
  std::span<const std::uint64_t> attrs() const noexcept { return {attrs_.data(), attr_count_}; }

  UniqueId child(std::size_t i) const noexcept { return children_[i]; }
  std::uint64_t attr(std::size_t i) const noexcept { return attrs_[i]; }

  // Structural comparison: tag, then children by identifier, then attributes.
  friend bool operator==(const Payload& a, const Payload& b) noexcept;
  friend std::strong_ordering operator<=>(const Payload& a, const Payload& b) noexcept;

 private:
  std::array<UniqueId, kMaxChildren> children_{};
  std::array<std::uint64_t, kMaxAttrs> attrs_{};
  std::uint8_t tag_ = 0;
  std::uint8_t child_count_ = 0;
  std::uint8_t attr_count_ = 0;
};

/// Shallow hash of (tag, attrs, child identifiers). Never looks at child
/// structure, so it is O(1) regardless of the size of the represented DAG.
std::uint64_t hash_payload(const Payload& p) noexcept;

struct PayloadHash {
  std::size_t operator()(const Payload& p) const noexcept { return static_cast<std::size_t>(hash_payload(p)); }
};

struct PoolStats {
  std::uint64_t node_count = 0;
  std::uint64_t intern_hits = 0;
  std::uint64_t intern_misses = 0;
};

using DuplicatePair = std::pair<UniqueId, UniqueId>;

/// Hash-consing table. Interning a payload either returns the identifier of a
/// structurally equal node already present or stores it under a fresh one.
///
/// Invariants maintained by every public mutator:
///  - the forward map and the backward table are mutually inverse;
///  - every child of a stored node has a strictly smaller identifier;
///  - next() == number of stored nodes.
///
/// Nodes are never reclaimed. Identifiers are handed out to clients and used as
/// memo keys, so a node must stay alive for as long as the pool does.
///
/// Single writer: no internal locking.
class Pool {
 public:
  explicit Pool(std::size_t initial_capacity = 16);

  /// Reserves the next identifier for `p`. Only legal before the first intern().
  UniqueId preallocate(const Payload& p);

  UniqueId intern(const Payload& p);
  const Payload& resolve(UniqueId id) const;

  bool contains(UniqueId id) const noexcept { return id.value < back_.size(); }
  UniqueId next() const noexcept { return UniqueId{back_.size()}; }
  std::size_t size() const noexcept { return back_.size(); }
  std::size_t preallocated_count() const noexcept { return preallocated_; }
  const PoolStats& stats() const noexcept { return stats_; }

  /// Consistency check of the forward/backward bijection and child ordering.
  /// O(n); meant for tests.
  bool check_invariants() const;

  /// Appends `p` to the backward table without consulting or updating the
  /// forward map. Breaks maximal sharing on purpose; exists only so tests can
  /// confirm that scan_duplicates() notices.
  UniqueId append_unchecked_for_testing(const Payload& p);

 private:
  std::unordered_map<Payload, UniqueId, PayloadHash> fwd_;
  std::vector<Payload> back_;
  std::size_t preallocated_ = 0;
  PoolStats stats_;
};

/// Every pair (a, b), a < b, of distinct identifiers with structurally equal
/// payloads. Works from the backward table alone, independent of the hash map.
std::vector<DuplicatePair> scan_duplicates(const Pool& pool);

}  // namespace hcons

template <>
struct std::hash<hcons::UniqueId> {
  std::size_t operator()(hcons::UniqueId id) const noexcept { return std::hash<std::uint64_t>{}(id.value); }
};
