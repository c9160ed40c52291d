#include "hcons/intern.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "hcons/error.hpp"

namespace hcons {

namespace {

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

Payload::Payload(std::uint8_t tag, std::span<const UniqueId> children, std::span<const std::uint64_t> attrs)
    : tag_(tag) {
  if (children.size() > kMaxChildren || attrs.size() > kMaxAttrs) {
    raise(Errc::usage, "payload exceeds inline capacity");
  }
  std::copy(children.begin(), children.end(), children_.begin());
  std::copy(attrs.begin(), attrs.end(), attrs_.begin());
  child_count_ = static_cast<std::uint8_t>(children.size());
  attr_count_ = static_cast<std::uint8_t>(attrs.size());
}

bool operator==(const Payload& a, const Payload& b) noexcept {
  return a.tag_ == b.tag_ && a.child_count_ == b.child_count_ && a.attr_count_ == b.attr_count_ &&
         std::equal(a.children_.begin(), a.children_.begin() + a.child_count_, b.children_.begin()) &&
         std::equal(a.attrs_.begin(), a.attrs_.begin() + a.attr_count_, b.attrs_.begin());
}

std::strong_ordering operator<=>(const Payload& a, const Payload& b) noexcept {
  if (auto c = a.tag_ <=> b.tag_; c != 0) return c;
  auto ac = a.children(), bc = b.children();
  if (auto c = std::lexicographical_compare_three_way(ac.begin(), ac.end(), bc.begin(), bc.end()); c != 0) return c;
  auto aa = a.attrs(), ba = b.attrs();
  return std::lexicographical_compare_three_way(aa.begin(), aa.end(), ba.begin(), ba.end());
}

std::uint64_t hash_payload(const Payload& p) noexcept {
  std::uint64_t h = mix64(0x9e3779b97f4a7c15ULL + p.tag());
  auto absorb = [&h](std::uint64_t w) { h = mix64(h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2))); };
  // Counts are folded in so (children, attrs) boundaries cannot alias.
  absorb(p.children().size() | (p.attrs().size() << 8));
  for (UniqueId c : p.children()) absorb(c.value);
  for (std::uint64_t a : p.attrs()) absorb(a);
  return h;
}

Pool::Pool(std::size_t initial_capacity) {
  back_.reserve(initial_capacity);
  fwd_.reserve(initial_capacity);
}

UniqueId Pool::preallocate(const Payload& p) {
  if (back_.size() != preallocated_) {
    raise(Errc::usage, "preallocate called after intern");
  }
  for (UniqueId c : p.children()) {
    if (!contains(c)) raise(Errc::invalid_child, "child " + std::to_string(c.value) + " not in pool");
  }
  if (fwd_.contains(p)) raise(Errc::usage, "preallocated payload already present");
  UniqueId id = next();
  back_.push_back(p);
  fwd_.emplace(p, id);
  ++preallocated_;
  stats_.node_count = back_.size();
  return id;
}

UniqueId Pool::intern(const Payload& p) {
  UniqueId fresh = next();
  for (UniqueId c : p.children()) {
    if (c.value >= fresh.value) raise(Errc::invalid_child, "child " + std::to_string(c.value) + " not in pool");
  }
  auto [it, inserted] = fwd_.try_emplace(p, fresh);
  if (!inserted) {
    ++stats_.intern_hits;
    return it->second;
  }
  if (fresh.value == std::numeric_limits<std::uint64_t>::max()) {
    fwd_.erase(it);
    raise(Errc::range, "identifier space exhausted");
  }
  if (back_.size() == back_.capacity()) back_.reserve(std::max<std::size_t>(16, back_.capacity() * 2));
  back_.push_back(p);
  ++stats_.intern_misses;
  stats_.node_count = back_.size();
  return fresh;
}

const Payload& Pool::resolve(UniqueId id) const {
  if (!contains(id)) raise(Errc::unknown_identifier, "identifier " + std::to_string(id.value));
  return back_[id.value];
}

bool Pool::check_invariants() const {
  if (fwd_.size() > back_.size()) return false;
  for (std::size_t i = 0; i < back_.size(); ++i) {
    for (UniqueId c : back_[i].children()) {
      if (c.value >= i) return false;
    }
  }
  for (const auto& [payload, id] : fwd_) {
    if (!contains(id) || !(back_[id.value] == payload)) return false;
  }
  return fwd_.size() == back_.size();
}

UniqueId Pool::append_unchecked_for_testing(const Payload& p) {
  UniqueId id = next();
  back_.push_back(p);
  stats_.node_count = back_.size();
  return id;
}

std::vector<DuplicatePair> scan_duplicates(const Pool& pool) {
  std::vector<std::uint64_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  auto payload = [&pool](std::uint64_t i) -> const Payload& { return pool.resolve(UniqueId{i}); };
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    auto c = payload(a) <=> payload(b);
    return c != 0 ? c < 0 : a < b;
  });

  std::vector<DuplicatePair> out;
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && payload(order[hi]) == payload(order[lo])) ++hi;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + 1; j < hi; ++j) out.emplace_back(UniqueId{order[i]}, UniqueId{order[j]});
    }
    lo = hi;
  }
  return out;
}

}  // namespace hcons
