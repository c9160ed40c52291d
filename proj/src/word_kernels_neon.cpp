// aarch64 only. Advanced SIMD is mandatory there, so no runtime probe.
#include <arm_neon.h>

#include "hcons/word_kernels.hpp"

namespace hcons::simd::detail {

namespace {

constexpr std::size_t kLane = 2;

template <class Vec, class Tail>
void binary(Words dst, ConstWords a, ConstWords b, Vec vec, Tail tail) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) vst1q_u64(dst.data() + i, vec(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i)));
  for (; i < n; ++i) dst[i] = tail(a[i], b[i]);
}

void neon_not(Words dst, ConstWords a) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    vst1q_u64(dst.data() + i, vreinterpretq_u64_u32(vmvnq_u32(vreinterpretq_u32_u64(vld1q_u64(a.data() + i)))));
  }
  for (; i < n; ++i) dst[i] = ~a[i];
}

void neon_and(Words d, ConstWords a, ConstWords b) {
  binary(d, a, b, [](uint64x2_t x, uint64x2_t y) { return vandq_u64(x, y); },
         [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

void neon_or(Words d, ConstWords a, ConstWords b) {
  binary(d, a, b, [](uint64x2_t x, uint64x2_t y) { return vorrq_u64(x, y); },
         [](std::uint64_t x, std::uint64_t y) { return x | y; });
}

void neon_xor(Words d, ConstWords a, ConstWords b) {
  binary(d, a, b, [](uint64x2_t x, uint64x2_t y) { return veorq_u64(x, y); },
         [](std::uint64_t x, std::uint64_t y) { return x ^ y; });
}

void neon_xnor(Words d, ConstWords a, ConstWords b) {
  binary(d, a, b,
         [](uint64x2_t x, uint64x2_t y) {
           return vreinterpretq_u64_u32(vmvnq_u32(vreinterpretq_u32_u64(veorq_u64(x, y))));
         },
         [](std::uint64_t x, std::uint64_t y) { return ~(x ^ y); });
}

// vornq(y, x) = y | ~x
void neon_implies(Words d, ConstWords a, ConstWords b) {
  binary(d, a, b, [](uint64x2_t x, uint64x2_t y) { return vornq_u64(y, x); },
         [](std::uint64_t x, std::uint64_t y) { return ~x | y; });
}

std::size_t neon_first_mismatch(ConstWords a, ConstWords b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    uint64x2_t diff = veorq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i));
    if ((vgetq_lane_u64(diff, 0) | vgetq_lane_u64(diff, 1)) != 0) break;
  }
  for (; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

constexpr WordKernels kNeon{"neon",     &neon_not,     &neon_and,           &neon_or, &neon_xor,
                            &neon_xnor, &neon_implies, &neon_first_mismatch};

}  // namespace

const WordKernels& neon_table() noexcept { return kNeon; }

}  // namespace hcons::simd::detail
