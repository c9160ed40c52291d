// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "hcons/word_kernels.hpp"

namespace hcons::simd::detail {

namespace {

constexpr std::size_t kLane = 4;  // 64-bit words per __m256i

inline __m256i load(const std::uint64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::uint64_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

template <class Vec, class Tail>
void binary(Words dst, ConstWords a, ConstWords b, Vec vec, Tail tail) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) store(dst.data() + i, vec(load(a.data() + i), load(b.data() + i)));
  for (; i < n; ++i) dst[i] = tail(a[i], b[i]);
}

void avx2_not(Words dst, ConstWords a) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) store(dst.data() + i, _mm256_xor_si256(load(a.data() + i), ones));
  for (; i < n; ++i) dst[i] = ~a[i];
}

void avx2_and(Words d, ConstWords a, ConstWords b) {
  binary(d, a, b, [](__m256i x, __m256i y) { return _mm256_and_si256(x, y); },
         [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

void avx2_or(Words d, ConstWords a, ConstWords b) {
  binary(d, a, b, [](__m256i x, __m256i y) { return _mm256_or_si256(x, y); },
         [](std::uint64_t x, std::uint64_t y) { return x | y; });
}

void avx2_xor(Words d, ConstWords a, ConstWords b) {
  binary(d, a, b, [](__m256i x, __m256i y) { return _mm256_xor_si256(x, y); },
         [](std::uint64_t x, std::uint64_t y) { return x ^ y; });
}

void avx2_xnor(Words d, ConstWords a, ConstWords b) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  binary(d, a, b, [ones](__m256i x, __m256i y) { return _mm256_xor_si256(_mm256_xor_si256(x, y), ones); },
         [](std::uint64_t x, std::uint64_t y) { return ~(x ^ y); });
}

// andnot(x, y) computes ~x & y; ~a | b == ~(a & ~b) == andnot(andnot(b, a), ones)
void avx2_implies(Words d, ConstWords a, ConstWords b) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  binary(d, a, b, [ones](__m256i x, __m256i y) { return _mm256_andnot_si256(_mm256_andnot_si256(y, x), ones); },
         [](std::uint64_t x, std::uint64_t y) { return ~x | y; });
}

std::size_t avx2_first_mismatch(ConstWords a, ConstWords b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    __m256i eq = _mm256_cmpeq_epi64(load(a.data() + i), load(b.data() + i));
    if (_mm256_movemask_epi8(eq) != -1) break;
  }
  for (; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

constexpr WordKernels kAvx2{"avx2",     &avx2_not,     &avx2_and,           &avx2_or, &avx2_xor,
                            &avx2_xnor, &avx2_implies, &avx2_first_mismatch};

}  // namespace

const WordKernels& avx2_table() noexcept { return kAvx2; }

}  // namespace hcons::simd::detail
