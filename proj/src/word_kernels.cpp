#include "hcons/word_kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace hcons::simd {

namespace detail {
#if defined(HCONS_HAVE_AVX2)
const WordKernels& avx2_table() noexcept;
#endif
#if defined(HCONS_HAVE_NEON)
const WordKernels& neon_table() noexcept;
#endif
}  // namespace detail

namespace {

void scalar_not(Words dst, ConstWords a) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ~a[i];
}

template <class F>
void scalar_binary(Words dst, ConstWords a, ConstWords b, F f) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = f(a[i], b[i]);
}

void scalar_and(Words d, ConstWords a, ConstWords b) { scalar_binary(d, a, b, [](auto x, auto y) { return x & y; }); }
void scalar_or(Words d, ConstWords a, ConstWords b) { scalar_binary(d, a, b, [](auto x, auto y) { return x | y; }); }
void scalar_xor(Words d, ConstWords a, ConstWords b) { scalar_binary(d, a, b, [](auto x, auto y) { return x ^ y; }); }
void scalar_xnor(Words d, ConstWords a, ConstWords b) { scalar_binary(d, a, b, [](auto x, auto y) { return ~(x ^ y); }); }
void scalar_implies(Words d, ConstWords a, ConstWords b) {
  scalar_binary(d, a, b, [](auto x, auto y) { return ~x | y; });
}

std::size_t scalar_first_mismatch(ConstWords a, ConstWords b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return i;
  }
  return a.size();
}

constexpr WordKernels kScalar{"scalar",  &scalar_not,     &scalar_and,           &scalar_or, &scalar_xor,
                              &scalar_xnor, &scalar_implies, &scalar_first_mismatch};

bool force_scalar() noexcept {
  const char* v = std::getenv("HCONS_SIMD");
  return v != nullptr && std::strcmp(v, "scalar") == 0;
}

}  // namespace

const WordKernels& scalar_kernels() noexcept { return kScalar; }

const WordKernels* avx2_kernels() noexcept {
#if defined(HCONS_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &detail::avx2_table();
#endif
  return nullptr;
}

const WordKernels* neon_kernels() noexcept {
#if defined(HCONS_HAVE_NEON)
  return &detail::neon_table();
#else
  return nullptr;
#endif
}

const WordKernels& active_kernels() noexcept {
  static const WordKernels* chosen = [] {
    if (force_scalar()) return &kScalar;
    if (const auto* k = avx2_kernels()) return k;
    if (const auto* k = neon_kernels()) return k;
    return &kScalar;
  }();
  return *chosen;
}

}  // namespace hcons::simd
