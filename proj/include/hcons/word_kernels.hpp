#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Bulk bitwise kernels over packed truth tables. A scalar reference is always
// available; vector variants are compiled per architecture and picked at run
// time. All variants must agree word for word.
namespace hcons::simd {

using Words = std::span<std::uint64_t>;
using ConstWords = std::span<const std::uint64_t>;

using UnaryKernel = void (*)(Words dst, ConstWords a);
using BinaryKernel = void (*)(Words dst, ConstWords a, ConstWords b);

struct WordKernels {
  std::string_view name;
  UnaryKernel bit_not;
  BinaryKernel bit_and;
  BinaryKernel bit_or;
  BinaryKernel bit_xor;
  BinaryKernel bit_xnor;
  BinaryKernel bit_implies;  // ~a | b
  // Index of the first word where a and b differ, or a.size() if none.
  std::size_t (*first_mismatch)(ConstWords a, ConstWords b);
};

const WordKernels& scalar_kernels() noexcept;

// nullptr when not built for this target or not supported by this CPU.
const WordKernels* avx2_kernels() noexcept;
const WordKernels* neon_kernels() noexcept;

/// Best variant for the running CPU. HCONS_SIMD=scalar in the environment
/// forces the reference kernels.
const WordKernels& active_kernels() noexcept;

}  // namespace hcons::simd
