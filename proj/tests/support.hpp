#pragma once

// Generators and brute-force oracles shared by the unit and acceptance suites.
// The oracles here evaluate formulas one assignment at a time and never touch
// the BDD engine or the packed truth-table kernels.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "hcons/bdd.hpp"
#include "hcons/formula.hpp"

namespace hcons::testing {

using formula::Formula;
using formula::Op;

inline Formula random_formula(std::mt19937_64& rng, bdd::VarIndex nvars, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  int choice = depth <= 0 ? pick(rng) % 2 : pick(rng);
  if (choice == 0) {
    // mostly variables at the leaves, occasionally a constant
    if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) return Formula::constant(rng() & 1);
    return Formula::var(std::uniform_int_distribution<bdd::VarIndex>(1, nvars)(rng));
  }
  if (choice == 1) return Formula::var(std::uniform_int_distribution<bdd::VarIndex>(1, nvars)(rng));
  if (choice == 2) return !random_formula(rng, nvars, depth - 1);
  static constexpr Op kBinary[] = {Op::And, Op::Or, Op::Xor, Op::Implies, Op::Iff, Op::And, Op::Or};
  Op op = kBinary[choice - 3];
  return Formula::binary(op, random_formula(rng, nvars, depth - 1), random_formula(rng, nvars, depth - 1));
}

/// Per-assignment truth table via eval_formula.
inline std::vector<bool> brute_table(const Formula& f, bdd::VarIndex nvars) {
  std::vector<bool> t(std::size_t{1} << nvars);
  for (std::uint64_t a = 0; a < t.size(); ++a) t[a] = formula::eval_formula(f, bdd::Env::from_mask(nvars, a));
  return t;
}

inline bool brute_equiv(const Formula& f, const Formula& g, bdd::VarIndex nvars) {
  return brute_table(f, nvars) == brute_table(g, nvars);
}

/// Size of the reduced ordered diagram for a truth table under x1 < x2 < ...,
/// counted directly from the function: for each level i, the distinct
/// subfunctions reached by fixing x1..x(i-1) that still depend on x_i.
inline std::size_t robdd_size_oracle(const std::vector<bool>& table, bdd::VarIndex nvars) {
  std::size_t total = 0;
  for (bdd::VarIndex level = 1; level <= nvars; ++level) {
    const unsigned fixed = level - 1;
    std::set<std::vector<bool>> distinct;
    for (std::uint64_t prefix = 0; prefix < (std::uint64_t{1} << fixed); ++prefix) {
      std::vector<bool> sub;
      for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (nvars - fixed)); ++rest) {
        sub.push_back(table[prefix | (rest << fixed)]);
      }
      bool depends = false;
      for (std::size_t r = 0; r < sub.size(); r += 2) depends = depends || sub[r] != sub[r + 1];
      if (depends) distinct.insert(sub);
    }
    total += distinct.size();
  }
  return total;
}

}  // namespace hcons::testing
