#ifndef VK_FEASIBILITY_HPP
#define VK_FEASIBILITY_HPP

#include <cstddef>
#include <vector>

#include "vk/semiring.hpp"

namespace vk {

/// A x = b, x >= 0 over exact rationals. `a` is row-major.
struct LinearSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> a;
  std::vector<Rational> b;

  const Rational& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

struct FeasibilityResult {
  bool feasible = false;
  /// A nonnegative solution when feasible.
  std::vector<Rational> solution;
  /// When infeasible: y with y^T A >= 0 componentwise and y^T b < 0.
  std::vector<Rational> farkas;
  std::size_t pivots = 0;
};

/// Phase-one simplex with Bland's rule. Terminates on every input.
FeasibilityResult solve_feasibility(const LinearSystem& sys);

bool is_solution(const LinearSystem& sys, const std::vector<Rational>& x);
bool is_farkas_certificate(const LinearSystem& sys, const std::vector<Rational>& y);

}  // namespace vk

#endif  // VK_FEASIBILITY_HPP
