#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pv/vanishing.hpp"

namespace pv {

// Relative heights live in {0, 1, 2, infinity}: on a surface H^k of a line
// bundle vanishes for k > 2, so any larger value is infinite.
constexpr int kRheightInfinity = 1 << 20;

inline int rheight_add(int a, int b) {
  return (a >= kRheightInfinity || b >= kRheightInfinity) ? kRheightInfinity
                                                          : a + b;
}

std::string rheight_name(int v);

// Least k with H^k(L2 - L1) != 0, or infinity.
int rheight(const H0Solver& solver, const DivisorClass& l1,
            const DivisorClass& l2);

struct RheightTable {
  int n = 0;
  // rheight(L_i, L_j) for i < j (diagonal 0); -1 marks uncomputed cells.
  std::vector<int> grid;
  // closer(i, j) = rheight(L_j, L_i - K_X) for i <= j; -1 otherwise.
  std::vector<int> closer;

  int at(int i, int j) const { return grid[i * n + j]; }
  int closer_at(int i, int j) const { return closer[i * n + j]; }
};

RheightTable build_rheight_table(const H0Solver& solver,
                                 const std::vector<DivisorClass>& collection);

enum class HeightClaim { EqualsPseudoheight, LowerBoundOnly };

struct HeightReport {
  int pseudoheight_ac = kRheightInfinity;
  int pseudoheight = kRheightInfinity;  // pseudoheight_ac + dim X
  std::vector<int> chain;               // a minimizing chain a_0 < ... < a_p
  HeightClaim claim = HeightClaim::LowerBoundOnly;
  bool not_full = false;  // certified: pseudoheight_ac > -2
};

// Exact anticanonical pseudoheight by dynamic programming over increasing
// chains; the collection must already be certified exceptional.
HeightReport pseudoheight_ac(const H0Solver& solver,
                             const std::vector<DivisorClass>& collection);

// Test oracle: brute force over all 2^n - 1 chains.
HeightReport pseudoheight_ac_exhaustive(
    const H0Solver& solver, const std::vector<DivisorClass>& collection);

// True iff h^0(L_j - L_i) = 0 for all i < j. For an exceptional collection
// this certifies every rheight >= 1, hence ac-pseudoheight >= 1 > -2 and
// the collection is not full.
bool all_homs_vanish(const H0Solver& solver,
                     const std::vector<DivisorClass>& collection);

}  // namespace pv
