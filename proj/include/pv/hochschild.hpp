#pragma once

#include <cstdint>
#include <string>

#include "pv/heights.hpp"
#include "pv/picard.hpp"

namespace pv {

// h^1(X, T_X) for the blowup of P^2 at n >= 8 general points: 2n - 8.
std::int64_t h1_tangent_p2_blowup(int n);

// h^0(F_n, -K) = 6 + max{3, n}: the number of general points whose blowup
// kills the anticanonical system.
std::int64_t d_critical(int n);

// h^1(X, T_X) for the blowup of F_n (n >= 1) at d_critical(n) general
// points: 11 + n for 1 <= n <= 3, else 5 + 3n.
std::int64_t h1_tangent_hirzebruch_blowup(int n);

// Dispatches on the surface; Hirzebruch blowups must have exactly
// d_critical(n) points for the formula to apply.
std::int64_t h1_tangent(const SurfaceLattice& surface);

enum class HH2Kind { Exact, LowerBound };
enum class HHJustification { HeightAtLeast4, HeightEquals3 };

struct HHCertificate {
  std::string scenario;
  std::int64_t h1_tangent = 0;
  HH2Kind kind = HH2Kind::LowerBound;
  std::int64_t value = 0;  // dim HH^2 of the complement category
  HHJustification justification = HHJustification::HeightEquals3;
};

// HH^2 of the phantom from the restriction sequence: pseudoheight >= 4
// kills normal Hochschild cohomology through degree 3 and gives the exact
// value h^1(T_X); a certified height 3 gives only the lower bound.
HHCertificate hh2_statement(const std::string& scenario,
                            const SurfaceLattice& surface,
                            const HeightReport& heights);

}  // namespace pv
