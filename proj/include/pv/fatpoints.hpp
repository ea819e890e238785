#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pv/ffrank.hpp"
#include "pv/picard.hpp"

namespace pv {

// A point of P^2 is stored as homogeneous coordinates (x0:x1:x2); a point
// of F_n as (a0:a1 | b0:b1) in the bigraded Cox coordinates: a is the base
// P^1 coordinate, b = (y0, y1) the fiber pair with deg y0 = C and
// deg y1 = C + nF. The (-n)-curve C is V(y0), so b0 != 0 off C.
struct FpPoint {
  std::array<std::uint32_t, 4> c{};
  int len = 0;  // 3 for P2, 4 for F_n

  bool operator==(const FpPoint&) const = default;
};

struct SamplingExhausted : Error {
  SamplingExhausted() : Error("could not sample a valid point set") {}
};

struct PointOnForbiddenLocus : Error {
  explicit PointOnForbiddenLocus(const std::string& w) : Error(w) {}
};

struct PointSet {
  SurfaceKind kind;
  int hirzebruch_degree = 0;
  std::uint32_t prime = 0;
  std::vector<FpPoint> points;
  std::string provenance;  // "sampled:<seed>" or "fixture:<name>"

  std::string cache_key() const;
};

PointSet sample_points(const SurfaceLattice& surface, int count,
                       std::uint32_t prime, std::uint64_t seed);

// Bundled point sets: "paper-f2-997", "paper-p2-997", "paper-f4-65537".
PointSet fixture(const std::string& name);

PointSet load_pointset(const std::string& path);
void save_pointset(const PointSet& ps, const std::string& path);

// Converts a point of the quartic-scroll embedding of F_2 in P^5
// (z0..z5, the Segre image of P^1 x P^2) to bigraded coordinates.
FpPoint segre_scroll_to_cox(const std::array<std::uint32_t, 6>& z,
                            std::uint32_t p);

// Section-space dimension of O(d) on P^2.
std::int64_t monomial_basis_size_p2(std::int64_t d);
// Section-space dimension of O(aC + bF) on F_n: sum_k max(0, b - nk + 1).
std::int64_t monomial_basis_size_fn(int n, std::int64_t a, std::int64_t b);

// Bidegree-graded monomial exponents: for P^2 the pair (e1, e2) with
// x1^e1 x2^e2 x0^(d-e1-e2); for F_n the pair (e, k) meaning
// x1^e y1^k x0^(b-nk-e) y0^(a-k).
std::vector<std::array<int, 2>> monomial_basis_p2(std::int64_t d);
std::vector<std::array<int, 2>> monomial_basis_fn(int n, std::int64_t a,
                                                  std::int64_t b);

// Condition matrix for the reduced class D at the point set: one row per
// local-expansion coefficient of order < m_i at each point, one column per
// monomial. The kernel dimension equals h^0 of D at these points.
DenseMatrixFp build_conditions(const DivisorClass& reduced,
                               const PointSet& ps,
                               std::size_t memory_budget_bytes =
                                   DenseMatrixFp::kDefaultBudget);

struct OracleOptions {
  unsigned threads = 1;
  std::size_t memory_budget_bytes = DenseMatrixFp::kDefaultBudget;
};

// basis size - rank of the condition matrix. D must be fixed-component
// reduced (nonnegative multiplicities; on F_n blowups a, b >= 0).
std::int64_t h0_interpolation(const DivisorClass& reduced, const PointSet& ps,
                              const OracleOptions& opts = {});

enum class Genericity { ExactGeneric, UpperBoundOnly, VanishesGenerically };

// Semicontinuity: 0 at special points pins the generic value; otherwise
// the value is exact when chi is attained and h^2 is certified zero.
Genericity certify_generic(const DivisorClass& d, std::int64_t computed_h0);

std::string genericity_name(Genericity g);

}  // namespace pv
