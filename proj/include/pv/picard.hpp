#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pv/common.hpp"

namespace pv {

using IntVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class SurfaceKind { BlowupP2, BlowupHirzebruch };

// Integer model of Pic(X) for X a blowup of P^2 or of a Hirzebruch surface
// F_n at general points. Basis ordering is fixed: (H, E_1..E_n) resp.
// (C, F, E_1..E_n); all serialized coefficient vectors use it.
class SurfaceLattice;
using SurfacePtr = std::shared_ptr<const SurfaceLattice>;

class DivisorClass {
 public:
  DivisorClass(SurfacePtr surface, IntVec coeffs);

  const IntVec& coeffs() const { return coeffs_; }
  std::int64_t coeff(int i) const { return coeffs_[i]; }
  const SurfacePtr& surface() const { return surface_; }
  int rank() const { return static_cast<int>(coeffs_.size()); }
  bool is_zero() const { return coeffs_.isZero(); }

  DivisorClass operator+(const DivisorClass& o) const;
  DivisorClass operator-(const DivisorClass& o) const;
  DivisorClass operator-() const;
  DivisorClass operator*(std::int64_t k) const;
  bool operator==(const DivisorClass& o) const;
  bool operator!=(const DivisorClass& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  SurfacePtr surface_;
  IntVec coeffs_;
};

class SurfaceLattice : public std::enable_shared_from_this<SurfaceLattice> {
 public:
  static SurfacePtr blowup_p2(int n_points);
  static SurfacePtr blowup_hirzebruch(int degree, int n_points);

  SurfaceKind kind() const { return kind_; }
  int hirzebruch_degree() const { return degree_; }
  int n_points() const { return n_points_; }
  int rank() const { return static_cast<int>(gram_.rows()); }
  const IntMat& gram() const { return gram_; }

  DivisorClass canonical() const;
  const std::vector<IntVec>& nef_witnesses() const { return nef_; }

  // Basis classes. For P2 blowups index 0 is H; for F_n blowups indices
  // 0, 1 are C, F. Exceptional classes follow.
  DivisorClass basis(int i) const;
  DivisorClass exceptional(int i) const;  // E_{i+1}, zero-based
  DivisorClass zero() const;
  DivisorClass make(IntVec coeffs) const;

  bool same_surface(const SurfaceLattice& o) const;
  std::string describe() const;  // e.g. "p2:11", "f2:9"

 private:
  SurfaceLattice(SurfaceKind kind, int degree, int n_points);

  SurfaceKind kind_;
  int degree_ = 0;  // Hirzebruch degree, 0 for P2 blowups
  int n_points_;
  IntMat gram_;
  IntVec canonical_;
  std::vector<IntVec> nef_;
};

std::int64_t pair(const DivisorClass& a, const DivisorClass& b);
std::int64_t self_intersection(const DivisorClass& a);

// Riemann-Roch: chi(O_X) + D.(D - K_X)/2, with chi(O_X) = 1 throughout.
std::int64_t chi(const DivisorClass& d);

enum class InvolutionKind { CanonicalReflection, PlaneReflection };

// An integral isometric involution of Pic(X) fixing K_X. The canonical
// reflection is D -> -D + (2(D.K)/K^2) K, defined when |K^2| divides
// 2(D.K) for every D, i.e. |K^2| in {1, 2}. The plane reflection is
// D -> D - 2P(D) for P the orthogonal projection onto <v, w>.
class Involution {
 public:
  static Involution canonical_reflection(const SurfacePtr& surface);
  static Involution plane_reflection(const DivisorClass& v,
                                     const DivisorClass& w);

  InvolutionKind kind() const { return kind_; }
  const SurfacePtr& surface() const { return surface_; }
  DivisorClass apply(const DivisorClass& d) const;

 private:
  Involution(InvolutionKind kind, SurfacePtr surface)
      : kind_(kind), surface_(std::move(surface)) {}

  InvolutionKind kind_;
  SurfacePtr surface_;
  std::optional<DivisorClass> v_, w_;
};

inline DivisorClass apply_involution(const Involution& i,
                                     const DivisorClass& d) {
  return i.apply(d);
}

struct ExceptionalityVerdict {
  bool ok = true;
  // Failing ordered pairs (i, j) with i > j and chi(L_j - L_i) != 0.
  std::vector<std::pair<int, int>> witnesses;
};

// Euler-pairing test: chi(O(L_i), O(L_j)) = chi(L_j - L_i) must vanish for
// all i > j. Self-pairings chi(0) = 1 hold identically on a surface.
ExceptionalityVerdict is_numerically_exceptional(
    const std::vector<DivisorClass>& collection);

}  // namespace pv
