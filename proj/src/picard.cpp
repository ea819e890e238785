#include "pv/picard.hpp"

#include <sstream>

namespace pv {

DivisorClass::DivisorClass(SurfacePtr surface, IntVec coeffs)
    : surface_(std::move(surface)), coeffs_(std::move(coeffs)) {
  if (!surface_) throw Error("divisor class without a surface");
  if (coeffs_.size() != surface_->rank())
    throw Error("coefficient vector length does not match Picard rank");
}

static void check_same(const DivisorClass& a, const DivisorClass& b) {
  if (!a.surface()->same_surface(*b.surface())) throw SurfaceMismatch{};
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
  check_same(*this, o);
  IntVec r(coeffs_.size());
  for (int i = 0; i < coeffs_.size(); ++i)
    r[i] = checked_add(coeffs_[i], o.coeffs_[i]);
  return DivisorClass(surface_, std::move(r));
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
  check_same(*this, o);
  IntVec r(coeffs_.size());
  for (int i = 0; i < coeffs_.size(); ++i)
    r[i] = checked_sub(coeffs_[i], o.coeffs_[i]);
  return DivisorClass(surface_, std::move(r));
}

DivisorClass DivisorClass::operator-() const {
  IntVec r(coeffs_.size());
  for (int i = 0; i < coeffs_.size(); ++i) r[i] = checked_sub(0, coeffs_[i]);
  return DivisorClass(surface_, std::move(r));
}

DivisorClass DivisorClass::operator*(std::int64_t k) const {
  IntVec r(coeffs_.size());
  for (int i = 0; i < coeffs_.size(); ++i) r[i] = checked_mul(coeffs_[i], k);
  return DivisorClass(surface_, std::move(r));
}

bool DivisorClass::operator==(const DivisorClass& o) const {
  return surface_->same_surface(*o.surface_) && coeffs_ == o.coeffs_;
}

std::string DivisorClass::to_string() const {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < coeffs_.size(); ++i)
    out << (i ? "," : "") << coeffs_[i];
  out << "]";
  return out.str();
}

SurfaceLattice::SurfaceLattice(SurfaceKind kind, int degree, int n_points)
    : kind_(kind), degree_(degree), n_points_(n_points) {
  if (n_points < 1) throw Error("n_points must be positive");
  if (kind == SurfaceKind::BlowupHirzebruch && degree < 0)
    throw Error("Hirzebruch degree must be nonnegative");
  const int base = kind == SurfaceKind::BlowupP2 ? 1 : 2;
  const int r = base + n_points;
  gram_ = IntMat::Zero(r, r);
  if (kind == SurfaceKind::BlowupP2) {
    gram_(0, 0) = 1;
  } else {
    gram_(0, 0) = -degree;
    gram_(0, 1) = gram_(1, 0) = 1;
  }
  for (int i = base; i < r; ++i) gram_(i, i) = -1;

  canonical_ = IntVec::Ones(r);
  if (kind == SurfaceKind::BlowupP2) {
    canonical_[0] = -3;
  } else {
    canonical_[0] = -2;
    canonical_[1] = -(degree + 2);
  }

  if (kind == SurfaceKind::BlowupP2) {
    IntVec h = IntVec::Zero(r);
    h[0] = 1;
    nef_.push_back(h);
  } else {
    IntVec f = IntVec::Zero(r), cn = IntVec::Zero(r), cn1 = IntVec::Zero(r);
    f[1] = 1;
    cn[0] = 1;
    cn[1] = degree;
    cn1[0] = 1;
    cn1[1] = degree + 1;
    nef_ = {f, cn, cn1};
  }

  // Nef witnesses pair nonnegatively with themselves and with every E_i.
  for (const auto& n : nef_) {
    if (n.dot(gram_ * n) < 0) throw Error("nef witness with negative square");
    for (int i = base; i < r; ++i)
      if (-(gram_ * n)[i] < 0) throw Error("nef witness pairing E_i negatively");
  }
}

SurfacePtr SurfaceLattice::blowup_p2(int n_points) {
  return SurfacePtr(new SurfaceLattice(SurfaceKind::BlowupP2, 0, n_points));
}

SurfacePtr SurfaceLattice::blowup_hirzebruch(int degree, int n_points) {
  return SurfacePtr(
      new SurfaceLattice(SurfaceKind::BlowupHirzebruch, degree, n_points));
}

DivisorClass SurfaceLattice::canonical() const {
  return DivisorClass(shared_from_this(), canonical_);
}

DivisorClass SurfaceLattice::basis(int i) const {
  IntVec v = IntVec::Zero(rank());
  v[i] = 1;
  return DivisorClass(shared_from_this(), std::move(v));
}

DivisorClass SurfaceLattice::exceptional(int i) const {
  const int base = kind_ == SurfaceKind::BlowupP2 ? 1 : 2;
  if (i < 0 || i >= n_points_) throw Error("exceptional index out of range");
  return basis(base + i);
}

DivisorClass SurfaceLattice::zero() const {
  return DivisorClass(shared_from_this(), IntVec::Zero(rank()));
}

DivisorClass SurfaceLattice::make(IntVec coeffs) const {
  return DivisorClass(shared_from_this(), std::move(coeffs));
}

bool SurfaceLattice::same_surface(const SurfaceLattice& o) const {
  return kind_ == o.kind_ && degree_ == o.degree_ && n_points_ == o.n_points_;
}

std::string SurfaceLattice::describe() const {
  std::ostringstream out;
  if (kind_ == SurfaceKind::BlowupP2)
    out << "p2:" << n_points_;
  else
    out << "f" << degree_ << ":" << n_points_;
  return out.str();
}

std::int64_t pair(const DivisorClass& a, const DivisorClass& b) {
  check_same(a, b);
  const IntMat& g = a.surface()->gram();
  std::int64_t acc = 0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (g(i, j) != 0)
        acc = checked_add(
            acc, checked_mul(checked_mul(a.coeff(i), g(i, j)), b.coeff(j)));
  return acc;
}

std::int64_t self_intersection(const DivisorClass& a) { return pair(a, a); }

std::int64_t chi(const DivisorClass& d) {
  const DivisorClass k = d.surface()->canonical();
  const std::int64_t t = checked_sub(pair(d, d), pair(d, k));
  if (t % 2 != 0) throw Error("D.(D-K) must be even");
  return checked_add(1, t / 2);
}

Involution Involution::canonical_reflection(const SurfacePtr& surface) {
  Involution inv(InvolutionKind::CanonicalReflection, surface);
  const DivisorClass k = surface->canonical();
  const std::int64_t k2 = pair(k, k);
  if (k2 != -1 && k2 != -2)
    throw NonIntegralReflection(
        "canonical reflection requires |K^2| in {1,2}, got K^2=" +
        std::to_string(k2));
  return inv;
}

Involution Involution::plane_reflection(const DivisorClass& v,
                                        const DivisorClass& w) {
  check_same(v, w);
  Involution inv(InvolutionKind::PlaneReflection, v.surface());
  inv.v_ = v;
  inv.w_ = w;
  const std::int64_t vv = pair(v, v), vw = pair(v, w), ww = pair(w, w);
  const std::int64_t det = checked_sub(checked_mul(vv, ww), checked_mul(vw, vw));
  if (det == 0) throw SingularPlane{};
  // Integrality of the reflection is checked on every basis vector, and
  // the involution must fix the canonical class.
  for (int i = 0; i < v.surface()->rank(); ++i)
    (void)inv.apply(v.surface()->basis(i));
  const DivisorClass k = v.surface()->canonical();
  if (inv.apply(k) != k)
    throw NonIntegralReflection("plane reflection does not fix K_X");
  return inv;
}

DivisorClass Involution::apply(const DivisorClass& d) const {
  if (!d.surface()->same_surface(*surface_)) throw SurfaceMismatch{};
  if (kind_ == InvolutionKind::CanonicalReflection) {
    const DivisorClass k = surface_->canonical();
    const std::int64_t k2 = pair(k, k);
    const std::int64_t num = checked_mul(2, pair(d, k));
    if (num % k2 != 0)
      throw NonIntegralReflection("2(D.K) not divisible by K^2");
    return -d + k * (num / k2);
  }
  const DivisorClass &v = *v_, &w = *w_;
  const std::int64_t vv = pair(v, v), vw = pair(v, w), ww = pair(w, w);
  const std::int64_t det = checked_sub(checked_mul(vv, ww), checked_mul(vw, vw));
  const std::int64_t dv = pair(d, v), dw = pair(d, w);
  // P(D) = a v + b w solving the 2x2 Gram system in exact rationals.
  const std::int64_t anum = checked_sub(checked_mul(ww, dv), checked_mul(vw, dw));
  const std::int64_t bnum = checked_sub(checked_mul(vv, dw), checked_mul(vw, dv));
  const std::int64_t a2 = checked_mul(2, anum), b2 = checked_mul(2, bnum);
  if (a2 % det != 0 || b2 % det != 0)
    throw NonIntegralReflection("reflection of " + d.to_string() +
                                " is not integral");
  return d - v * (a2 / det) - w * (b2 / det);
}

ExceptionalityVerdict is_numerically_exceptional(
    const std::vector<DivisorClass>& collection) {
  if (collection.empty()) throw Error("empty collection");
  ExceptionalityVerdict verdict;
  const int n = static_cast<int>(collection.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (chi(collection[j] - collection[i]) != 0) {
        verdict.ok = false;
        verdict.witnesses.emplace_back(i, j);
      }
  return verdict;
}

}  // namespace pv
