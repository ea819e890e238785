#include "pv/fatpoints.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace pv {

namespace {

using json = nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
}

// Canonical representative of a projective tuple, for distinctness checks.
FpPoint canonical_form(const FpPoint& pt, std::uint32_t p) {
  FpPoint out = pt;
  if (pt.len == 3) {
    int lead = -1;
    for (int i = 2; i >= 0; --i)
      if (pt.c[i]) lead = i;
    if (lead < 0) throw PointOnForbiddenLocus("zero coordinate tuple");
    const std::uint32_t inv = inverse_mod_p(pt.c[lead], p);
    for (int i = 0; i < 3; ++i) out.c[i] = mulmod(pt.c[i], inv, p);
  } else {
    if (pt.c[0] == 0 && pt.c[1] == 0)
      throw PointOnForbiddenLocus("zero base coordinates");
    if (pt.c[2] == 0)
      throw PointOnForbiddenLocus("point lies on the curve C");
    // Scale the base pair to a leading 1, then the fiber pair by y0.
    const int ib = pt.c[0] ? 0 : 1;
    const std::uint32_t binv = inverse_mod_p(pt.c[ib], p);
    out.c[0] = mulmod(pt.c[0], binv, p);
    out.c[1] = mulmod(pt.c[1], binv, p);
    const std::uint32_t finv = inverse_mod_p(pt.c[2], p);
    out.c[2] = 1;
    out.c[3] = mulmod(pt.c[3], finv, p);
  }
  return out;
}

struct Binomials {
  // C(n, k) mod p for n <= nmax; valid residues for any n, k.
  std::vector<std::vector<std::uint32_t>> c;
  explicit Binomials(int nmax, std::uint32_t p) : c(nmax + 1) {
    for (int n = 0; n <= nmax; ++n) {
      c[n].assign(n + 1, 1);
      for (int k = 1; k < n; ++k)
        c[n][k] = (c[n - 1][k - 1] + std::uint64_t(c[n - 1][k])) % p;
    }
  }
  std::uint32_t operator()(int n, int k) const {
    if (k < 0 || k > n) return 0;
    return c[n][k];
  }
};

struct BundleData {
  bool p2;
  int n = 0;              // Hirzebruch degree
  std::int64_t d = 0;     // P2 degree
  std::int64_t a = 0, b = 0;
  std::vector<std::int64_t> mult;
};

BundleData bundle_of(const DivisorClass& reduced) {
  const auto& s = *reduced.surface();
  BundleData bd;
  bd.p2 = s.kind() == SurfaceKind::BlowupP2;
  if (bd.p2) {
    bd.d = reduced.coeff(0);
    if (bd.d < 0) throw Error("negative degree; reduce and nef-test first");
    for (int i = 0; i < s.n_points(); ++i) bd.mult.push_back(-reduced.coeff(1 + i));
  } else {
    bd.n = s.hirzebruch_degree();
    bd.a = reduced.coeff(0);
    bd.b = reduced.coeff(1);
    if (bd.a < 0 || bd.b < 0)
      throw Error("negative bidegree; reduce and nef-test first");
    for (int i = 0; i < s.n_points(); ++i) bd.mult.push_back(-reduced.coeff(2 + i));
  }
  for (auto m : bd.mult)
    if (m < 0) throw Error("negative multiplicity; class is not reduced");
  return bd;
}

}  // namespace

std::string PointSet::cache_key() const {
  std::ostringstream s;
  s << (kind == SurfaceKind::BlowupP2 ? "p2" : "f") << hirzebruch_degree << "/"
    << prime << "/" << provenance;
  for (const auto& pt : points) {
    s << ";";
    for (int i = 0; i < pt.len; ++i) s << pt.c[i] << ",";
  }
  std::ostringstream out;
  out << std::hex << fnv1a(s.str());
  return out.str();
}

PointSet sample_points(const SurfaceLattice& surface, int count,
                       std::uint32_t prime, std::uint64_t seed) {
  if (count < 1) throw Error("point count must be positive");
  if (!is_probable_prime(prime)) throw Error("modulus is not prime");
  PointSet ps;
  ps.kind = surface.kind();
  ps.hirzebruch_degree = surface.hirzebruch_degree();
  ps.prime = prime;
  ps.provenance = "sampled:" + std::to_string(seed);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, prime - 1);
  std::vector<FpPoint> canon;
  int attempts = 0;
  while (static_cast<int>(ps.points.size()) < count) {
    if (++attempts > 100 * count + 100) throw SamplingExhausted{};
    FpPoint pt;
    if (ps.kind == SurfaceKind::BlowupP2) {
      pt.len = 3;
      pt.c = {dist(rng), dist(rng), 1, 0};
    } else {
      pt.len = 4;
      // Base chart a1 = 1, fiber chart y0 = 1 keeps points off C and off
      // chart infinity.
      pt.c = {dist(rng), 1, 1, dist(rng)};
    }
    const FpPoint cf = canonical_form(pt, prime);
    if (std::find(canon.begin(), canon.end(), cf) != canon.end()) continue;
    canon.push_back(cf);
    ps.points.push_back(pt);
  }
  return ps;
}

FpPoint segre_scroll_to_cox(const std::array<std::uint32_t, 6>& z,
                            std::uint32_t p) {
  // z = (x0 y0, x0 y1, x0 y2, x1 y0, x1 y1, x1 y2) for ((x0:x1),(y0:y1:y2))
  // on V(x0^2 y1 - x1^2 y0). Fiber coordinates: y0 = x0^2 s, y1 = x1^2 s,
  // y2 = t with (s : t) the Cox pair (y0c : y1c) over base (x0 : x1).
  std::uint32_t a0, a1;
  if (z[0] || z[3]) {
    a0 = z[0];
    a1 = z[3];
  } else if (z[1] || z[4]) {
    a0 = z[1];
    a1 = z[4];
  } else {
    a0 = z[2];
    a1 = z[5];
  }
  if (a0 == 0 && a1 == 0) throw PointOnForbiddenLocus("degenerate scroll point");
  FpPoint pt;
  pt.len = 4;
  pt.c[0] = a0;
  pt.c[1] = a1;
  // s from z0 = x0^3 s or z4 = x1^3 s; t from z2 = x0 t or z5 = x1 t.
  if (a0 != 0) {
    const std::uint32_t inv = inverse_mod_p(a0, p);
    pt.c[2] = mulmod(mulmod(mulmod(z[0], inv, p), inv, p), inv, p);
    pt.c[3] = mulmod(z[2], inv, p);
  } else {
    const std::uint32_t inv = inverse_mod_p(a1, p);
    pt.c[2] = mulmod(mulmod(mulmod(z[4], inv, p), inv, p), inv, p);
    pt.c[3] = mulmod(z[5], inv, p);
  }
  if (pt.c[2] == 0) throw PointOnForbiddenLocus("scroll point lies on C");
  // Consistency: the tuple must reproduce all six z up to the chosen scale.
  const std::uint32_t s = pt.c[2], t = pt.c[3];
  const std::uint32_t x0 = pt.c[0], x1 = pt.c[1];
  const std::uint32_t y0 = mulmod(mulmod(x0, x0, p), s, p);
  const std::uint32_t y1 = mulmod(mulmod(x1, x1, p), s, p);
  const std::array<std::uint32_t, 6> back = {
      mulmod(x0, y0, p), mulmod(x0, y1, p), mulmod(x0, t, p),
      mulmod(x1, y0, p), mulmod(x1, y1, p), mulmod(x1, t, p)};
  if (back != z)
    throw Error("scroll point does not satisfy the quadric relations");
  return pt;
}

PointSet fixture(const std::string& name) {
  PointSet ps;
  if (name == "paper-f2-997") {
    ps.kind = SurfaceKind::BlowupHirzebruch;
    ps.hirzebruch_degree = 2;
    ps.prime = 997;
    ps.provenance = "fixture:paper-f2-997";
    static const std::array<std::array<std::uint32_t, 6>, 9> z = {{
        {83, 431, 644, 398, 349, 1},
        {752, 134, 593, 699, 281, 1},
        {810, 789, 122, 546, 554, 1},
        {676, 4, 984, 945, 920, 1},
        {20, 723, 41, 730, 966, 1},
        {105, 530, 698, 53, 315, 1},
        {952, 545, 750, 977, 353, 1},
        {262, 661, 470, 603, 589, 1},
        {557, 465, 786, 588, 149, 1},
    }};
    for (const auto& zz : z) ps.points.push_back(segre_scroll_to_cox(zz, 997));
  } else if (name == "paper-p2-997") {
    ps.kind = SurfaceKind::BlowupP2;
    ps.prime = 997;
    ps.provenance = "fixture:paper-p2-997";
    // Each point satisfies x0 = alpha x1 = beta x2; stored as
    // (alpha beta, beta, alpha).
    static const std::array<std::array<std::uint32_t, 2>, 10> ab = {{
        {81, 491},
        {752, 134},
        {810, 789},
        {676, 4},
        {20, 723},
        {105, 530},
        {902, 545},
        {212, 661},
        {557, 465},
        {234, 632},
    }};
    for (const auto& [alpha, beta] : ab) {
      FpPoint pt;
      pt.len = 3;
      pt.c = {mulmod(alpha, beta, 997), beta, alpha, 0};
      ps.points.push_back(pt);
    }
  } else if (name == "paper-f4-65537") {
    // The negative-control points are our own deterministic sample; only
    // the qualitative non-vanishing is pinned to the source computation.
    auto surf = SurfaceLattice::blowup_hirzebruch(4, 9);
    ps = sample_points(*surf, 9, 65537, 0xf4u);
    ps.provenance = "fixture:paper-f4-65537";
  } else {
    throw Error("unknown fixture: " + name);
  }
  return ps;
}

PointSet load_pointset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open point-set file " + path);
  json j;
  in >> j;
  PointSet ps;
  const std::string surf = j.at("surface");
  if (surf == "p2") {
    ps.kind = SurfaceKind::BlowupP2;
  } else if (surf.size() > 1 && surf[0] == 'f') {
    ps.kind = SurfaceKind::BlowupHirzebruch;
    ps.hirzebruch_degree = std::stoi(surf.substr(1));
  } else {
    throw Error("bad surface descriptor in point-set file");
  }
  ps.prime = j.at("prime");
  ps.provenance = j.value("provenance", "file:" + path);
  for (const auto& row : j.at("points")) {
    FpPoint pt;
    pt.len = ps.kind == SurfaceKind::BlowupP2 ? 3 : 4;
    if (static_cast<int>(row.size()) != pt.len)
      throw Error("bad point tuple length");
    for (int i = 0; i < pt.len; ++i) pt.c[i] = row[i].get<std::uint32_t>() % ps.prime;
    ps.points.push_back(pt);
  }
  return ps;
}

void save_pointset(const PointSet& ps, const std::string& path) {
  json j;
  j["surface"] = ps.kind == SurfaceKind::BlowupP2
                     ? std::string("p2")
                     : "f" + std::to_string(ps.hirzebruch_degree);
  j["prime"] = ps.prime;
  j["provenance"] = ps.provenance;
  json pts = json::array();
  for (const auto& pt : ps.points) {
    json row = json::array();
    for (int i = 0; i < pt.len; ++i) row.push_back(pt.c[i]);
    pts.push_back(row);
  }
  j["points"] = pts;
  std::ofstream out(path);
  if (!out) throw Error("cannot write point-set file " + path);
  out << j.dump(2) << "\n";
}

std::int64_t monomial_basis_size_p2(std::int64_t d) {
  if (d < 0) throw Error("negative degree");
  return (d + 1) * (d + 2) / 2;
}

std::int64_t monomial_basis_size_fn(int n, std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0) throw Error("negative bidegree");
  std::int64_t total = 0;
  for (std::int64_t k = 0; k <= a; ++k)
    total += std::max<std::int64_t>(0, b - n * k + 1);
  return total;
}

std::vector<std::array<int, 2>> monomial_basis_p2(std::int64_t d) {
  std::vector<std::array<int, 2>> basis;
  basis.reserve(monomial_basis_size_p2(d));
  for (int e1 = 0; e1 <= d; ++e1)
    for (int e2 = 0; e1 + e2 <= d; ++e2) basis.push_back({e1, e2});
  return basis;
}

std::vector<std::array<int, 2>> monomial_basis_fn(int n, std::int64_t a,
                                                  std::int64_t b) {
  std::vector<std::array<int, 2>> basis;
  basis.reserve(monomial_basis_size_fn(n, a, b));
  for (int k = 0; k <= a; ++k)
    for (int e = 0; e <= b - std::int64_t(n) * k; ++e) basis.push_back({e, k});
  return basis;
}

DenseMatrixFp build_conditions(const DivisorClass& reduced, const PointSet& ps,
                               std::size_t budget) {
  const auto& s = *reduced.surface();
  const BundleData bd = bundle_of(reduced);
  if ((s.kind() == SurfaceKind::BlowupP2) != (ps.kind == SurfaceKind::BlowupP2) ||
      (!bd.p2 && s.hirzebruch_degree() != ps.hirzebruch_degree))
    throw SurfaceMismatch{};
  if (static_cast<int>(ps.points.size()) != s.n_points())
    throw Error("point set size does not match the number of blown-up points");
  const std::uint32_t p = ps.prime;
  const std::int64_t maxdeg = bd.p2 ? bd.d : bd.a + bd.b;
  if (p <= static_cast<std::uint64_t>(maxdeg))
    throw Error("prime must exceed the total degree of the basis monomials");

  const auto basis =
      bd.p2 ? monomial_basis_p2(bd.d) : monomial_basis_fn(bd.n, bd.a, bd.b);
  std::size_t n_rows = 0;
  for (auto m : bd.mult) n_rows += std::size_t(m) * (m + 1) / 2;
  DenseMatrixFp mat(p, n_rows, basis.size(), budget);

  const int maxbin = static_cast<int>(std::max<std::int64_t>(maxdeg, 1));
  Binomials binom(maxbin, p);

  std::size_t row0 = 0;
  for (std::size_t ip = 0; ip < ps.points.size(); ++ip) {
    const std::int64_t m = bd.mult[ip];
    if (m == 0) continue;
    const FpPoint& pt = ps.points[ip];

    // Local chart coordinates (u0, v0) and per-monomial exponent mapping.
    std::uint32_t u0, v0;
    int chart = 0;  // for P2: index of the normalizing coordinate
    if (bd.p2) {
      chart = -1;
      for (int i = 2; i >= 0; --i)
        if (pt.c[i] % p) chart = i;
      if (chart < 0) throw PointOnForbiddenLocus("zero coordinate tuple");
      const std::uint32_t inv = inverse_mod_p(pt.c[chart] % p, p);
      const int i1 = chart == 0 ? 1 : 0;
      const int i2 = chart == 2 ? 1 : 2;
      u0 = mulmod(pt.c[i1] % p, inv, p);
      v0 = mulmod(pt.c[i2] % p, inv, p);
    } else {
      if (pt.c[2] % p == 0)
        throw PointOnForbiddenLocus("point lies on the curve C");
      chart = pt.c[0] % p ? 0 : 1;
      if (pt.c[chart] % p == 0)
        throw PointOnForbiddenLocus("zero base coordinates");
      const std::uint32_t binv = inverse_mod_p(pt.c[chart] % p, p);
      u0 = mulmod(pt.c[1 - chart] % p, binv, p);
      // v0 = y1 / (x_chart^n y0) in the chart scaling.
      std::uint32_t scale = inverse_mod_p(pt.c[2] % p, p);
      for (int t = 0; t < bd.n; ++t) scale = mulmod(scale, binv, p);
      v0 = mulmod(pt.c[3] % p, scale, p);
    }

    std::vector<std::uint32_t> upow(maxbin + 1), vpow(maxbin + 1);
    upow[0] = vpow[0] = 1;
    for (int t = 1; t <= maxbin; ++t) {
      upow[t] = mulmod(upow[t - 1], u0, p);
      vpow[t] = mulmod(vpow[t - 1], v0, p);
    }

    for (std::size_t jc = 0; jc < basis.size(); ++jc) {
      int gu, gv;  // chart exponents of the dehomogenized monomial
      if (bd.p2) {
        const int e0 = static_cast<int>(bd.d) - basis[jc][0] - basis[jc][1];
        const int f[3] = {e0, basis[jc][0], basis[jc][1]};
        const int i1 = chart == 0 ? 1 : 0;
        const int i2 = chart == 2 ? 1 : 2;
        gu = f[i1];
        gv = f[i2];
      } else {
        const int e1 = basis[jc][0], k1 = basis[jc][1];
        const int e0 = static_cast<int>(bd.b) - bd.n * k1 - e1;
        gu = chart == 0 ? e1 : e0;
        gv = k1;
      }
      // Coefficient of u'^r v'^s in (u0+u')^gu (v0+v')^gv.
      std::size_t r = row0;
      for (int ord = 0; ord < m; ++ord)
        for (int rr = 0; rr <= ord; ++rr, ++r) {
          const int ss = ord - rr;
          if (rr > gu || ss > gv) continue;
          const std::uint32_t val =
              mulmod(mulmod(binom(gu, rr), upow[gu - rr], p),
                     mulmod(binom(gv, ss), vpow[gv - ss], p), p);
          mat.set(r, jc, val);
        }
    }
    row0 += std::size_t(m) * (m + 1) / 2;
  }
  return mat;
}

std::int64_t h0_interpolation(const DivisorClass& reduced, const PointSet& ps,
                              const OracleOptions& opts) {
  DenseMatrixFp mat = build_conditions(reduced, ps, opts.memory_budget_bytes);
  if (mat.rows() == 0) return static_cast<std::int64_t>(mat.cols());
  return static_cast<std::int64_t>(kernel_dim(std::move(mat), opts.threads));
}

Genericity certify_generic(const DivisorClass& d, std::int64_t computed_h0) {
  if (computed_h0 == 0) return Genericity::VanishesGenerically;
  const std::int64_t target = std::max<std::int64_t>(0, chi(d));
  if (computed_h0 == target) {
    const DivisorClass serre = d.surface()->canonical() - d;
    for (const auto& n : d.surface()->nef_witnesses()) {
      const DivisorClass nd = d.surface()->make(n);
      if (pair(nd, serre) < 0) return Genericity::ExactGeneric;
    }
  }
  return Genericity::UpperBoundOnly;
}

std::string genericity_name(Genericity g) {
  switch (g) {
    case Genericity::ExactGeneric:
      return "exact-generic";
    case Genericity::UpperBoundOnly:
      return "upper-bound-only";
    case Genericity::VanishesGenerically:
      return "vanishes-generically";
  }
  return "?";
}

}  // namespace pv
