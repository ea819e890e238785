// Acceptance gate: one line per criterion, PASS/FAIL, exit 0 iff all
// mandatory criteria pass. Criterion 10 is a soft performance target and
// is reported but never fails the gate.
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "pv/scenario.hpp"

using namespace pv;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << detail << std::endl;
}

template <typename Fn>
void criterion(int n, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

const GoldenCheck* find_check(const VerificationReport& r,
                              const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (b %= p; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// Independent derivative-based conditions count for P^2 (see the fat-point
// unit suite for the full discussion).
std::int64_t naive_h0_p2(std::int64_t d, const PointSet& ps,
                         const std::vector<int>& mult) {
  const std::uint32_t p = ps.prime;
  const auto basis = monomial_basis_p2(d);
  std::size_t rows = 0;
  for (int m : mult) rows += std::size_t(m) * (m + 1) / 2;
  if (rows == 0) return static_cast<std::int64_t>(basis.size());
  DenseMatrixFp mat(p, rows, basis.size());
  std::size_t row = 0;
  for (std::size_t q = 0; q < ps.points.size(); ++q) {
    const FpPoint& pt = ps.points[q];
    const std::uint64_t inv2 = inverse_mod_p(pt.c[2] % p, p);
    const std::uint64_t u0 = pt.c[0] * inv2 % p, v0 = pt.c[1] * inv2 % p;
    for (int r = 0; r < mult[q]; ++r)
      for (int s = 0; r + s < mult[q]; ++s, ++row)
        for (std::size_t c = 0; c < basis.size(); ++c) {
          const int e1 = basis[c][0], e2 = basis[c][1];
          const int gu = static_cast<int>(d) - e1 - e2, gv = e1;
          if (gu < r || gv < s) continue;
          std::uint64_t val = 1;
          for (int t = 0; t < r; ++t) val = val * ((gu - t) % p) % p;
          for (int t = 0; t < s; ++t) val = val * ((gv - t) % p) % p;
          val = val * pow_mod(u0, gu - r, p) % p;
          val = val * pow_mod(v0, gv - s, p) % p;
          mat.set(row, c, val);
        }
  }
  return static_cast<std::int64_t>(basis.size()) -
         static_cast<std::int64_t>(rank_mod_p(mat));
}

std::size_t naive_rank(std::vector<std::vector<std::uint64_t>> a,
                       std::uint32_t p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    const std::uint64_t inv =
        inverse_mod_p(static_cast<std::uint32_t>(a[rank][c] % p), p);
    for (auto& x : a[rank]) x = x % p * inv % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] % p == 0) continue;
      const std::uint64_t f = p - a[r][c] % p;
      for (std::size_t j = 0; j < cols; ++j)
        a[r][j] = (a[r][j] + f * (a[rank][j] % p)) % p;
    }
    ++rank;
  }
  return rank;
}

bool property_involutions() {
  struct Case {
    SurfacePtr s;
    Involution inv;
  };
  std::vector<Case> cases;
  {
    const SurfacePtr s = SurfaceLattice::blowup_p2(11);
    cases.push_back({s, Involution::canonical_reflection(s)});
  }
  {
    const ScenarioArtifacts alt = build_scenario("p2-10-alt");
    cases.push_back({alt.surface, *alt.involution});
  }
  std::mt19937_64 rng(0x5EED);
  std::uniform_int_distribution<std::int64_t> coeff(-40, 40);
  for (const auto& c : cases) {
    const DivisorClass k = c.s->canonical();
    if (c.inv.apply(k) != k) return false;
    for (int t = 0; t < 5000; ++t) {
      IntVec a(c.s->rank()), b(c.s->rank());
      for (int i = 0; i < c.s->rank(); ++i) a[i] = coeff(rng), b[i] = coeff(rng);
      const DivisorClass da = c.s->make(a), db = c.s->make(b);
      const DivisorClass ia = c.inv.apply(da), ib = c.inv.apply(db);
      if (c.inv.apply(ia) != da) return false;
      if (pair(ia, ib) != pair(da, db)) return false;
      if (chi(ia - ib) != chi(da - db)) return false;
    }
  }
  return true;
}

bool property_oracle() {
  std::mt19937_64 rng(777);
  for (int t = 0; t < 200; ++t) {
    const int npts = 1 + int(rng() % 5);
    const std::int64_t d = 1 + std::int64_t(rng() % 8);
    const SurfacePtr s = SurfaceLattice::blowup_p2(npts);
    std::vector<int> mult(npts);
    IntVec v = IntVec::Zero(npts + 1);
    v[0] = d;
    for (int i = 0; i < npts; ++i) {
      mult[i] = int(rng() % 4);
      v[i + 1] = -mult[i];
    }
    const PointSet ps = sample_points(*s, npts, 997, rng());
    if (h0_interpolation(s->make(v), ps) != naive_h0_p2(d, ps, mult))
      return false;
  }
  return true;
}

bool property_heights() {
  for (const std::string& id : {"p2-11", "f2-9", "p2-10-krah"}) {
    const ScenarioArtifacts art = build_scenario(id);
    OracleConfig cfg;
    cfg.points = resolve_points(art, {});
    const H0Solver solver(art.surface, std::move(cfg));
    const HeightReport dp = pseudoheight_ac(solver, art.reflected);
    const HeightReport ex = pseudoheight_ac_exhaustive(solver, art.reflected);
    if (dp.pseudoheight_ac != ex.pseudoheight_ac || dp.claim != ex.claim ||
        dp.not_full != ex.not_full)
      return false;
  }
  return true;
}

bool property_ffrank() {
  std::mt19937_64 rng(2024);
  for (const std::uint32_t p : {3u, 997u, 2147483629u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t rows = 1 + rng() % 64, cols = 1 + rng() % 64;
      DenseMatrixFp m(p, rows, cols);
      std::vector<std::vector<std::uint64_t>> copy(
          rows, std::vector<std::uint64_t>(cols));
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          m.set(i, j, rng());
          copy[i][j] = m.get(i, j);
        }
      if (rank_mod_p(m) != naive_rank(std::move(copy), p)) return false;
    }
  }
  return true;
}

bool property_dcritical() {
  for (int n = 0; n <= 8; ++n)
    if (d_critical(n) != monomial_basis_size_fn(n, 2, n + 2)) return false;
  return true;
}

}  // namespace

int main() {
  // Criteria 2 and 6 certify the same divisor classes; share oracle
  // results through the file cache when the caller has not set one.
  if (!std::getenv("PV_CACHE_DIR")) {
    char tmpl[] = "/tmp/pv-acceptance-XXXXXX";
    if (char* dir = mkdtemp(tmpl)) setenv("PV_CACHE_DIR", dir, 1);
  }

  criterion(1, [] {
    const auto t0 = Clock::now();
    const auto j =
        nlohmann::json::parse(emit_table(TableId::Table2, "json", {}));
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "Table 2: " << j.at("rows").size()
      << " rows, all h0 = 0 with matching reasons ("
      << j.at("pointset").get<std::string>() << ", " << secs << " s)";
    report(1, j.at("pass") == true && j.at("rows").size() == 26 && secs < 300,
           d.str());
  });

  criterion(3, [] {
    const auto j =
        nlohmann::json::parse(emit_table(TableId::Table3, "json", {}));
    std::ostringstream d;
    d << "Table 3: " << j.at("rows").size()
      << " rows of (chi,h0,h1,h2) match exactly";
    report(3, j.at("pass") == true && j.at("rows").size() == 17, d.str());
  });

  criterion(4, [] {
    const VerificationReport r = run_scenario("p2-11");
    const GoldenCheck* ac = find_check(r, "pseudoheight-ac");
    const GoldenCheck* hh = find_check(r, "hh2");
    std::ostringstream d;
    d << "p2-11: exceptional, completely orthogonal block, "
      << "pseudoheight 3 on a length-0 chain, HH^2 "
      << (hh ? hh->actual : "?") << " (" << r.seconds << " s)";
    report(4, r.pass && ac && ac->actual == "1" && hh && hh->actual == ">=14",
           d.str());
  });

  criterion(5, [] {
    const VerificationReport r = run_scenario("f2-9");
    const GoldenCheck* ac = find_check(r, "pseudoheight-ac");
    const GoldenCheck* hh = find_check(r, "hh2");
    std::ostringstream d;
    d << "f2-9: exceptional, pseudoheight 4, HH^2 "
      << (hh ? hh->actual : "?") << " (" << r.seconds << " s)";
    report(5, r.pass && ac && ac->actual == "2" && hh && hh->actual == "=13",
           d.str());
  });

  criterion(7, [] {
    const VerificationReport r = run_scenario("p2-10-krah");
    const GoldenCheck* h1t = find_check(r, "h1-tangent");
    std::ostringstream d;
    d << "p2-10-krah: exceptional, not full, h1(T_X) = "
      << (h1t ? h1t->actual : "?") << " (" << r.seconds << " s)";
    report(7, r.pass && h1t && h1t->actual == "12", d.str());
  });

  criterion(8, [] {
    const VerificationReport r = run_scenario("f4-9-control");
    const GoldenCheck* h0g = find_check(r, "h0-minus-G");
    std::ostringstream d;
    d << "f4-9-control: h0(-G) = " << (h0g ? h0g->actual : "?")
      << " >= 1, collection flagged non-exceptional";
    report(8, r.pass && h0g && h0g->actual == "8", d.str());
  });

  criterion(9, [] {
    const bool inv = property_involutions();
    const bool orc = property_oracle();
    const bool hts = property_heights();
    const bool ffr = property_ffrank();
    const bool dcr = property_dcritical();
    std::ostringstream d;
    d << "property suites: involutions(10^4) " << (inv ? "ok" : "FAIL")
      << ", oracle-vs-derivative(200) " << (orc ? "ok" : "FAIL")
      << ", dp-vs-exhaustive " << (hts ? "ok" : "FAIL")
      << ", rank-vs-naive(<=64) " << (ffr ? "ok" : "FAIL")
      << ", d-critical " << (dcr ? "ok" : "FAIL");
    report(9, inv && orc && hts && ffr && dcr, d.str());
  });

  // The heavy interpolation work: Table 1 and the alternate-reflection
  // scenario share certificates through the cache set up above.
  criterion(2, [] {
    ScenarioOptions opts;
    opts.threads = 8;
    const auto t0 = Clock::now();
    const auto j =
        nlohmann::json::parse(emit_table(TableId::Table1, "json", opts));
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "Table 1: " << j.at("rows").size()
      << " rows certified, all h0 = 0 with matching reasons (" << secs
      << " s)";
    report(2, j.at("pass") == true && j.at("rows").size() == 38 &&
               secs < 3600,
           d.str());
  });

  criterion(6, [] {
    ScenarioOptions opts;
    opts.threads = 8;
    const VerificationReport r = run_scenario("p2-10-alt", opts);
    std::ostringstream d;
    d << "p2-10-alt: reflected classes match closed forms, exceptional, "
         "all homs vanish, not full ("
      << r.seconds << " s)";
    report(6, r.pass && r.fullness == "not-full", d.str());
  });

  criterion(10, [] {
    const std::uint32_t p = 997;
    const std::size_t n = 4000;
    DenseMatrixFp m(p, n, n);
    std::mt19937_64 rng(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng() % p);
    const auto t0 = Clock::now();
    const std::size_t rank = rank_mod_p(m, 1);
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "bench rank 4000x4000 over F_997: rank " << rank << " in " << secs
      << " s (soft target < 60 s, informational)";
    report(10, true, d.str());
    if (secs >= 60) std::cout << "     note: soft target missed\n";
  });

  std::cout << (failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL")
            << " (" << failures << " failing criteria)" << std::endl;
  return failures == 0 ? 0 : 1;
}
