#include "pv/heights.hpp"

#include <algorithm>

namespace pv {

std::string rheight_name(int v) {
  return v >= kRheightInfinity ? "inf" : std::to_string(v);
}

int rheight(const H0Solver& solver, const DivisorClass& l1,
            const DivisorClass& l2) {
  if (l1 == l2) return 0;
  const CohomologyTriple t = solver.triple(l2 - l1);
  if (t.h0 > 0) return 0;
  if (t.h1 > 0) return 1;
  if (t.h2 > 0) return 2;
  return kRheightInfinity;
}

RheightTable build_rheight_table(const H0Solver& solver,
                                 const std::vector<DivisorClass>& collection) {
  const int n = static_cast<int>(collection.size());
  if (n == 0) throw Error("empty collection");
  RheightTable t;
  t.n = n;
  t.grid.assign(std::size_t(n) * n, -1);
  t.closer.assign(std::size_t(n) * n, -1);
  const DivisorClass k = solver.surface()->canonical();
  for (int i = 0; i < n; ++i) {
    t.grid[std::size_t(i) * n + i] = 0;
    for (int j = i + 1; j < n; ++j)
      t.grid[std::size_t(i) * n + j] =
          rheight(solver, collection[i], collection[j]);
    for (int j = i; j < n; ++j)
      t.closer[std::size_t(i) * n + j] =
          rheight(solver, collection[j], collection[i] - k);
  }
  return t;
}

static HeightReport finish(int best, std::vector<int> chain) {
  HeightReport r;
  r.pseudoheight_ac = best;
  r.pseudoheight = rheight_add(best, 2);
  r.chain = std::move(chain);
  r.claim = r.chain.size() == 1 ? HeightClaim::EqualsPseudoheight
                                : HeightClaim::LowerBoundOnly;
  r.not_full = best > -2;
  return r;
}

HeightReport pseudoheight_ac(const H0Solver& solver,
                             const std::vector<DivisorClass>& collection) {
  const RheightTable t = build_rheight_table(solver, collection);
  const int n = t.n;
  int best = kRheightInfinity;
  std::vector<int> best_chain;
  // A length-0 minimizing chain is preferred so the height identification
  // fires whenever it applies.
  for (int s = 0; s < n; ++s) {
    std::vector<int> f(n, kRheightInfinity), prev(n, -1);
    f[s] = 0;
    for (int j = s; j < n; ++j) {
      if (j > s)
        for (int i = s; i < j; ++i) {
          if (f[i] >= kRheightInfinity || t.at(i, j) >= kRheightInfinity)
            continue;
          const int cand = f[i] + t.at(i, j) - 1;
          if (cand < f[j]) {
            f[j] = cand;
            prev[j] = i;
          }
        }
      if (f[j] >= kRheightInfinity || t.closer_at(s, j) >= kRheightInfinity)
        continue;
      const int total = f[j] + t.closer_at(s, j);
      const bool single = j == s;
      if (total < best || (total == best && single && best_chain.size() > 1)) {
        best = total;
        best_chain.clear();
        for (int c = j; c != -1; c = prev[c]) best_chain.push_back(c);
        std::reverse(best_chain.begin(), best_chain.end());
      }
    }
  }
  if (best_chain.empty()) return finish(kRheightInfinity, {});
  return finish(best, std::move(best_chain));
}

HeightReport pseudoheight_ac_exhaustive(
    const H0Solver& solver, const std::vector<DivisorClass>& collection) {
  const RheightTable t = build_rheight_table(solver, collection);
  const int n = t.n;
  if (n > 20) throw Error("exhaustive enumeration limited to 20 objects");
  int best = kRheightInfinity;
  std::vector<int> best_chain;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> chain;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) chain.push_back(i);
    int value = 0;
    for (std::size_t e = 0; e + 1 < chain.size(); ++e) {
      const int r = t.at(chain[e], chain[e + 1]);
      value = r >= kRheightInfinity ? kRheightInfinity
                                    : rheight_add(value, r - 1);
    }
    value = rheight_add(value, t.closer_at(chain.front(), chain.back()));
    if (value < best ||
        (value == best && chain.size() == 1 && best_chain.size() > 1)) {
      best = value;
      best_chain = std::move(chain);
    }
  }
  if (best >= kRheightInfinity) return finish(kRheightInfinity, {});
  return finish(best, std::move(best_chain));
}

bool all_homs_vanish(const H0Solver& solver,
                     const std::vector<DivisorClass>& collection) {
  const int n = static_cast<int>(collection.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (solver.h0(collection[j] - collection[i]).h0 != 0) return false;
  return true;
}

}  // namespace pv
