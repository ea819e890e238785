#include "pv/vanishing.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace pv {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::optional<std::int64_t> cache_lookup(const std::string& key) {
  const char* dir = std::getenv("PV_CACHE_DIR");
  if (!dir) return std::nullopt;
  std::ostringstream path;
  path << dir << "/pv-" << std::hex << fnv1a(key) << ".json";
  std::ifstream in(path.str());
  if (!in) return std::nullopt;
  try {
    nlohmann::json j;
    in >> j;
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    return j.at("h0").get<std::int64_t>();
  } catch (...) {
    return std::nullopt;
  }
}

void cache_store(const std::string& key, std::int64_t h0) {
  const char* dir = std::getenv("PV_CACHE_DIR");
  if (!dir) return;
  std::ostringstream path;
  path << dir << "/pv-" << std::hex << fnv1a(key) << ".json";
  std::ofstream out(path.str());
  if (!out) return;
  nlohmann::json j;
  j["key"] = key;
  j["h0"] = h0;
  out << j.dump() << "\n";
}

}  // namespace

std::string rule_name(H0Rule r) {
  switch (r) {
    case H0Rule::NefDegree:
      return "nef-degree";
    case H0Rule::FixedComponentThenRule:
      return "fixed-component";
    case H0Rule::StandardFormSHGH:
      return "standard-form";
    case H0Rule::ExceptionalOnly:
      return "exceptional-only";
    case H0Rule::Interpolation:
      return "interpolation";
    case H0Rule::Composite:
      return "composite";
  }
  return "?";
}

bool nef_degree_test(const DivisorClass& d) {
  const auto& s = *d.surface();
  for (const auto& n : s.nef_witnesses())
    if (pair(s.make(n), d) < 0) return true;
  return false;
}

DivisorClass fixed_component_reduce(const DivisorClass& d) {
  const auto& s = *d.surface();
  const int base = s.kind() == SurfaceKind::BlowupP2 ? 1 : 2;
  DivisorClass r = d;
  for (int iter = 0; iter < 100000; ++iter) {
    bool changed = false;
    IntVec c = r.coeffs();
    for (int i = base; i < s.rank(); ++i)
      if (c[i] > 0) {
        c[i] = 0;  // strip the E_i fixed part: restriction degree < 0
        changed = true;
      }
    r = s.make(std::move(c));
    if (s.kind() == SurfaceKind::BlowupHirzebruch) {
      const DivisorClass cneg = s.basis(0);
      while (pair(r, cneg) < 0) {
        r = r - cneg;
        changed = true;
        if (++iter >= 100000) break;
      }
    }
    if (!changed) return r;
  }
  throw Error("fixed-component reduction did not terminate");
}

bool standard_form(const DivisorClass& d) {
  const auto& s = *d.surface();
  if (s.kind() != SurfaceKind::BlowupP2)
    throw Error("standard form is defined for P2 blowups only");
  const std::int64_t deg = d.coeff(0);
  if (deg <= 0) return false;
  std::vector<std::int64_t> m;
  for (int i = 0; i < s.n_points(); ++i) m.push_back(-d.coeff(1 + i));
  std::sort(m.rbegin(), m.rend());
  if (m.front() > deg || m.back() < 0) return false;
  std::int64_t top = 0;
  for (std::size_t i = 0; i < m.size() && i < 3; ++i) top += m[i];
  return deg - top >= 0;
}

std::optional<std::int64_t> shgh_h0(const DivisorClass& d) {
  if (!standard_form(d)) return std::nullopt;
  const auto& s = *d.surface();
  for (int i = 0; i < s.n_points(); ++i)
    if (-d.coeff(1 + i) > 11) return std::nullopt;
  return std::max<std::int64_t>(0, chi(d));
}

H0Solver::H0Solver(SurfacePtr surface, OracleConfig cfg)
    : surface_(std::move(surface)), cfg_(std::move(cfg)) {
  if (!surface_) throw Error("solver without a surface");
  if (cfg_.points) {
    const bool p2 = surface_->kind() == SurfaceKind::BlowupP2;
    if ((cfg_.points->kind == SurfaceKind::BlowupP2) != p2 ||
        (!p2 && cfg_.points->hirzebruch_degree != surface_->hirzebruch_degree()))
      throw SurfaceMismatch{};
    if (static_cast<int>(cfg_.points->points.size()) != surface_->n_points())
      throw Error("point set size does not match the number of blown-up points");
  }
}

std::int64_t H0Solver::oracle_h0(const DivisorClass& reduced) const {
  if (!cfg_.enabled)
    throw OracleUnavailable("interpolation oracle disabled for " +
                            reduced.to_string());
  if (!cfg_.points)
    throw OracleUnavailable("no point set configured for " +
                            reduced.to_string());
  const bool p2 = surface_->kind() == SurfaceKind::BlowupP2;
  const std::int64_t deg =
      p2 ? reduced.coeff(0) : reduced.coeff(0) + reduced.coeff(1);
  if (cfg_.max_degree >= 0 && deg > cfg_.max_degree)
    throw OracleUnavailable("class " + reduced.to_string() + " of degree " +
                            std::to_string(deg) +
                            " exceeds the oracle degree limit " +
                            std::to_string(cfg_.max_degree));

  const std::string key = surface_->describe() + "/" + reduced.to_string() +
                          "@" + cfg_.points->cache_key();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  if (auto cached = cache_lookup(key)) {
    std::lock_guard<std::mutex> lock(mu_);
    memo_[key] = *cached;
    return *cached;
  }
  OracleOptions opts;
  opts.threads = cfg_.threads;
  opts.memory_budget_bytes = cfg_.memory_budget_bytes;
  const std::int64_t value = h0_interpolation(reduced, *cfg_.points, opts);
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_[key] = value;
  }
  cache_store(key, value);
  return value;
}

CohomologyCertificate H0Solver::h0(const DivisorClass& d) const {
  if (!d.surface()->same_surface(*surface_)) throw SurfaceMismatch{};
  CohomologyCertificate cert;
  const DivisorClass reduced = fixed_component_reduce(d);
  const bool stripped = reduced != d;

  // Trivially decided reduced classes: the zero class, and degree-zero
  // classes with a residual multiplicity.
  const bool p2 = surface_->kind() == SurfaceKind::BlowupP2;
  const bool degree_zero =
      p2 ? reduced.coeff(0) == 0 : reduced.coeff(0) == 0 && reduced.coeff(1) == 0;
  if (degree_zero) {
    cert.h0 = reduced.is_zero() ? 1 : 0;
    cert.rule = stripped ? H0Rule::FixedComponentThenRule : H0Rule::ExceptionalOnly;
    cert.genericity = cert.h0 ? Genericity::ExactGeneric
                              : Genericity::VanishesGenerically;
    return cert;
  }

  if (nef_degree_test(reduced)) {
    cert.h0 = 0;
    cert.rule = H0Rule::NefDegree;
    cert.genericity = Genericity::VanishesGenerically;
    return cert;
  }

  if (p2) {
    if (auto v = shgh_h0(reduced)) {
      cert.h0 = *v;
      cert.rule = H0Rule::StandardFormSHGH;
      cert.genericity = *v ? Genericity::ExactGeneric
                           : Genericity::VanishesGenerically;
      return cert;
    }
  }

  cert.h0 = oracle_h0(reduced);
  cert.rule = H0Rule::Interpolation;
  cert.genericity = certify_generic(reduced, cert.h0);
  cert.prime = cfg_.points->prime;
  cert.pointset = cfg_.points->provenance;
  return cert;
}

CohomologyTriple H0Solver::triple(const DivisorClass& d) const {
  CohomologyTriple t;
  t.cert0 = h0(d);
  t.cert2 = h0(surface_->canonical() - d);
  t.h0 = t.cert0.h0;
  t.h2 = t.cert2.h0;
  const std::int64_t c = chi(d);
  t.h1 = checked_sub(checked_add(t.h0, t.h2), c);
  if (t.h1 < 0)
    throw InconsistentCohomology("h0 + h2 - chi = " + std::to_string(t.h1) +
                                 " < 0 for " + d.to_string());
  return t;
}

}  // namespace pv
