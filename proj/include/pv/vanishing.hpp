#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "pv/fatpoints.hpp"
#include "pv/picard.hpp"

namespace pv {

enum class H0Rule {
  NefDegree,
  FixedComponentThenRule,
  StandardFormSHGH,
  ExceptionalOnly,
  Interpolation,
  Composite,
};

std::string rule_name(H0Rule r);

struct CohomologyCertificate {
  std::int64_t h0 = 0;
  H0Rule rule = H0Rule::Composite;
  Genericity genericity = Genericity::UpperBoundOnly;
  // Set when rule == Interpolation.
  std::uint32_t prime = 0;
  std::string pointset;
};

struct CohomologyTriple {
  std::int64_t h0 = 0, h1 = 0, h2 = 0;
  CohomologyCertificate cert0, cert2;
};

// True iff some nef witness pairs negatively with D, forcing h^0(D) = 0.
bool nef_degree_test(const DivisorClass& d);

// Strips forced fixed components: exceptional curves E_i with positive
// coefficient (negative restriction degree), and on Hirzebruch blowups the
// (-n)-curve C while D.C < 0. Preserves h^0.
DivisorClass fixed_component_reduce(const DivisorClass& d);

// P2 blowups only: d > 0, d >= m_1 >= ... >= m_n >= 0 after sorting, and
// d - m_1 - m_2 - m_3 >= 0.
bool standard_form(const DivisorClass& d);

// h^0 = max{0, chi} when D is in standard form with all m_i <= 11.
std::optional<std::int64_t> shgh_h0(const DivisorClass& d);

struct OracleConfig {
  std::optional<PointSet> points;  // required for the interpolation layer
  bool enabled = true;
  std::int64_t max_degree = -1;  // reject oracle calls above this; -1 = off
  unsigned threads = 1;
  std::size_t memory_budget_bytes = DenseMatrixFp::kDefaultBudget;
};

// Layered h^0 decision procedure with a shared memoization table for the
// oracle layer. Thread-safe. Honors the PV_CACHE_DIR environment variable
// as a persistent cache for oracle results.
class H0Solver {
 public:
  H0Solver(SurfacePtr surface, OracleConfig cfg);

  const SurfacePtr& surface() const { return surface_; }
  const OracleConfig& config() const { return cfg_; }

  CohomologyCertificate h0(const DivisorClass& d) const;
  // h2 via Serre duality, h1 from chi; h1 < 0 is a hard error.
  CohomologyTriple triple(const DivisorClass& d) const;

 private:
  std::int64_t oracle_h0(const DivisorClass& reduced) const;

  SurfacePtr surface_;
  OracleConfig cfg_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::int64_t> memo_;
};

}  // namespace pv
