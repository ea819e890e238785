#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pv/heights.hpp"
#include "pv/hochschild.hpp"
#include "pv/picard.hpp"
#include "pv/vanishing.hpp"

namespace pv {

struct ScenarioOptions {
  std::optional<std::uint32_t> prime;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> points_file;
  std::int64_t max_degree = -1;
  unsigned threads = 1;
};

// Surface, involution and collections of a named construction. The
// reflected collection is always recomputed from the involution; closed
// forms are used only as golden checks.
struct ScenarioArtifacts {
  std::string id;
  SurfacePtr surface;
  std::optional<Involution> involution;
  std::vector<DivisorClass> base;
  std::vector<DivisorClass> reflected;
  std::uint32_t default_prime = 0;
  std::string default_fixture;  // empty: deterministic sample
  std::uint64_t default_seed = 0;
};

std::vector<std::string> scenario_ids();
ScenarioArtifacts build_scenario(const std::string& id);
PointSet resolve_points(const ScenarioArtifacts& art,
                        const ScenarioOptions& opts);

struct GoldenCheck {
  std::string name;
  std::string expected;
  std::string actual;
  std::string paper_ref;
  bool pass = false;
};

struct DivisorCert {
  IntVec coeffs;
  CohomologyCertificate cert;
};

struct VerificationReport {
  std::string scenario;
  std::string surface;
  std::uint32_t prime = 0;
  std::string pointset;
  std::vector<IntVec> collection;
  bool numerically_exceptional = false;
  // Certificates deduplicated by divisor class.
  std::vector<DivisorCert> backward_homs;  // h0(L_j - L_i), i > j
  std::vector<DivisorCert> backward_ext2;  // h0(K - L_j + L_i), i > j
  std::vector<DivisorCert> forward_homs;   // h0(L_j - L_i), i < j
  std::optional<HeightReport> heights;
  std::optional<HHCertificate> hochschild;
  std::string fullness;  // "not-full" | "unknown" | "n/a"
  std::vector<GoldenCheck> checks;
  bool pass = false;
  double seconds = 0.0;

  std::string to_json() const;  // schema "pv-report/1"
};

VerificationReport run_scenario(const std::string& id,
                                const ScenarioOptions& opts = {});

// Appendix table reproduction.
enum class TableId { Table1, Table2, Table3 };

TableId table_id(const std::string& name);  // "table1" | "table2" | "table3"

struct TableRow {
  std::string label;       // divisor expression in the scenario's symbols
  std::string index_note;  // e.g. "i=8,9,10"
  std::string reason;      // "degree" | "exceptional" | "Macaulay2"
  std::vector<DivisorClass> divisors;  // expanded instances
  // Expected cohomology (Table 3 only).
  std::int64_t chi = 0, h0 = 0, h1 = 0, h2 = 0;
};

std::vector<TableRow> table_rows(TableId id);

std::string emit_table(TableId id, const std::string& format,
                       const ScenarioOptions& opts = {});

}  // namespace pv
