#include <sstream>

#include "json.hpp"
#include "pv/scenario.hpp"

namespace pv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string reason_of(H0Rule rule) {
  switch (rule) {
    case H0Rule::NefDegree:
      return "degree";
    case H0Rule::FixedComponentThenRule:
    case H0Rule::ExceptionalOnly:
      return "exceptional";
    case H0Rule::Interpolation:
      return "Macaulay2";
    case H0Rule::StandardFormSHGH:
      return "standard form";
    case H0Rule::Composite:
      return "composite";
  }
  return "?";
}

void append_term(std::ostream& out, bool& first, std::int64_t c,
                 const std::string& sym) {
  if (c == 0) return;
  if (c > 0 && !first) out << "+";
  if (c == -1)
    out << "-";
  else if (c != 1)
    out << c;
  out << sym;
  first = false;
}

// Pretty-printer matching the appendix conventions: exceptional classes are
// grouped (E'_1 = E_1+E_2 etc. for the 10-point plane scenario, sum E for
// the Hirzebruch scenario) with per-index deviations shown separately.
std::string fmt_grouped(const DivisorClass& d,
                        const std::vector<std::pair<std::string,
                                                    std::vector<int>>>& groups,
                        const std::vector<std::string>& base_syms) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t b = 0; b < base_syms.size(); ++b)
    append_term(out, first, d.coeff(static_cast<int>(b)), base_syms[b]);
  for (const auto& [sym, idx] : groups) {
    // Majority coefficient within the group.
    std::map<std::int64_t, int> freq;
    for (int i : idx) ++freq[d.coeff(i)];
    std::int64_t common = d.coeff(idx.front());
    int best = 0;
    for (auto [v, n] : freq)
      if (n > best) {
        best = n;
        common = v;
      }
    append_term(out, first, common, sym);
    for (int i : idx)
      if (d.coeff(i) != common)
        append_term(out, first, d.coeff(i) - common,
                    "E_" + std::to_string(i - (base_syms.size() - 1)));
  }
  if (first) out << "0";
  return out.str();
}

std::string fmt_table1(const DivisorClass& d) {
  return fmt_grouped(d,
                     {{"E'_1", {1, 2}},
                      {"E'_3", {3, 4, 5, 6, 7}},
                      {"E'_8", {8, 9, 10}}},
                     {"H"});
}

std::string fmt_table2(const DivisorClass& d) {
  std::vector<int> all;
  for (int i = 2; i < d.rank(); ++i) all.push_back(i);
  return fmt_grouped(d, {{"sumE", all}}, {"C", "F"});
}

TableRow row(std::string label, std::string note, std::string reason,
             std::vector<DivisorClass> divisors) {
  TableRow r;
  r.label = std::move(label);
  r.index_note = std::move(note);
  r.reason = std::move(reason);
  r.divisors = std::move(divisors);
  return r;
}

std::vector<TableRow> table1_rows() {
  const ScenarioArtifacts art = build_scenario("p2-10-alt");
  const auto& l = art.reflected;
  const DivisorClass k = art.surface->canonical();
  const DivisorClass f = l[11];
  auto d = [&](int i) { return l[i]; };
  const std::vector<int> g1 = {1, 2}, g3 = {3, 4, 5, 6, 7}, g8 = {8, 9, 10};
  auto map1 = [&](const std::vector<int>& idx, auto fn) {
    std::vector<DivisorClass> out;
    for (int i : idx) out.push_back(fn(i));
    return out;
  };
  auto map2 = [&](const std::vector<int>& is, const std::vector<int>& js,
                  auto fn) {
    std::vector<DivisorClass> out;
    for (int i : is)
      for (int j : js)
        if (i != j) out.push_back(fn(i, j));
    return out;
  };
  auto pairs_lt = [&](const std::vector<int>& g, auto fn) {
    std::vector<DivisorClass> out;
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b)
        out.push_back(fn(g[a], g[b]));
    return out;
  };
  const std::vector<int> all10 = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  std::vector<TableRow> rows;
  rows.push_back(row("-F", "", "Macaulay2", {-f}));
  rows.push_back(row("F+K_X", "", "degree", {f + k}));
  rows.push_back(row("-2F+D_i", "i=8,9,10", "Macaulay2",
                     map1(g8, [&](int i) { return d(i) - f * 2; })));
  rows.push_back(row("2F-D_i+K_X", "i=8,9,10", "degree",
                     map1(g8, [&](int i) { return f * 2 - d(i) + k; })));
  rows.push_back(row("-2F+D_i", "i=3,...,7", "Macaulay2",
                     map1(g3, [&](int i) { return d(i) - f * 2; })));
  rows.push_back(row("2F-D_i+K_X", "i=3,...,7", "degree",
                     map1(g3, [&](int i) { return f * 2 - d(i) + k; })));
  rows.push_back(row("-2F+D_i", "i=1,2", "Macaulay2",
                     map1(g1, [&](int i) { return d(i) - f * 2; })));
  rows.push_back(row("2F-D_i+K_X", "i=1,2", "degree",
                     map1(g1, [&](int i) { return f * 2 - d(i) + k; })));
  rows.push_back(row("-2F", "", "Macaulay2", {-(f * 2)}));
  rows.push_back(row("2F+K_X", "", "degree", {f * 2 + k}));
  rows.push_back(row("-F+D_i", "i=8,9,10", "Macaulay2",
                     map1(g8, [&](int i) { return d(i) - f; })));
  rows.push_back(row("F-D_i+K_X", "i=8,9,10", "degree",
                     map1(g8, [&](int i) { return f - d(i) + k; })));
  rows.push_back(row("-F+D_i", "i=3,...,7", "Macaulay2",
                     map1(g3, [&](int i) { return d(i) - f; })));
  rows.push_back(row("F-D_i+K_X", "i=3,...,7", "degree",
                     map1(g3, [&](int i) { return f - d(i) + k; })));
  rows.push_back(row("-F+D_i", "i=1,2", "Macaulay2",
                     map1(g1, [&](int i) { return d(i) - f; })));
  rows.push_back(row("F-D_i+K_X", "i=1,2", "degree",
                     map1(g1, [&](int i) { return f - d(i) + k; })));
  rows.push_back(row("D_j-D_i+K_X", "i<j in {8,9,10}", "degree",
                     pairs_lt(g8, [&](int i, int j) { return d(j) - d(i) + k; })));
  rows.push_back(row("D_i-D_j", "i=3,...,7, j=8,9,10", "Macaulay2",
                     map2(g3, g8, [&](int i, int j) { return d(i) - d(j); })));
  rows.push_back(row("D_j-D_i+K_X", "i=3,...,7, j=8,9,10", "degree",
                     map2(g3, g8, [&](int i, int j) { return d(j) - d(i) + k; })));
  rows.push_back(row("D_i-D_j", "i=1,2, j=8,9,10", "degree",
                     map2(g1, g8, [&](int i, int j) { return d(i) - d(j); })));
  rows.push_back(row("D_j-D_i+K_X", "i=1,2, j=8,9,10", "Macaulay2",
                     map2(g1, g8, [&](int i, int j) { return d(j) - d(i) + k; })));
  rows.push_back(row("-D_i", "i=8,9,10", "Macaulay2",
                     map1(g8, [&](int i) { return -d(i); })));
  rows.push_back(row("D_i+K_X", "i=8,9,10", "degree",
                     map1(g8, [&](int i) { return d(i) + k; })));
  rows.push_back(row("D_j-D_i+K_X", "i<j in {3,...,7}", "degree",
                     pairs_lt(g3, [&](int i, int j) { return d(j) - d(i) + k; })));
  rows.push_back(row("D_i-D_j", "i=1,2, j=3,...,7", "degree",
                     map2(g1, g3, [&](int i, int j) { return d(i) - d(j); })));
  rows.push_back(row("D_j-D_i+K_X", "i=1,2, j=3,...,7", "Macaulay2",
                     map2(g1, g3, [&](int i, int j) { return d(j) - d(i) + k; })));
  rows.push_back(row("-D_i", "i=3,...,7", "Macaulay2",
                     map1(g3, [&](int i) { return -d(i); })));
  rows.push_back(row("D_i+K_X", "i=3,...,7", "degree",
                     map1(g3, [&](int i) { return d(i) + k; })));
  rows.push_back(row("D_2-D_1+K_X", "", "degree", {d(2) - d(1) + k}));
  rows.push_back(row("-D_i", "i=1,2", "Macaulay2",
                     map1(g1, [&](int i) { return -d(i); })));
  rows.push_back(row("D_i+K_X", "i=1,2", "degree",
                     map1(g1, [&](int i) { return d(i) + k; })));
  rows.push_back(row("D_i", "i=1,...,10", "degree",
                     map1(all10, [&](int i) { return d(i); })));
  rows.push_back(row("F", "", "degree", {f}));
  rows.push_back(row("2F", "", "degree", {f * 2}));
  rows.push_back(row("D_j-D_i", "i=1,2, j=3,...,7", "Macaulay2",
                     map2(g1, g3, [&](int i, int j) { return d(j) - d(i); })));
  rows.push_back(row("F-D_i", "i=1,...,10", "degree",
                     map1(all10, [&](int i) { return f - d(i); })));
  rows.push_back(row("2F-D_i", "i=1,...,10", "degree",
                     map1(all10, [&](int i) { return f * 2 - d(i); })));
  rows.push_back(row("D_j-D_i", "i=3,...,7, j=8,9,10", "degree",
                     map2(g3, g8, [&](int i, int j) { return d(j) - d(i); })));
  return rows;
}

std::vector<TableRow> table2_rows() {
  const ScenarioArtifacts art = build_scenario("f2-9");
  const auto& l = art.reflected;
  const DivisorClass k = art.surface->canonical();
  const DivisorClass g = l[10], s2g = l[11], s3g = l[12];
  auto d = [&](int i) { return l[i]; };
  std::vector<int> all9 = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto map1 = [&](auto fn) {
    std::vector<DivisorClass> out;
    for (int i : all9) out.push_back(fn(i));
    return out;
  };
  auto map2 = [&](auto fn) {
    std::vector<DivisorClass> out;
    for (int i : all9)
      for (int j : all9)
        if (i != j) out.push_back(fn(i, j));
    return out;
  };

  std::vector<TableRow> rows;
  rows.push_back(row("-G", "", "Macaulay2", {-g}));
  rows.push_back(row("K_X+G", "", "degree", {k + g}));
  rows.push_back(row("-S-2G", "", "Macaulay2", {-s2g}));
  rows.push_back(row("K_X+S+2G", "", "degree", {k + s2g}));
  rows.push_back(row("D_j-S-3G", "j=1,...,9", "Macaulay2",
                     map1([&](int j) { return d(j) - s3g; })));
  rows.push_back(row("K_X-D_i+S+3G", "i=1,...,9", "degree",
                     map1([&](int i) { return k - d(i) + s3g; })));
  rows.push_back(row("-S-3G", "", "Macaulay2", {-s3g}));
  rows.push_back(row("K_X+S+3G", "", "degree", {k + s3g}));
  rows.push_back(row("-S-G", "", "Macaulay2", {-(s2g - g)}));
  rows.push_back(row("K_X+S+G", "", "degree", {k + s2g - g}));
  rows.push_back(row("D_j-S-2G", "j=1,...,9", "Macaulay2",
                     map1([&](int j) { return d(j) - s2g; })));
  rows.push_back(row("K_X-D_i+S+2G", "i=1,...,9", "degree",
                     map1([&](int i) { return k - d(i) + s2g; })));
  rows.push_back(row("D_j-G", "j=1,...,9", "Macaulay2",
                     map1([&](int j) { return d(j) - g; })));
  rows.push_back(row("K_X-D_i+G", "i=1,...,9", "degree",
                     map1([&](int i) { return k - d(i) + g; })));
  rows.push_back(row("D_j-D_i", "i != j", "exceptional",
                     map2([&](int i, int j) { return d(j) - d(i); })));
  rows.push_back(row("K_X-D_j+D_i", "i != j", "degree",
                     map2([&](int i, int j) { return k - d(j) + d(i); })));
  rows.push_back(row("-D_j", "j=1,...,9", "Macaulay2",
                     map1([&](int j) { return -d(j); })));
  rows.push_back(row("K_X+D_i", "i=1,...,9", "degree",
                     map1([&](int i) { return k + d(i); })));
  rows.push_back(row("D_i", "i=1,...,9", "degree", map1(d)));
  rows.push_back(row("G", "", "degree", {g}));
  rows.push_back(row("S+2G", "", "degree", {s2g}));
  rows.push_back(row("S+3G", "", "degree", {s3g}));
  rows.push_back(row("G-D_i", "i=1,...,9", "degree",
                     map1([&](int i) { return g - d(i); })));
  rows.push_back(row("S+2G-D_i", "i=1,...,9", "degree",
                     map1([&](int i) { return s2g - d(i); })));
  rows.push_back(row("S+3G-D_i", "i=1,...,9", "degree",
                     map1([&](int i) { return s3g - d(i); })));
  rows.push_back(row("S+G", "", "degree", {s2g - g}));
  return rows;
}

std::vector<TableRow> table3_rows() {
  const ScenarioArtifacts art = build_scenario("f2-9");
  const auto& l = art.reflected;
  const DivisorClass k = art.surface->canonical();
  const DivisorClass g = l[10], s2g = l[11], s3g = l[12];
  const DivisorClass sg = s2g - g;
  auto d = [&](int i) { return l[i]; };
  std::vector<int> all9 = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto map1 = [&](auto fn) {
    std::vector<DivisorClass> out;
    for (int i : all9) out.push_back(fn(i));
    return out;
  };
  auto quad = [](TableRow r, std::int64_t chi, std::int64_t h0,
                 std::int64_t h1, std::int64_t h2) {
    r.chi = chi;
    r.h0 = h0;
    r.h1 = h1;
    r.h2 = h2;
    return r;
  };

  std::vector<TableRow> rows;
  rows.push_back(quad(row("D_i", "i=1,...,9", "", map1(d)), 1, 0, 0, 1));
  rows.push_back(quad(row("G", "", "", {g}), 2, 0, 0, 2));
  rows.push_back(quad(row("G-D_i", "i=1,...,9", "",
                          map1([&](int i) { return g - d(i); })),
                      1, 0, 0, 1));
  rows.push_back(quad(row("S+G", "", "", {sg}), 2, 0, 0, 2));
  rows.push_back(quad(row("S+2G", "", "", {s2g}), 4, 0, 0, 4));
  rows.push_back(quad(row("S+3G", "", "", {s3g}), 6, 0, 0, 6));
  rows.push_back(quad(row("S+2G-D_i", "i=1,...,9", "",
                          map1([&](int i) { return s2g - d(i); })),
                      3, 0, 0, 3));
  rows.push_back(quad(row("S+3G-D_i", "i=1,...,9", "",
                          map1([&](int i) { return s3g - d(i); })),
                      5, 0, 0, 5));
  rows.push_back(quad(row("-K_X", "", "", {-k}), 0, 0, 0, 0));
  rows.push_back(quad(row("-K_X-D_i", "i=1,...,9", "",
                          map1([&](int i) { return -k - d(i); })),
                      -2, 0, 2, 0));
  rows.push_back(quad(row("-K_X-G", "", "", {-k - g}), -3, 0, 3, 0));
  rows.push_back(quad(row("-K_X-S-2G", "", "", {-k - s2g}), -5, 0, 5, 0));
  rows.push_back(quad(row("-K_X-S-3G", "", "", {-k - s3g}), -7, 0, 7, 0));
  rows.push_back(quad(row("-K_X-G+D_i", "i=1,...,9", "",
                          map1([&](int i) { return -k - g + d(i); })),
                      -2, 0, 2, 0));
  rows.push_back(quad(row("-K_X-S-2G+D_i", "i=1,...,9", "",
                          map1([&](int i) { return -k - s2g + d(i); })),
                      -4, 0, 4, 0));
  rows.push_back(quad(row("-K_X-S-3G+D_i", "i=1,...,9", "",
                          map1([&](int i) { return -k - s3g + d(i); })),
                      -6, 0, 6, 0));
  rows.push_back(quad(row("-K_X-S-G", "", "", {-k - sg}), -3, 0, 3, 0));
  return rows;
}

}  // namespace

TableId table_id(const std::string& name) {
  if (name == "table1") return TableId::Table1;
  if (name == "table2") return TableId::Table2;
  if (name == "table3") return TableId::Table3;
  throw Error("unknown table: " + name);
}

std::vector<TableRow> table_rows(TableId id) {
  switch (id) {
    case TableId::Table1:
      return table1_rows();
    case TableId::Table2:
      return table2_rows();
    case TableId::Table3:
      return table3_rows();
  }
  throw Error("unknown table");
}

std::string emit_table(TableId id, const std::string& format,
                       const ScenarioOptions& opts) {
  if (format != "json" && format != "md")
    throw Error("format must be json or md");
  const std::string scen = id == TableId::Table1 ? "p2-10-alt" : "f2-9";
  const ScenarioArtifacts art = build_scenario(scen);
  OracleConfig cfg;
  cfg.points = resolve_points(art, opts);
  cfg.max_degree = opts.max_degree;
  cfg.threads = opts.threads;
  H0Solver solver(art.surface, std::move(cfg));
  auto fmt = id == TableId::Table1 ? fmt_table1 : fmt_table2;

  const std::vector<TableRow> rows = table_rows(id);
  ordered_json jrows = ordered_json::array();
  std::ostringstream md;
  if (id == TableId::Table3) {
    md << "| Divisor | (i,j) | chi | h0 | h1 | h2 | Status |\n";
    md << "|---|---|---|---|---|---|---|\n";
  } else {
    md << "| Divisor | (i,j) | Expression in terms of "
       << (id == TableId::Table1 ? "(H,E_i)" : "(C,F,E_i)")
       << " | Reason for vanishing | Status |\n";
    md << "|---|---|---|---|---|\n";
  }

  bool all_ok = true;
  for (const auto& r : rows) {
    ordered_json jr;
    jr["divisor"] = r.label;
    jr["indices"] = r.index_note;
    jr["expression"] = fmt(r.divisors.front());
    bool ok = true;
    if (id == TableId::Table3) {
      // Full cohomology; all instances of a parametrized row must agree.
      CohomologyTriple t = solver.triple(r.divisors.front());
      std::int64_t c = chi(r.divisors.front());
      for (const auto& dv : r.divisors) {
        const CohomologyTriple ti = solver.triple(dv);
        ok = ok && ti.h0 == t.h0 && ti.h1 == t.h1 && ti.h2 == t.h2 &&
             chi(dv) == c;
      }
      ok = ok && c == r.chi && t.h0 == r.h0 && t.h1 == r.h1 && t.h2 == r.h2;
      jr["chi"] = c;
      jr["h0"] = t.h0;
      jr["h1"] = t.h1;
      jr["h2"] = t.h2;
      jr["expected"] = {r.chi, r.h0, r.h1, r.h2};
      md << "| " << r.label << " | " << r.index_note << " | " << c << " | "
         << t.h0 << " | " << t.h1 << " | " << t.h2 << " | "
         << (ok ? "ok" : "MISMATCH") << " |\n";
    } else {
      CohomologyCertificate cert = solver.h0(r.divisors.front());
      std::string reason = reason_of(cert.rule);
      for (const auto& dv : r.divisors) {
        const CohomologyCertificate ci = solver.h0(dv);
        ok = ok && ci.h0 == 0 && reason_of(ci.rule) == reason;
      }
      ok = ok && reason == r.reason;
      jr["h0"] = cert.h0;
      jr["reason"] = reason;
      jr["expected_reason"] = r.reason;
      md << "| " << r.label << " | " << r.index_note << " | "
         << fmt(r.divisors.front()) << " | " << reason << " | "
         << (ok ? "ok" : "MISMATCH") << " |\n";
    }
    jr["pass"] = ok;
    all_ok = all_ok && ok;
    jrows.push_back(jr);
  }

  if (format == "md") return md.str();
  ordered_json j;
  j["schema"] = "pv-table/1";
  j["table"] = scen == "p2-10-alt" ? "table1"
               : id == TableId::Table2 ? "table2"
                                       : "table3";
  j["prime"] = solver.config().points->prime;
  j["pointset"] = solver.config().points->provenance;
  j["rows"] = jrows;
  j["pass"] = all_ok;
  return j.dump(2);
}

}  // namespace pv
