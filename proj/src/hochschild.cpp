#include "pv/hochschild.hpp"

#include <algorithm>

namespace pv {

std::int64_t h1_tangent_p2_blowup(int n) {
  if (n < 8) throw Error("h1(T_X) formula requires at least 8 points");
  return 2 * std::int64_t(n) - 8;
}

std::int64_t d_critical(int n) {
  if (n < 0) throw Error("Hirzebruch degree must be nonnegative");
  return 6 + std::max(3, n);
}

std::int64_t h1_tangent_hirzebruch_blowup(int n) {
  if (n < 1) throw Error("h1(T_X) formula requires Hirzebruch degree >= 1");
  return n <= 3 ? 11 + n : 5 + 3 * std::int64_t(n);
}

std::int64_t h1_tangent(const SurfaceLattice& surface) {
  if (surface.kind() == SurfaceKind::BlowupP2)
    return h1_tangent_p2_blowup(surface.n_points());
  const int n = surface.hirzebruch_degree();
  if (surface.n_points() != d_critical(n))
    throw Error("h1(T_X) formula requires exactly " +
                std::to_string(d_critical(n)) + " blown-up points");
  return h1_tangent_hirzebruch_blowup(n);
}

HHCertificate hh2_statement(const std::string& scenario,
                            const SurfaceLattice& surface,
                            const HeightReport& heights) {
  HHCertificate cert;
  cert.scenario = scenario;
  cert.h1_tangent = h1_tangent(surface);
  cert.value = cert.h1_tangent;
  if (heights.pseudoheight >= 4) {
    cert.kind = HH2Kind::Exact;
    cert.justification = HHJustification::HeightAtLeast4;
  } else if (heights.pseudoheight == 3 &&
             heights.claim == HeightClaim::EqualsPseudoheight) {
    cert.kind = HH2Kind::LowerBound;
    cert.justification = HHJustification::HeightEquals3;
  } else {
    throw Error("insufficient height for an HH^2 statement");
  }
  return cert;
}

}  // namespace pv
