#pragma once

#include <iosfwd>
#include <string>

#include "varmap/map.hpp"

namespace varmap::io {

/// Plain-text map format, version line "varmap-map v1" first.  Header keys:
/// m, n, expansion (q_bd p_bd omega_bd), beta, epsilon, omega_d, T, steps,
/// built (timestamp).  Body: "coeffs <count>" then one row per nonzero
/// coefficient, "component e1 .. em coefficient" with the component 1-based
/// and the coefficient printed with 17 significant digits, so loads
/// reproduce every coefficient bit-exactly.  Exponents are explicit: files
/// do not depend on the internal monomial ordering.  Zero coefficients are
/// omitted; loaders treat missing rows as zero.
void save_map(const PolyMap& map, std::ostream& out,
              const std::string& timestamp = {});
void save_map_file(const PolyMap& map, const std::string& path);

PolyMap load_map(std::istream& in);
PolyMap load_map_file(const std::string& path);

/// "2026-08-11T09:00:00Z"-style UTC stamp for the header.
std::string utc_timestamp();

/// Shortest round-trip decimal form (CSV fields).
std::string format_double(double v);
/// 17-significant-digit scientific form (map files).
std::string format_double17(double v);

}  // namespace varmap::io
