#include "varmap/map.hpp"

#include <stdexcept>

namespace varmap {

void eval_map(const PolyMap& map, std::span<const double> zeta,
              std::span<double> out, std::span<double> vals_workspace) {
  const poly::Basis& basis = map.basis();
  if (static_cast<int>(zeta.size()) != basis.num_vars())
    throw std::invalid_argument("eval_map: wrong point dimension");
  basis.monomial_values(zeta, vals_workspace);
  for (std::size_t a = 0; a < map.components.size(); ++a) {
    const auto c = map.components[a].coeffs();
    double acc = 0.0;
    for (std::size_t r = 0; r < c.size(); ++r) acc += c[r] * vals_workspace[r];
    out[a] = acc;
  }
}

std::vector<double> eval_map(const PolyMap& map, std::span<const double> zeta) {
  std::vector<double> vals(static_cast<std::size_t>(map.basis().size()));
  std::vector<double> out(map.components.size());
  eval_map(map, zeta, out, vals);
  return out;
}

}  // namespace varmap
