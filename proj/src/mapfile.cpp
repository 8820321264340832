#include "varmap/mapfile.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace varmap::io {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string format_double17(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::scientific, 16);
  if (ec != std::errc{}) throw std::runtime_error("format_double17 failed");
  return std::string(buf, ptr);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void save_map(const PolyMap& map, std::ostream& out, const std::string& timestamp) {
  out << "varmap-map v1\n";
  out << "m " << map.num_vars << "\n";
  out << "n " << map.max_degree << "\n";
  out << "expansion";
  for (double v : map.expansion_point) out << ' ' << format_double17(v);
  out << "\n";
  out << "beta " << format_double17(map.params.beta) << "\n";
  out << "epsilon " << format_double17(map.params.epsilon) << "\n";
  out << "omega_d " << format_double17(map.params.omega_d) << "\n";
  out << "T " << format_double17(map.period) << "\n";
  out << "steps " << map.build_steps << "\n";
  out << "built " << (timestamp.empty() ? utc_timestamp() : timestamp) << "\n";

  std::size_t count = 0;
  for (const auto& comp : map.components)
    for (int r = 0; r < comp.size(); ++r)
      if (comp[r] != 0.0) ++count;
  out << "coeffs " << count << "\n";
  const poly::Basis& basis = map.basis();
  for (std::size_t a = 0; a < map.components.size(); ++a) {
    const auto& comp = map.components[a];
    for (int r = 0; r < comp.size(); ++r) {
      if (comp[r] == 0.0) continue;
      out << (a + 1);
      for (int e : basis.exponents_of(r)) out << ' ' << e;
      out << ' ' << format_double17(comp[r]) << "\n";
    }
  }
  if (!out) throw std::runtime_error("save_map: write failed");
}

void save_map_file(const PolyMap& map, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_map: cannot open '" + path + "' for writing");
  save_map(map, out);
  out.flush();
  if (!out) throw std::runtime_error("save_map: write to '" + path + "' failed");
}

namespace {

double parse_double(const std::string& tok, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw std::runtime_error(std::string("load_map: bad number in ") + what + ": '" + tok + "'");
  return v;
}

long long parse_int(const std::string& tok, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw std::runtime_error(std::string("load_map: bad integer in ") + what + ": '" + tok + "'");
  return v;
}

}  // namespace

PolyMap load_map(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "varmap-map v1")
    throw std::runtime_error("load_map: not a varmap-map v1 file");

  PolyMap map;
  long long coeff_count = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (key == "m") {
      map.num_vars = static_cast<int>(parse_int(toks.at(0), "m"));
    } else if (key == "n") {
      map.max_degree = static_cast<int>(parse_int(toks.at(0), "n"));
    } else if (key == "expansion") {
      map.expansion_point.clear();
      for (const auto& t : toks) map.expansion_point.push_back(parse_double(t, "expansion"));
    } else if (key == "beta") {
      map.params.beta = parse_double(toks.at(0), "beta");
    } else if (key == "epsilon") {
      map.params.epsilon = parse_double(toks.at(0), "epsilon");
    } else if (key == "omega_d") {
      map.params.omega_d = parse_double(toks.at(0), "omega_d");
    } else if (key == "T") {
      map.period = parse_double(toks.at(0), "T");
    } else if (key == "steps") {
      map.build_steps = static_cast<int>(parse_int(toks.at(0), "steps"));
    } else if (key == "built") {
      // informational
    } else if (key == "coeffs") {
      coeff_count = parse_int(toks.at(0), "coeffs");
      break;
    } else {
      throw std::runtime_error("load_map: unknown header key '" + key + "'");
    }
  }
  if (map.num_vars < 1 || map.max_degree < 1)
    throw std::runtime_error("load_map: missing or invalid m/n header");
  if (static_cast<int>(map.expansion_point.size()) != map.num_vars)
    throw std::runtime_error("load_map: expansion point size does not match m");
  if (coeff_count < 0) throw std::runtime_error("load_map: missing coeffs section");

  const poly::Basis& basis = poly::Basis::get(map.num_vars, map.max_degree);
  map.components.assign(static_cast<std::size_t>(map.num_vars), poly::Poly(basis));
  std::vector<std::vector<bool>> seen(
      static_cast<std::size_t>(map.num_vars),
      std::vector<bool>(static_cast<std::size_t>(basis.size()), false));

  std::vector<int> exps(static_cast<std::size_t>(map.num_vars));
  for (long long row = 0; row < coeff_count; ++row) {
    if (!std::getline(in, line))
      throw std::runtime_error("load_map: truncated coefficient section");
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    const int a = static_cast<int>(parse_int(tok, "component")) - 1;
    if (a < 0 || a >= map.num_vars)
      throw std::runtime_error("load_map: component out of range: " + line);
    for (int b = 0; b < map.num_vars; ++b) {
      if (!(ls >> tok)) throw std::runtime_error("load_map: short coefficient row: " + line);
      exps[static_cast<std::size_t>(b)] = static_cast<int>(parse_int(tok, "exponent"));
    }
    if (!(ls >> tok)) throw std::runtime_error("load_map: missing coefficient: " + line);
    const double value = parse_double(tok, "coefficient");
    int r = 0;
    try {
      r = basis.index_of(exps);
    } catch (const std::out_of_range&) {
      throw std::runtime_error("load_map: exponents exceed the stated order: " + line);
    }
    if (seen[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)])
      throw std::runtime_error("load_map: duplicate coefficient row: " + line);
    seen[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)] = true;
    map.components[static_cast<std::size_t>(a)][r] = value;
  }
  return map;
}

PolyMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_map: cannot open '" + path + "'");
  return load_map(in);
}

}  // namespace varmap::io
