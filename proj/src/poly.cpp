#include "varmap/poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace varmap::poly {

std::int64_t count_monomials(int num_vars, int max_degree) {
  if (num_vars < 1) throw std::invalid_argument("count_monomials: num_vars must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("count_monomials: max_degree must be >= 0");
  // C(m+n, n) by the multiplicative formula, overflow-checked per step.
  __int128 acc = 1;
  for (int i = 1; i <= num_vars; ++i) {
    acc = acc * (max_degree + i) / i;  // exact: C(n+i, i) is integral
    if (acc > static_cast<__int128>(INT64_MAX))
      throw std::overflow_error("count_monomials: result exceeds int64");
  }
  return static_cast<std::int64_t>(acc);
}

namespace {

void enumerate_block(int num_vars, int degree, std::vector<int>& out) {
  // descending-lex within a degree block: highest leading exponent first
  std::vector<int> e(static_cast<std::size_t>(num_vars), 0);
  auto rec = [&](auto&& self, int var, int rem) -> void {
    if (var == num_vars - 1) {
      e[static_cast<std::size_t>(var)] = rem;
      out.insert(out.end(), e.begin(), e.end());
      return;
    }
    for (int k = rem; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = k;
      self(self, var + 1, rem - k);
    }
  };
  rec(rec, 0, degree);
}

}  // namespace

Basis::Basis(int num_vars, int max_degree)
    : num_vars_(num_vars), max_degree_(max_degree) {
  const std::int64_t L64 = count_monomials(num_vars, max_degree);
  if (L64 > (1 << 26)) throw std::invalid_argument("Basis: basis too large for dense storage");
  size_ = static_cast<int>(L64);

  block_begin_.assign(static_cast<std::size_t>(max_degree) + 2, 0);
  exps_.reserve(static_cast<std::size_t>(size_) * num_vars);
  for (int d = 0; d <= max_degree; ++d) {
    block_begin_[static_cast<std::size_t>(d)] = static_cast<int>(exps_.size()) / num_vars;
    enumerate_block(num_vars, d, exps_);
  }
  block_begin_[static_cast<std::size_t>(max_degree) + 1] = size_;

  degree_.resize(static_cast<std::size_t>(size_));
  for (int r = 0; r < size_; ++r) {
    int d = 0;
    for (int b = 0; b < num_vars; ++b) d += exps_[static_cast<std::size_t>(r) * num_vars + b];
    degree_[static_cast<std::size_t>(r)] = d;
  }

  // evaluation chain: drop one unit from the first nonzero exponent
  chain_parent_.assign(static_cast<std::size_t>(size_), 0);
  chain_var_.assign(static_cast<std::size_t>(size_), 0);
  std::vector<int> e(static_cast<std::size_t>(num_vars));
  for (int r = 1; r < size_; ++r) {
    auto er = exponents_of(r);
    std::copy(er.begin(), er.end(), e.begin());
    int b = 0;
    while (e[static_cast<std::size_t>(b)] == 0) ++b;
    e[static_cast<std::size_t>(b)] -= 1;
    chain_parent_[static_cast<std::size_t>(r)] = index_of(e);
    chain_var_[static_cast<std::size_t>(r)] = b;
  }

  // product table grouped by result index (two passes: count, fill)
  std::vector<int> result_of;
  result_of.reserve(static_cast<std::size_t>(size_) * 4);
  std::vector<int> counts(static_cast<std::size_t>(size_) + 1, 0);
  std::vector<std::array<int, 2>> pairs_tmp;
  std::vector<int> sum(static_cast<std::size_t>(num_vars));
  for (int i = 0; i < size_; ++i) {
    const int di = degree_[static_cast<std::size_t>(i)];
    for (int j = 0; j < size_; ++j) {
      if (di + degree_[static_cast<std::size_t>(j)] > max_degree) continue;
      auto ei = exponents_of(i);
      auto ej = exponents_of(j);
      for (int b = 0; b < num_vars; ++b) sum[static_cast<std::size_t>(b)] = ei[static_cast<std::size_t>(b)] + ej[static_cast<std::size_t>(b)];
      const int k = index_of(sum);
      counts[static_cast<std::size_t>(k)]++;
      pairs_tmp.push_back({i, j});
      result_of.push_back(k);
    }
  }
  pair_begin_.assign(static_cast<std::size_t>(size_) + 1, 0);
  for (int k = 0; k < size_; ++k)
    pair_begin_[static_cast<std::size_t>(k) + 1] = pair_begin_[static_cast<std::size_t>(k)] + counts[static_cast<std::size_t>(k)];
  pair_i_.resize(pairs_tmp.size());
  pair_j_.resize(pairs_tmp.size());
  std::vector<int> cursor(pair_begin_.begin(), pair_begin_.end() - 1);
  for (std::size_t t = 0; t < pairs_tmp.size(); ++t) {
    const int k = result_of[t];
    const int at = cursor[static_cast<std::size_t>(k)]++;
    pair_i_[static_cast<std::size_t>(at)] = pairs_tmp[t][0];
    pair_j_[static_cast<std::size_t>(at)] = pairs_tmp[t][1];
  }
}

const Basis& Basis::get(int num_vars, int max_degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Basis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{num_vars, max_degree}];
  if (!slot) slot.reset(new Basis(num_vars, max_degree));
  return *slot;
}

std::span<const int> Basis::exponents_of(int r) const {
  if (r < 0 || r >= size_) throw std::out_of_range("exponents_of: index out of range");
  return {exps_.data() + static_cast<std::size_t>(r) * num_vars_,
          static_cast<std::size_t>(num_vars_)};
}

int Basis::index_of(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != num_vars_)
    throw std::invalid_argument("index_of: wrong exponent count");
  int total = 0;
  for (int b = 0; b < num_vars_; ++b) {
    if (exponents[static_cast<std::size_t>(b)] < 0)
      throw std::out_of_range("index_of: negative exponent");
    total += exponents[static_cast<std::size_t>(b)];
  }
  if (total > max_degree_) throw std::out_of_range("index_of: degree exceeds max_degree");
  // rank within the degree-`total` block under descending lex: monomials with
  // a larger exponent at the current variable come first
  int rank = 0;
  int rem = total;
  for (int b = 0; b < num_vars_ - 1; ++b) {
    const int eb = exponents[static_cast<std::size_t>(b)];
    const int vars_after = num_vars_ - 1 - b;
    for (int v = rem; v > eb; --v) {
      // count of monomials in vars_after variables of degree exactly rem-v
      rank += static_cast<int>(count_monomials(vars_after, rem - v) -
                               (rem - v > 0 ? count_monomials(vars_after, rem - v - 1) : 0));
    }
    rem -= eb;
  }
  return block_begin_[static_cast<std::size_t>(total)] + rank;
}

void Basis::monomial_values(std::span<const double> x, std::span<double> vals) const {
  vals[0] = 1.0;
  for (int r = 1; r < size_; ++r)
    vals[static_cast<std::size_t>(r)] =
        vals[static_cast<std::size_t>(chain_parent_[static_cast<std::size_t>(r)])] *
        x[static_cast<std::size_t>(chain_var_[static_cast<std::size_t>(r)])];
}

Poly Poly::constant(const Basis& basis, double c) {
  Poly p(basis);
  p[0] = c;
  return p;
}

Poly Poly::monomial(const Basis& basis, std::span<const int> exponents, double c) {
  Poly p(basis);
  p[basis.index_of(exponents)] = c;
  return p;
}

void Poly::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), 0.0); }

namespace {
void require_same_basis(const Poly& a, const Poly& b, const char* what) {
  if (&a.basis() != &b.basis())
    throw std::invalid_argument(std::string(what) + ": operands have different (m, n)");
}
}  // namespace

Poly add(const Poly& a, const Poly& b) {
  require_same_basis(a, b, "add");
  Poly out(a.basis());
  for (int r = 0; r < a.size(); ++r) out[r] = a[r] + b[r];
  return out;
}

Poly sub(const Poly& a, const Poly& b) {
  require_same_basis(a, b, "sub");
  Poly out(a.basis());
  for (int r = 0; r < a.size(); ++r) out[r] = a[r] - b[r];
  return out;
}

Poly scale(const Poly& a, double c) {
  Poly out(a.basis());
  for (int r = 0; r < a.size(); ++r) out[r] = c * a[r];
  return out;
}

void mul_spans(const Basis& basis, std::span<const double> a,
               std::span<const double> b, std::span<double> out) {
  const auto pi = basis.pair_left();
  const auto pj = basis.pair_right();
  const int L = basis.size();
  for (int k = 0; k < L; ++k) {
    double acc = 0.0;
    const int hi = basis.pair_begin(k + 1);
    for (int t = basis.pair_begin(k); t < hi; ++t)
      acc += a[static_cast<std::size_t>(pi[static_cast<std::size_t>(t)])] *
             b[static_cast<std::size_t>(pj[static_cast<std::size_t>(t)])];
    out[static_cast<std::size_t>(k)] = acc;
  }
}

void axpy(double c, std::span<const double> a, std::span<double> out) {
  for (std::size_t r = 0; r < a.size(); ++r) out[r] += c * a[r];
}

void mul_into(Poly& out, const Poly& a, const Poly& b) {
  require_same_basis(a, b, "mul");
  require_same_basis(out, a, "mul");
  mul_spans(a.basis(), a.coeffs(), b.coeffs(), out.coeffs());
}

Poly mul(const Poly& a, const Poly& b) {
  require_same_basis(a, b, "mul");
  Poly out(a.basis());
  mul_spans(a.basis(), a.coeffs(), b.coeffs(), out.coeffs());
  return out;
}

Poly mul_reference(const Poly& a, const Poly& b) {
  require_same_basis(a, b, "mul_reference");
  const Basis& basis = a.basis();
  Poly out(basis);
  std::vector<int> sum(static_cast<std::size_t>(basis.num_vars()));
  for (int i = 0; i < basis.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < basis.size(); ++j) {
      if (b[j] == 0.0) continue;
      if (basis.degree_of(i) + basis.degree_of(j) > basis.max_degree()) continue;
      auto ei = basis.exponents_of(i);
      auto ej = basis.exponents_of(j);
      for (int v = 0; v < basis.num_vars(); ++v)
        sum[static_cast<std::size_t>(v)] = ei[static_cast<std::size_t>(v)] + ej[static_cast<std::size_t>(v)];
      out[basis.index_of(sum)] += a[i] * b[j];
    }
  }
  return out;
}

double eval(const Poly& p, std::span<const double> x) {
  const Basis& basis = p.basis();
  if (static_cast<int>(x.size()) != basis.num_vars())
    throw std::invalid_argument("eval: wrong point dimension");
  std::vector<double> vals(static_cast<std::size_t>(basis.size()));
  basis.monomial_values(x, vals);
  double acc = 0.0;
  for (int r = 0; r < basis.size(); ++r) acc += p[r] * vals[static_cast<std::size_t>(r)];
  return acc;
}

double eval_reference(const Poly& p, std::span<const double> x) {
  const Basis& basis = p.basis();
  double acc = 0.0;
  for (int r = 0; r < basis.size(); ++r) {
    if (p[r] == 0.0) continue;
    double term = p[r];
    auto e = basis.exponents_of(r);
    for (int b = 0; b < basis.num_vars(); ++b)
      term *= std::pow(x[static_cast<std::size_t>(b)], e[static_cast<std::size_t>(b)]);
    acc += term;
  }
  return acc;
}

Poly diff(const Poly& p, int var) {
  const Basis& basis = p.basis();
  if (var < 0 || var >= basis.num_vars()) throw std::invalid_argument("diff: bad variable index");
  Poly out(basis);
  std::vector<int> e(static_cast<std::size_t>(basis.num_vars()));
  for (int r = 0; r < basis.size(); ++r) {
    if (p[r] == 0.0) continue;
    auto er = basis.exponents_of(r);
    const int ev = er[static_cast<std::size_t>(var)];
    if (ev == 0) continue;
    std::copy(er.begin(), er.end(), e.begin());
    e[static_cast<std::size_t>(var)] -= 1;
    out[basis.index_of(e)] += static_cast<double>(ev) * p[r];
  }
  return out;
}

PowerTable::PowerTable(const Basis& basis)
    : basis_(&basis), tmp_(static_cast<std::size_t>(basis.size())) {}

void PowerTable::reset(std::span<const std::vector<double>> h) {
  h_ = h;
  const auto m = h.size();
  const auto n = static_cast<std::size_t>(basis_->max_degree());
  if (pow_.size() != m) {
    pow_.assign(m, {});
    computed_.assign(m, {});
  }
  for (std::size_t b = 0; b < m; ++b) {
    if (pow_[b].size() != n)
      pow_[b].assign(n, std::vector<double>(static_cast<std::size_t>(basis_->size())));
    computed_[b].assign(n, false);
  }
}

std::span<const double> PowerTable::power(int b, int j) {
  const auto bu = static_cast<std::size_t>(b);
  if (j == 1) return h_[bu];
  auto& slot = pow_[bu][static_cast<std::size_t>(j - 1)];
  if (!computed_[bu][static_cast<std::size_t>(j - 1)]) {
    mul_spans(*basis_, power(b, j - 1), h_[bu], slot);
    computed_[bu][static_cast<std::size_t>(j - 1)] = true;
  }
  return slot;
}

void PowerTable::product(int r, std::span<double> out) {
  auto e = basis_->exponents_of(r);
  std::fill(out.begin(), out.end(), 0.0);
  bool first = true;
  for (int b = 0; b < basis_->num_vars(); ++b) {
    const int eb = e[static_cast<std::size_t>(b)];
    if (eb == 0) continue;
    if (first) {
      auto pw = power(b, eb);
      std::copy(pw.begin(), pw.end(), out.begin());
      first = false;
    } else {
      std::copy(out.begin(), out.end(), tmp_.begin());
      mul_spans(*basis_, tmp_, power(b, eb), out);
    }
  }
  if (first) out[0] = 1.0;  // r is the constant monomial
}

Poly power_products(std::span<const Poly> h, int r) {
  if (h.empty()) throw std::invalid_argument("power_products: empty input");
  const Basis& basis = h[0].basis();
  for (const auto& hb : h) require_same_basis(hb, h[0], "power_products");
  std::vector<std::vector<double>> rows;
  rows.reserve(h.size());
  for (const auto& hb : h) rows.emplace_back(hb.coeffs().begin(), hb.coeffs().end());
  PowerTable table(basis);
  table.reset(rows);
  Poly out(basis);
  table.product(r, out.coeffs());
  return out;
}

}  // namespace varmap::poly
