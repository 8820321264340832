#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace varmap::poly {

/// Number of monomials of degree <= max_degree in num_vars variables,
/// L(m,n) = C(m+n, n).  Throws std::overflow_error if the count does not
/// fit in int64 (never wraps silently).
std::int64_t count_monomials(int num_vars, int max_degree);

/// Immutable per-(m,n) tables for the dense graded-lexicographic monomial
/// basis: the flat index r runs over degree blocks 0..n, and inside a block
/// exponent tuples are ordered descending-lex (z1 before z2 before z3), so
/// the degree-1 monomials sit at indices 1..m in variable order.
///
/// Built once per (m,n) and shared read-only across threads.
class Basis {
 public:
  static const Basis& get(int num_vars, int max_degree);

  int num_vars() const { return num_vars_; }
  int max_degree() const { return max_degree_; }
  int size() const { return size_; }  // L(m,n)

  std::span<const int> exponents_of(int r) const;
  int degree_of(int r) const { return degree_[static_cast<std::size_t>(r)]; }
  /// Graded-lex rank of an exponent tuple; throws std::out_of_range when
  /// the total degree exceeds max_degree (or on negative entries).
  int index_of(std::span<const int> exponents) const;

  /// First flat index of the degree-d block (degree_begin(n+1) == size()).
  int degree_begin(int d) const { return block_begin_[static_cast<std::size_t>(d)]; }

  // Truncated-product table, grouped by result index: monomial i * monomial j
  // lands on result k for pair_begin(k) <= t < pair_begin(k+1).
  int pair_begin(int k) const { return pair_begin_[static_cast<std::size_t>(k)]; }
  std::span<const int> pair_left() const { return pair_i_; }
  std::span<const int> pair_right() const { return pair_j_; }

  // Evaluation chain: monomial r (r>=1) equals monomial chain_parent(r) times
  // variable chain_var(r), with chain_parent(r) < r.
  int chain_parent(int r) const { return chain_parent_[static_cast<std::size_t>(r)]; }
  int chain_var(int r) const { return chain_var_[static_cast<std::size_t>(r)]; }

  /// Fill vals[r] = product_b x[b]^(e_b(r)) for all r.  vals.size() == size().
  void monomial_values(std::span<const double> x, std::span<double> vals) const;

 private:
  Basis(int num_vars, int max_degree);

  int num_vars_, max_degree_, size_;
  std::vector<int> exps_;         // size_ * num_vars_, row-major
  std::vector<int> degree_;       // size_
  std::vector<int> block_begin_;  // max_degree_+2
  std::vector<int> pair_begin_;   // size_+1
  std::vector<int> pair_i_, pair_j_;
  std::vector<int> chain_parent_, chain_var_;
};

/// Dense truncated multivariate polynomial over a shared Basis.
/// Immutable in spirit: operations return new values or write into
/// caller-provided outputs; nothing mutates a shared Basis.
class Poly {
 public:
  explicit Poly(const Basis& basis)
      : basis_(&basis), coeffs_(static_cast<std::size_t>(basis.size()), 0.0) {}

  static Poly constant(const Basis& basis, double c);
  static Poly monomial(const Basis& basis, std::span<const int> exponents,
                       double c = 1.0);

  const Basis& basis() const { return *basis_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  double operator[](int r) const { return coeffs_[static_cast<std::size_t>(r)]; }
  double& operator[](int r) { return coeffs_[static_cast<std::size_t>(r)]; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  void set_zero();

 private:
  const Basis* basis_;
  std::vector<double> coeffs_;
};

// Coefficient-wise ring operations.  All binary operations require matching
// (m, n) and throw std::invalid_argument otherwise.
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly scale(const Poly& a, double c);

/// Truncated product: all result terms of degree > n are discarded.
Poly mul(const Poly& a, const Poly& b);
void mul_into(Poly& out, const Poly& a, const Poly& b);

/// Naive reference product (term-by-term with index_of lookups); kept for
/// validating the table-driven kernel and for the benchmark.
Poly mul_reference(const Poly& a, const Poly& b);

double eval(const Poly& p, std::span<const double> x);
/// Reference evaluation via std::pow per monomial.
double eval_reference(const Poly& p, std::span<const double> x);

/// Formal partial derivative with respect to variable var; same (m,n),
/// top-degree row of the result is zero.
Poly diff(const Poly& p, int var);

// Span-based kernels used by the variational integrator (same tables, no
// allocation).  All spans have length basis.size().
void mul_spans(const Basis& basis, std::span<const double> a,
               std::span<const double> b, std::span<double> out);
/// out += c * a  (plain fused accumulate)
void axpy(double c, std::span<const double> a, std::span<double> out);

/// Memoized powers H_b^j of a vector of polynomials sharing one basis;
/// lives across many product queries inside a single right-hand-side
/// evaluation, since recomputing powers dominates the build otherwise.
class PowerTable {
 public:
  explicit PowerTable(const Basis& basis);

  /// Point the table at a fresh H (coefficient rows of length basis.size());
  /// previously computed powers are invalidated, storage is reused.
  void reset(std::span<const std::vector<double>> h);

  /// Coefficients of H_b^j (j >= 1).
  std::span<const double> power(int b, int j);

  /// out = product_b H_b^(e_b(r)), truncated at max_degree.
  void product(int r, std::span<double> out);

 private:
  const Basis* basis_;
  std::span<const std::vector<double>> h_;
  // pow_[b][j-1] holds H_b^j once computed_[b][j-1] is set.
  std::vector<std::vector<std::vector<double>>> pow_;
  std::vector<std::vector<bool>> computed_;
  std::vector<double> tmp_;
};

/// G_r(H): the monomial r with each variable substituted by H_b.
Poly power_products(std::span<const Poly> h, int r);

}  // namespace varmap::poly
