#ifndef HSINT_POLY_HPP
#define HSINT_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hsint/monomial.hpp"
#include "hsint/prime_field.hpp"

namespace hsint {

// Sparse multivariate polynomial over F_p in canonical form: no stored zero
// coefficients, so equality is term-map equality.
class Poly {
 public:
  using TermMap = std::map<Monomial, uint32_t, LexGreater>;

  Poly(const PrimeField& f, size_t nvars) : f_(f), nvars_(nvars) {}

  static Poly zero(const PrimeField& f, size_t nvars) { return Poly(f, nvars); }
  static Poly constant(const PrimeField& f, size_t nvars, int64_t c);
  static Poly one(const PrimeField& f, size_t nvars) {
    return constant(f, nvars, 1);
  }
  static Poly variable(const PrimeField& f, size_t nvars, size_t v) {
    return from_monomial(f, Monomial::unit(nvars, v), 1);
  }
  static Poly from_monomial(const PrimeField& f, const Monomial& m, int64_t c);

  const PrimeField& field() const { return f_; }
  size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t num_terms() const { return t_.size(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

  // Leading data under lex with x1 > x2 > ...; requires nonzero.
  const Monomial& leading_monomial() const;
  uint32_t leading_coeff() const;

  uint64_t total_degree() const;  // 0 for the zero polynomial
  uint32_t degree_in(size_t var) const;

  uint32_t coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? 0 : it->second;
  }
  void add_term(const Monomial& m, int64_t c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(int64_t c) const;
  bool operator==(const Poly& o) const {
    return f_ == o.f_ && nvars_ == o.nvars_ && t_ == o.t_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(uint64_t e) const;  // square-and-multiply; pow(f, 0) = 1

  // Formal partial derivative; coefficients reduced mod p, so e.g. the
  // derivative of x^p vanishes.
  Poly partial(size_t var) const;

  // Coefficient of z^k in f(..., x_v + z, ...): the k-th divided partial.
  Poly divided_partial(size_t var, uint32_t k) const;

  // Single-divisor division in lex order: *this = q*h + r with no monomial
  // of r divisible by the leading monomial of h.
  struct DivRem;
  DivRem divrem(const Poly& h) const;

  // Canonical remainder; idempotent, and (*this - result) lies in <h>.
  Poly mod_reduce(const Poly& h) const;

  // Exact quotient if h divides *this, otherwise nullopt.
  std::optional<Poly> exact_div(const Poly& h) const;

  // No monomial divisible by the leading monomial of h.
  bool is_reduced_wrt(const Poly& h) const;

  // Substitute polynomials for the variables (args.size() == nvars).
  Poly subst(const std::vector<Poly>& args) const;

 private:
  PrimeField f_;
  size_t nvars_;
  TermMap t_;

  void check_ring(const Poly& o) const;
};

struct Poly::DivRem {
  Poly quot;
  Poly rem;
};

}  // namespace hsint

#endif
