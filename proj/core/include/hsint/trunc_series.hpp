#ifndef HSINT_TRUNC_SERIES_HPP
#define HSINT_TRUNC_SERIES_HPP

#include <vector>

#include "hsint/poly.hpp"

namespace hsint {

// Element of R[[mu]] / <mu^(m+1)>: exactly m+1 coefficient slots.  The
// length is part of the identity of the value.
class TruncSeries {
 public:
  TruncSeries(const PrimeField& f, size_t nvars, size_t length)
      : f_(f), nvars_(nvars), c_(length + 1, Poly::zero(f, nvars)) {}

  static TruncSeries from_poly(const Poly& p, size_t length) {
    TruncSeries s(p.field(), p.nvars(), length);
    s.c_[0] = p;
    return s;
  }

  const PrimeField& field() const { return f_; }
  size_t nvars() const { return nvars_; }
  size_t length() const { return c_.size() - 1; }

  const Poly& slot(size_t i) const { return c_.at(i); }
  void set_slot(size_t i, const Poly& p) { c_.at(i) = p; }

  bool operator==(const TruncSeries& o) const {
    return f_ == o.f_ && nvars_ == o.nvars_ && c_ == o.c_;
  }
  bool operator!=(const TruncSeries& o) const { return !(*this == o); }

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator*(const TruncSeries& o) const;
  TruncSeries pow(uint64_t e) const;

  // Substitute mu -> a*mu: slot i is scaled by a^i.
  TruncSeries scale_mu(const Poly& a) const;

  TruncSeries truncate(size_t n) const;     // n <= length
  TruncSeries extend(size_t n) const;       // n >= length, zero padding
  TruncSeries mu_shift(size_t k) const;     // multiply by mu^k

  // Substitute mu -> mu^k.
  TruncSeries mu_power_subst(size_t k, size_t new_length) const;

 private:
  PrimeField f_;
  size_t nvars_;
  std::vector<Poly> c_;

  void check(const TruncSeries& o) const;
};

}  // namespace hsint

#endif
