#include "hsint/trunc_series.hpp"

#include "hsint/intarith.hpp"

namespace hsint {

void TruncSeries::check(const TruncSeries& o) const {
  if (f_ != o.f_ || nvars_ != o.nvars_)
    throw RingMismatch("series from different rings");
  if (length() != o.length())
    throw LengthMismatch("series of different lengths");
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  check(o);
  TruncSeries r(*this);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
  return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
  check(o);
  TruncSeries r(*this);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] - o.c_[i];
  return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  check(o);
  TruncSeries r(f_, nvars_, length());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; i + j < c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
  }
  return r;
}

TruncSeries TruncSeries::pow(uint64_t e) const {
  // Split e = s * p^a and use that raising to the p-th power acts
  // slot-wise in characteristic p.
  TruncSeries base(*this);
  if (e == 0) return TruncSeries::from_poly(Poly::one(f_, nvars_), length());
  uint32_t p = f_.p();
  while (e % p == 0) {
    TruncSeries fr(f_, nvars_, base.length());
    for (size_t i = 0; i * p <= base.length(); ++i) {
      if (!base.c_[i].is_zero()) fr.c_[i * p] = base.c_[i].pow(p);
    }
    base = fr;
    e /= p;
  }
  TruncSeries acc = TruncSeries::from_poly(Poly::one(f_, nvars_), length());
  TruncSeries sq = base;
  while (e > 0) {
    if (e & 1) acc = acc * sq;
    e >>= 1;
    if (e > 0) sq = sq * sq;
  }
  return acc;
}

TruncSeries TruncSeries::scale_mu(const Poly& a) const {
  TruncSeries r(f_, nvars_, length());
  r.c_[0] = c_[0];
  Poly apow = Poly::one(f_, nvars_);
  for (size_t i = 1; i < c_.size(); ++i) {
    apow = apow * a;
    if (!c_[i].is_zero()) r.c_[i] = c_[i] * apow;
  }
  return r;
}

TruncSeries TruncSeries::truncate(size_t n) const {
  if (n > length()) throw LengthExceeded("truncation beyond series length");
  TruncSeries r(f_, nvars_, n);
  for (size_t i = 0; i <= n; ++i) r.c_[i] = c_[i];
  return r;
}

TruncSeries TruncSeries::extend(size_t n) const {
  if (n < length()) throw LengthExceeded("extension below series length");
  TruncSeries r(f_, nvars_, n);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
  return r;
}

TruncSeries TruncSeries::mu_shift(size_t k) const {
  TruncSeries r(f_, nvars_, length());
  for (size_t i = 0; i + k <= length(); ++i) r.c_[i + k] = c_[i];
  return r;
}

TruncSeries TruncSeries::mu_power_subst(size_t k, size_t new_length) const {
  TruncSeries r(f_, nvars_, new_length);
  for (size_t i = 0; i < c_.size(); ++i) {
    size_t j = i * k;
    if (j > new_length) break;
    r.c_[j] = c_[i];
  }
  return r;
}

}  // namespace hsint
