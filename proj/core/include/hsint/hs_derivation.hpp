#ifndef HSINT_HS_DERIVATION_HPP
#define HSINT_HS_DERIVATION_HPP

#include <vector>

#include "hsint/trunc_series.hpp"

namespace hsint {

// Finite-length Hasse-Schmidt derivation of a polynomial ring, stored as the
// substitution homomorphism: one truncated image series per variable, with
// the mu^0 slot equal to that variable.  Components on arbitrary polynomials
// are recovered by substitution, which makes the Leibniz law hold by
// construction.
class HSDerivation {
 public:
  static HSDerivation identity(const PrimeField& f, size_t nvars, size_t length);

  // Length-1 derivation with images x_v + delta(x_v)*mu.
  static HSDerivation from_derivation(const std::vector<Poly>& delta_images);

  // images[v].slot(0) must equal x_v.
  static HSDerivation from_images(std::vector<TruncSeries> images);

  const PrimeField& field() const { return f_; }
  size_t nvars() const { return nvars_; }
  size_t length() const { return len_; }
  const TruncSeries& image(size_t v) const { return img_.at(v); }

  // Per-variable coefficient of mu^i in the images.
  std::vector<Poly> slot_coeffs(size_t i) const;
  void set_slot(size_t i, const std::vector<Poly>& coeffs);  // i >= 1

  // Substitutes the images into f and truncates; slot i of the result is
  // the i-th component applied to f.
  TruncSeries apply(const Poly& f) const;
  Poly component(const Poly& f, size_t i) const;

  // The derivation extracted from slot 1.
  std::vector<Poly> first_component() const { return slot_coeffs(1); }

  // Group product: components (this o other)_n = sum_{i+j=n} this_i o other_j.
  HSDerivation compose(const HSDerivation& other) const;
  HSDerivation invert() const;

  // The sequence (a^i D_i), realized by mu -> a*mu in the images.
  HSDerivation scale(const Poly& a) const;

  HSDerivation truncate(size_t n) const;       // 1 <= n <= length
  HSDerivation extend_freely(size_t n) const;  // n > length, zero padding

  bool operator==(const HSDerivation& o) const {
    return f_ == o.f_ && nvars_ == o.nvars_ && len_ == o.len_ && img_ == o.img_;
  }
  bool operator!=(const HSDerivation& o) const { return !(*this == o); }

 private:
  HSDerivation(const PrimeField& f, size_t nvars, size_t length)
      : f_(f), nvars_(nvars), len_(length) {}

  PrimeField f_;
  size_t nvars_;
  size_t len_;
  std::vector<TruncSeries> img_;
};

}  // namespace hsint

#endif
