#include "hsint/hs_derivation.hpp"

#include <map>

namespace hsint {

HSDerivation HSDerivation::identity(const PrimeField& f, size_t nvars,
                                    size_t length) {
  if (length < 1) throw DegenerateInput("length must be at least 1");
  HSDerivation d(f, nvars, length);
  for (size_t v = 0; v < nvars; ++v) {
    d.img_.push_back(
        TruncSeries::from_poly(Poly::variable(f, nvars, v), length));
  }
  return d;
}

HSDerivation HSDerivation::from_derivation(const std::vector<Poly>& delta) {
  if (delta.empty()) throw DegenerateInput("no variables");
  const PrimeField& f = delta[0].field();
  size_t nvars = delta.size();
  HSDerivation d = identity(f, nvars, 1);
  for (size_t v = 0; v < nvars; ++v) {
    if (delta[v].nvars() != nvars) throw RingMismatch("bad derivation arity");
    d.img_[v].set_slot(1, delta[v]);
  }
  return d;
}

HSDerivation HSDerivation::from_images(std::vector<TruncSeries> images) {
  if (images.empty()) throw DegenerateInput("no variables");
  const PrimeField& f = images[0].field();
  size_t nvars = images.size();
  size_t length = images[0].length();
  HSDerivation d(f, nvars, length);
  for (size_t v = 0; v < nvars; ++v) {
    if (images[v].length() != length)
      throw LengthMismatch("image series of different lengths");
    if (images[v].slot(0) != Poly::variable(f, nvars, v))
      throw DegenerateInput("image series must start at its variable");
    d.img_.push_back(std::move(images[v]));
  }
  return d;
}

std::vector<Poly> HSDerivation::slot_coeffs(size_t i) const {
  std::vector<Poly> out;
  out.reserve(nvars_);
  for (size_t v = 0; v < nvars_; ++v) out.push_back(img_[v].slot(i));
  return out;
}

void HSDerivation::set_slot(size_t i, const std::vector<Poly>& coeffs) {
  if (i < 1 || i > len_) throw LengthExceeded("slot out of range");
  for (size_t v = 0; v < nvars_; ++v) img_[v].set_slot(i, coeffs[v]);
}

TruncSeries HSDerivation::apply(const Poly& f) const {
  if (f.nvars() != nvars_ || f.field() != f_)
    throw RingMismatch("polynomial from another ring");
  TruncSeries acc(f_, nvars_, len_);
  // power cache per variable, built against ascending exponents
  std::vector<std::map<uint32_t, TruncSeries>> cache(nvars_);
  auto power = [&](size_t v, uint32_t e) -> const TruncSeries& {
    auto it = cache[v].find(e);
    if (it != cache[v].end()) return it->second;
    TruncSeries val = img_[v].pow(e);
    return cache[v].emplace(e, std::move(val)).first->second;
  };
  for (const auto& [m, c] : f.terms()) {
    TruncSeries term =
        TruncSeries::from_poly(Poly::constant(f_, nvars_, int64_t(c)), len_);
    for (size_t v = 0; v < nvars_; ++v) {
      if (m.exp(v) > 0) term = term * power(v, m.exp(v));
    }
    acc = acc + term;
  }
  return acc;
}

Poly HSDerivation::component(const Poly& f, size_t i) const {
  if (i > len_) throw LengthExceeded("component index beyond length");
  return apply(f).slot(i);
}

HSDerivation HSDerivation::compose(const HSDerivation& other) const {
  if (f_ != other.f_ || nvars_ != other.nvars_)
    throw RingMismatch("derivations on different rings");
  if (len_ != other.len_)
    throw LengthMismatch("compose requires equal lengths");
  // phi_{D o E}(x) = ~phi_D(phi_E(x)) with mu fixed: map each coefficient
  // of E's image through phi_D and shift.
  std::vector<TruncSeries> images;
  images.reserve(nvars_);
  for (size_t v = 0; v < nvars_; ++v) {
    TruncSeries acc(f_, nvars_, len_);
    for (size_t j = 0; j <= len_; ++j) {
      const Poly& coeff = other.img_[v].slot(j);
      if (coeff.is_zero()) continue;
      acc = acc + apply(coeff).mu_shift(j);
    }
    images.push_back(acc);
  }
  return from_images(std::move(images));
}

HSDerivation HSDerivation::invert() const {
  // Solve slot-by-slot: the correction at slot n is exactly the slot-n
  // coefficient of the current composition with the candidate.
  HSDerivation inv = identity(f_, nvars_, len_);
  for (size_t n = 1; n <= len_; ++n) {
    HSDerivation comp = compose(inv);
    std::vector<Poly> fix;
    fix.reserve(nvars_);
    for (size_t v = 0; v < nvars_; ++v) {
      fix.push_back(inv.img_[v].slot(n) - comp.img_[v].slot(n));
    }
    inv.set_slot(n, fix);
  }
  return inv;
}

HSDerivation HSDerivation::scale(const Poly& a) const {
  std::vector<TruncSeries> images;
  images.reserve(nvars_);
  for (size_t v = 0; v < nvars_; ++v) images.push_back(img_[v].scale_mu(a));
  return from_images(std::move(images));
}

HSDerivation HSDerivation::truncate(size_t n) const {
  if (n == 0) throw DegenerateInput("cannot truncate to length 0");
  if (n > len_) throw LengthExceeded("truncation beyond length");
  std::vector<TruncSeries> images;
  images.reserve(nvars_);
  for (size_t v = 0; v < nvars_; ++v) images.push_back(img_[v].truncate(n));
  return from_images(std::move(images));
}

HSDerivation HSDerivation::extend_freely(size_t n) const {
  if (n < len_) throw LengthExceeded("extension below current length");
  std::vector<TruncSeries> images;
  images.reserve(nvars_);
  for (size_t v = 0; v < nvars_; ++v) images.push_back(img_[v].extend(n));
  return from_images(std::move(images));
}

}  // namespace hsint
