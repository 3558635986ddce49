#ifndef HSINT_PRIME_FIELD_HPP
#define HSINT_PRIME_FIELD_HPP

#include <cstdint>
#include <string>

#include "hsint/errors.hpp"
#include "hsint/intarith.hpp"

namespace hsint {

// Arithmetic in F_p with canonical residues in {0, ..., p-1}.
class PrimeField {
 public:
  explicit PrimeField(uint32_t p) : p_(p) {
    if (!is_prime(p)) {
      throw InvalidField("not a prime: " + std::to_string(p));
    }
  }

  uint32_t p() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((uint64_t(a) * b) % p_);
  }
  uint32_t pow(uint32_t a, uint64_t e) const {
    uint64_t base = a % p_, acc = 1;
    while (e > 0) {
      if (e & 1) acc = (acc * base) % p_;
      base = (base * base) % p_;
      e >>= 1;
    }
    return static_cast<uint32_t>(acc);
  }
  uint32_t inv(uint32_t a) const {
    if (a % p_ == 0) throw NoInverse("no inverse of 0 mod " + std::to_string(p_));
    return pow(a, p_ - 2);
  }
  uint32_t reduce(int64_t v) const {
    int64_t r = v % int64_t(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

 private:
  uint32_t p_;
};

}  // namespace hsint

#endif
