#include "hsint/intarith.hpp"

namespace hsint {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PadicSplit padic_split(uint64_t n, uint64_t p) {
  if (n == 0) throw DegenerateInput("p-adic valuation of 0 is undefined");
  if (!is_prime(p)) throw InvalidField("not a prime: " + std::to_string(p));
  uint32_t alpha = 0;
  while (n % p == 0) {
    n /= p;
    ++alpha;
  }
  return PadicSplit{alpha, n};
}

uint32_t binom_mod_p(uint64_t n, uint64_t k, uint32_t p) {
  if (k > n) return 0;
  // Lucas: product of digit binomials base p.
  uint64_t acc = 1;
  while (n > 0 || k > 0) {
    uint64_t nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    // small binomial of digits, computed mod p
    uint64_t b = 1;
    for (uint64_t i = 0; i < kd; ++i) {
      b = (b * ((nd - i) % p)) % p;
      // divide by i+1 via inverse
      uint64_t inv = 1, base = (i + 1) % p, e = p - 2;
      while (e > 0) {
        if (e & 1) inv = (inv * base) % p;
        base = (base * base) % p;
        e >>= 1;
      }
      b = (b * inv) % p;
    }
    acc = (acc * b) % p;
    n /= p;
    k /= p;
  }
  return static_cast<uint32_t>(acc);
}

uint32_t multinomial_mod_p(const std::vector<uint64_t>& parts, uint32_t p) {
  // (j0 + ... + jl)! / (j0! ... jl!) as a telescoping product of binomials:
  // binom(j0, j0) * binom(j0+j1, j1) * ...
  uint64_t total = 0;
  uint64_t acc = 1;
  for (uint64_t part : parts) {
    total += part;
    acc = (acc * binom_mod_p(total, part, p)) % p;
    if (acc == 0) return 0;
  }
  return static_cast<uint32_t>(acc);
}

}  // namespace hsint
