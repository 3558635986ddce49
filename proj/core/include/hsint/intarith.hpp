#ifndef HSINT_INTARITH_HPP
#define HSINT_INTARITH_HPP

#include <cstdint>
#include <vector>

#include "hsint/errors.hpp"

namespace hsint {

bool is_prime(uint64_t n);

// n = unit_part * p^alpha with p not dividing unit_part.
struct PadicSplit {
  uint32_t alpha;
  uint64_t unit_part;
};

PadicSplit padic_split(uint64_t n, uint64_t p);

// Binomial coefficient mod a prime, by base-p digit products.
uint32_t binom_mod_p(uint64_t n, uint64_t k, uint32_t p);

// Multinomial coefficient (sum parts)! / prod(part!) mod a prime, as a
// product of digit-wise binomials.  Zero parts are allowed.
uint32_t multinomial_mod_p(const std::vector<uint64_t>& parts, uint32_t p);

}  // namespace hsint

#endif
