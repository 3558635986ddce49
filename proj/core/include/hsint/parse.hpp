#ifndef HSINT_PARSE_HPP
#define HSINT_PARSE_HPP

#include <string>
#include <vector>

#include "hsint/poly.hpp"

namespace hsint {

// Variable display names: "x" / "x","y" / "x1".."xd".
std::vector<std::string> variable_names(size_t nvars);

// Number of variables needed by the expression text (2 if 'y' occurs,
// max index if 'xk' occurs, else 1).  Parse errors are deferred.
size_t detect_nvars(const std::string& text);

// Grammar: expr := term (('+'|'-') term)* ; term := coeff? monofactor* ;
// monofactor := var ('^' uint)? ; var := 'x' | 'y' | 'x1'..'xd'.
// '*' may separate factors; whitespace is insignificant.
Poly parse_poly(const std::string& text, const PrimeField& f, size_t nvars);

// Sum of poly-term '*' ('dx'|'dy'|'dx1'..), e.g. "x*dx + 2y^2*dy".
// Returns one coefficient polynomial per variable.
std::vector<Poly> parse_derivation(const std::string& text,
                                   const PrimeField& f, size_t nvars);

std::string to_string(const Poly& f);
std::string derivation_to_string(const std::vector<Poly>& coeffs);

}  // namespace hsint

#endif
