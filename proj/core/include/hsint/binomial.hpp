#ifndef HSINT_BINOMIAL_HPP
#define HSINT_BINOMIAL_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hsint/logint.hpp"

namespace hsint {

// Invariants of the curve x^n - y^q over F_p: n = s*p^alpha with p not
// dividing s, m_rem the remainder of q mod p, beta the valuation of
// q - m_rem when positive, gamma the least i with i*p^alpha >= q - 1.
struct CurveInvariants {
  uint32_t p = 0;
  uint64_t n = 0, q = 0;
  uint32_t alpha = 0;
  uint64_t s = 0;
  uint32_t m_rem = 0;
  std::optional<uint32_t> beta;
  std::optional<uint64_t> t;
  std::optional<uint64_t> gamma;
};

CurveInvariants invariants(uint32_t p, uint64_t n, uint64_t q);

enum class CurveBranch {
  UnitExponents,   // p divides neither exponent
  LineQuotient,    // p | n and q = 1 (or the swap)
  FrobeniusKernel  // p | n, p does not divide q, q >= 2 (or the swap)
};

enum class CertKind { Euler, ClosedForm, Gradient, Search };

struct Generator {
  std::vector<Poly> coeffs;
  std::string text;
};

struct Piece {
  uint64_t lo = 1;
  std::optional<uint64_t> hi;  // nullopt encodes the final infinite piece
  std::vector<Generator> generators;
  std::vector<Generator> dropped_at_end;  // generators absent from the next piece
};

struct GeneratorCertificate {
  Generator gen;
  CertKind kind = CertKind::Search;
  std::optional<uint64_t> length;  // nullopt: unbounded
};

struct PiecewiseModule {
  CurveInvariants inv;
  CurveBranch branch = CurveBranch::UnitExponents;
  bool swapped = false;            // roles of x and y exchanged
  bool degenerate_smooth = false;  // n = q = 1
  std::vector<Piece> pieces;
  std::set<uint64_t> leaps;
  std::vector<GeneratorCertificate> certificates;
};

PiecewiseModule classify(uint32_t p, uint64_t n, uint64_t q);
std::set<uint64_t> leaps(uint32_t p, uint64_t n, uint64_t q);

// Coefficients C_1..C_imax of the closed-form integral, via the recursion
// over index tuples weighted by multinomials mod p.
std::vector<uint32_t> c_coefficients(const CurveInvariants& inv, size_t i_max);

// The explicit unbounded integral of y^gamma_used d/dx along x^n - y^q:
// x -> x + y^gamma_used mu, y -> y + sum_i v_i mu^(i p^alpha).
struct ClosedFormIntegral {
  CurveInvariants inv;
  uint64_t gamma_used = 0;
  bool swapped = false;

  Poly v_coefficient(size_t i) const;       // v_i, exponents checked >= 0
  HSDerivation materialize(size_t L) const;
};

ClosedFormIntegral closed_form_integral(uint32_t p, uint64_t n, uint64_t q);

struct AnnihilatorReport {
  std::vector<Poly> generators;
  // The printed case table uses exponent alpha where the piece generator
  // carries gamma; flagged when the two disagree.
  bool alpha_gamma_discrepancy = false;
  bool contains_gradient_ideal = false;
};

AnnihilatorReport annihilator_B(uint32_t p, uint64_t n, uint64_t q, uint64_t i);

// True iff every coordinate partial of h lies in <h>.
bool der_log_full(const Poly& h);

// Leap set of the quotient by (x^n - y^q)^(p^tau): the base leaps scaled by
// p^tau, together with p^tau itself unless every partial of the base curve
// is already logarithmic.
std::set<uint64_t> power_leaps(uint32_t p, uint64_t n, uint64_t q, uint32_t tau);

struct PowerReduction {
  uint32_t tau = 0;
  uint64_t n_reduced = 0, q_reduced = 0;
  std::set<uint64_t> leaps;
  std::string note;
};

// For p | n and p | q: factor out p^min(val(n), val(q)) and lift the leap
// set of the reduced curve.
PowerReduction power_reduce(uint32_t p, uint64_t n, uint64_t q);

// The curve polynomial x^n - y^q over F_p.
Poly curve_poly(uint32_t p, uint64_t n, uint64_t q);

// Verified towers backing the final-piece generators (Euler scaling and the
// closed form, as available); suitable as an equivalence-prune pool for
// searches along the curve.
CertificatePool standard_pool(uint32_t p, uint64_t n, uint64_t q, size_t L);

}  // namespace hsint

#endif
