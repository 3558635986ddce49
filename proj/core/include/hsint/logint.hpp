#ifndef HSINT_LOGINT_HPP
#define HSINT_LOGINT_HPP

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "hsint/hs_derivation.hpp"

namespace hsint {

struct LogCheckReport {
  bool ok = false;
  // (index i, residue of the i-th component of h modulo <h>)
  std::optional<std::pair<size_t, Poly>> first_failure;
};

// ok iff every component of h up to the length lies in <h>.  Checking the
// single generator suffices for a principal ideal: the Leibniz law closes
// <h> under all components once the generator images do.
LogCheckReport is_logarithmic(const HSDerivation& d, const Poly& h);

// The mu^i coefficient of phi(h), split as known_part (from the already
// fixed image slots below i) plus the slot-i unknowns attached linearly by
// the gradient of h.
struct ObstructionRecord {
  size_t step = 0;
  Poly known_part;
  std::vector<Poly> linear_coefficients;

  ObstructionRecord(size_t i, Poly known, std::vector<Poly> lins)
      : step(i), known_part(std::move(known)),
        linear_coefficients(std::move(lins)) {}
};

// partial must be h-logarithmic through length i-1.
ObstructionRecord obstruction(const HSDerivation& partial, const Poly& h,
                              size_t i);

// Affine description of all slot-i coefficient choices satisfying the step
// condition modulo <h>, over monomials that are reduced with respect to h
// and exponent-bounded.  free_axes lists unknowns of variables whose
// gradient coefficient vanishes (they never enter the equation).
struct StepSolution {
  std::vector<Poly> particular;
  std::vector<std::vector<Poly>> nullspace_basis;
  std::vector<std::pair<size_t, Monomial>> free_axes;
};

using BasisFilter = std::function<bool(size_t var, const Monomial&)>;

std::optional<StepSolution> solve_step(const ObstructionRecord& obs,
                                       const Poly& h, uint32_t degree_bound,
                                       const BasisFilter& filter = {});

struct IntegralCertificate {
  HSDerivation derivation;
  Poly h;
  size_t verified_to = 0;
};

enum class SearchMode { Greedy, Exhaustive };

struct LeapWitness {
  size_t failed_at = 0;
  uint64_t explored = 0;
  uint32_t degree_bound = 0;
  SearchMode mode = SearchMode::Greedy;
  // All branch directions within the bound were either exhausted or proved
  // equivalent to an explored one; no silent truncation of the space.
  bool exhaustive_within_bound = false;
  // The blocking step was certified infeasible independently of every
  // admissible choice at earlier steps (an unconditional non-extension).
  bool uniform_obstruction = false;
};

using IntegrateResult = std::variant<IntegralCertificate, LeapWitness>;

// An h-logarithmic tower; its first component spans branch directions the
// search may identify with zero (towers differing by an integrable
// direction extend to equal lengths).  Entries are re-verified against the
// target before use.
struct PoolEntry {
  HSDerivation tower;

  std::vector<Poly> coeffs() const { return tower.first_component(); }
  size_t length() const { return tower.length(); }
};

class CertificatePool {
 public:
  void add(PoolEntry e) { entries_.push_back(std::move(e)); }
  const std::vector<PoolEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<PoolEntry> entries_;
};

struct SearchOptions {
  SearchMode mode = SearchMode::Greedy;
  uint64_t budget = 100000;
  // Per-step exponent bound is step * multiplier; defaults to
  // max(deg h, deg delta + 1).
  std::optional<uint32_t> bound_multiplier;
  // Shared pool of verified towers; probe runs append their certificates.
  CertificatePool* pool = nullptr;
  bool auto_seed = true;        // Euler seed when h is quasi-homogeneous
  bool micro_bootstrap = true;  // greedy sub-searches to grow the pool
  size_t residual_cap = 12;     // max branch dimensions kept per step
  BasisFilter basis_filter;     // optional unknown-basis restriction
  size_t recursion_depth = 0;   // internal; bootstrap sub-searches set it
};

// Extends delta (length 1, h-logarithmic) to an h-logarithmic tower of
// length L, or reports the step at which every admissible branch fails.
// Certificates are re-verified through the independent expansion path
// before being returned.
IntegrateResult integrate(const HSDerivation& delta, const Poly& h, size_t L,
                          const SearchOptions& opts = {});

// Images x_v -> x_v (1 + mu)^{w_v}; logarithmic along any polynomial that
// is quasi-homogeneous for the weights.
HSDerivation euler_integral(const PrimeField& f,
                            const std::vector<uint64_t>& weights, size_t L);

// Minimal positive integer weights making h quasi-homogeneous, if any.
std::optional<std::vector<uint64_t>> quasi_homogeneous_weights(const Poly& h);

// The derivation whose coefficient on d_v is sum_w a[v][w] * partial_w(f);
// the decomposition witnesses membership in the gradient-ideal multiples of
// the derivation module, which guarantees an integral exists.  Searches for
// one with the exhaustive engine.
IntegrateResult gradient_multiple_integral(
    const std::vector<std::vector<Poly>>& decomposition, const Poly& f,
    size_t L, const SearchOptions& opts = {});

struct ProbeVerdict {
  std::vector<Poly> candidate;
  IntegrateResult outcome;
};

struct ProbeReport {
  std::vector<ProbeVerdict> verdicts;
  // Candidates that obtained certificates; they generate a submodule of the
  // target module (an under-approximation restricted to the candidate list).
  std::vector<std::vector<Poly>> integrable;
};

ProbeReport ider_probe(const Poly& h, size_t m,
                       const std::vector<std::vector<Poly>>& candidates,
                       const SearchOptions& opts = {});

}  // namespace hsint

#endif
