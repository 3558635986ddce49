#ifndef HSINT_MONOMIAL_HPP
#define HSINT_MONOMIAL_HPP

#include <cstdint>
#include <vector>

#include "hsint/errors.hpp"

namespace hsint {

// Exponent vector of fixed variable count.  Ordered lexicographically with
// x1 > x2 > ... (earlier variables dominate).
class Monomial {
 public:
  explicit Monomial(size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<uint32_t> exps) : e_(std::move(exps)) {}

  static Monomial unit(size_t nvars, size_t var, uint32_t exp = 1) {
    Monomial m(nvars);
    m.e_[var] = exp;
    return m;
  }

  size_t nvars() const { return e_.size(); }
  uint32_t exp(size_t v) const { return e_[v]; }
  const std::vector<uint32_t>& exps() const { return e_; }

  uint64_t total_degree() const {
    uint64_t d = 0;
    for (uint32_t e : e_) d += e;
    return d;
  }

  bool is_one() const {
    for (uint32_t e : e_)
      if (e != 0) return false;
    return true;
  }

  bool divides(const Monomial& m) const {
    for (size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > m.e_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& m) const {
    Monomial r(*this);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += m.e_[i];
    return r;
  }

  // Requires *this | m.
  Monomial divide_from(const Monomial& m) const {
    Monomial r(m);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
    return r;
  }

  Monomial pow(uint32_t k) const {
    Monomial r(*this);
    for (auto& e : r.e_) e *= k;
    return r;
  }

  // <0, 0, >0 as lex comparison a ? b.
  static int lex_cmp(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.e_.size(); ++i) {
      if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i] ? -1 : 1;
    }
    return 0;
  }

  bool operator==(const Monomial& m) const { return e_ == m.e_; }
  bool operator!=(const Monomial& m) const { return e_ != m.e_; }

 private:
  std::vector<uint32_t> e_;
};

// Descending lex, so map iteration starts at the leading monomial.
struct LexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::lex_cmp(a, b) > 0;
  }
};

struct LexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::lex_cmp(a, b) < 0;
  }
};

}  // namespace hsint

#endif
