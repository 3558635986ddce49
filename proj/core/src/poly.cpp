#include "hsint/poly.hpp"

#include <vector>

#include "hsint/intarith.hpp"

namespace hsint {

void Poly::check_ring(const Poly& o) const {
  if (f_ != o.f_ || nvars_ != o.nvars_) {
    throw RingMismatch("polynomials from different rings");
  }
}

Poly Poly::constant(const PrimeField& f, size_t nvars, int64_t c) {
  Poly r(f, nvars);
  r.add_term(Monomial(nvars), c);
  return r;
}

Poly Poly::from_monomial(const PrimeField& f, const Monomial& m, int64_t c) {
  Poly r(f, m.nvars());
  r.add_term(m, c);
  return r;
}

const Monomial& Poly::leading_monomial() const {
  if (t_.empty()) throw DegenerateInput("zero polynomial has no leading term");
  return t_.begin()->first;
}

uint32_t Poly::leading_coeff() const {
  if (t_.empty()) throw DegenerateInput("zero polynomial has no leading term");
  return t_.begin()->second;
}

uint64_t Poly::total_degree() const {
  uint64_t d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.total_degree());
  return d;
}

uint32_t Poly::degree_in(size_t var) const {
  uint32_t d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.exp(var));
  return d;
}

void Poly::add_term(const Monomial& m, int64_t c) {
  uint32_t cr = f_.reduce(c);
  if (cr == 0) return;
  auto [it, inserted] = t_.try_emplace(m, cr);
  if (!inserted) {
    uint32_t s = f_.add(it->second, cr);
    if (s == 0) {
      t_.erase(it);
    } else {
      it->second = s;
    }
  }
}

Poly Poly::operator+(const Poly& o) const {
  check_ring(o);
  Poly r(*this);
  for (const auto& [m, c] : o.t_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  check_ring(o);
  Poly r(*this);
  for (const auto& [m, c] : o.t_) r.add_term(m, -int64_t(c));
  return r;
}

Poly Poly::operator-() const {
  Poly r(f_, nvars_);
  for (const auto& [m, c] : t_) r.t_.emplace(m, f_.neg(c));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_ring(o);
  Poly r(f_, nvars_);
  for (const auto& [m1, c1] : t_) {
    for (const auto& [m2, c2] : o.t_) {
      r.add_term(m1 * m2, int64_t(f_.mul(c1, c2)));
    }
  }
  return r;
}

Poly Poly::scaled(int64_t c) const {
  uint32_t cr = f_.reduce(c);
  Poly r(f_, nvars_);
  if (cr == 0) return r;
  for (const auto& [m, k] : t_) r.t_.emplace(m, f_.mul(k, cr));
  return r;
}

Poly Poly::pow(uint64_t e) const {
  Poly acc = Poly::one(f_, nvars_);
  Poly base(*this);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Poly Poly::partial(size_t var) const {
  Poly r(f_, nvars_);
  for (const auto& [m, c] : t_) {
    uint32_t e = m.exp(var);
    if (e == 0) continue;
    Monomial d = Monomial::unit(nvars_, var).divide_from(m);
    r.add_term(d, int64_t(f_.mul(c, f_.reduce(e))));
  }
  return r;
}

Poly Poly::divided_partial(size_t var, uint32_t k) const {
  if (k == 0) return *this;
  Poly r(f_, nvars_);
  for (const auto& [m, c] : t_) {
    uint32_t e = m.exp(var);
    if (e < k) continue;
    uint32_t b = binom_mod_p(e, k, f_.p());
    if (b == 0) continue;
    Monomial d = Monomial::unit(nvars_, var, k).divide_from(m);
    r.add_term(d, int64_t(f_.mul(c, b)));
  }
  return r;
}

Poly::DivRem Poly::divrem(const Poly& h) const {
  if (h.is_zero()) throw ZeroDivisor("division by the zero polynomial");
  check_ring(h);
  const Monomial& lmh = h.leading_monomial();
  uint32_t lc_inv = f_.inv(h.leading_coeff());

  Poly quot(f_, nvars_);
  Poly rem(f_, nvars_);
  Poly work(*this);
  while (!work.is_zero()) {
    auto it = work.t_.begin();
    const Monomial lm = it->first;
    const uint32_t lc = it->second;
    if (lmh.divides(lm)) {
      Monomial q = lmh.divide_from(lm);
      uint32_t qc = f_.mul(lc, lc_inv);
      quot.add_term(q, qc);
      // work -= (qc * q) * h
      for (const auto& [hm, hc] : h.t_) {
        work.add_term(q * hm, -int64_t(f_.mul(qc, hc)));
      }
    } else {
      rem.add_term(lm, lc);
      work.t_.erase(it);
    }
  }
  return DivRem{std::move(quot), std::move(rem)};
}

Poly Poly::mod_reduce(const Poly& h) const { return divrem(h).rem; }

std::optional<Poly> Poly::exact_div(const Poly& h) const {
  DivRem dr = divrem(h);
  if (!dr.rem.is_zero()) return std::nullopt;
  return dr.quot;
}

bool Poly::is_reduced_wrt(const Poly& h) const {
  if (h.is_zero()) throw ZeroDivisor("reduction against the zero polynomial");
  const Monomial& lmh = h.leading_monomial();
  for (const auto& [m, c] : t_) {
    if (lmh.divides(m)) return false;
  }
  return true;
}

Poly Poly::subst(const std::vector<Poly>& args) const {
  if (args.size() != nvars_) throw RingMismatch("wrong substitution arity");
  size_t out_nvars = args.empty() ? nvars_ : args[0].nvars();
  Poly r(f_, out_nvars);
  for (const auto& [m, c] : t_) {
    Poly term = Poly::constant(f_, out_nvars, int64_t(c));
    for (size_t v = 0; v < nvars_; ++v) {
      if (m.exp(v) > 0) term = term * args[v].pow(m.exp(v));
    }
    r = r + term;
  }
  return r;
}

}  // namespace hsint
