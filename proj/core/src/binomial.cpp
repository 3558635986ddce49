#include "hsint/binomial.hpp"

#include <algorithm>
#include <functional>

#include "hsint/intarith.hpp"
#include "hsint/parse.hpp"

namespace hsint {

namespace {

uint64_t pow_u64(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (r > (uint64_t(1) << 60) / std::max<uint64_t>(b, 1))
      throw DegenerateInput("exponent overflow");
    r *= b;
  }
  return r;
}

Poly swap_vars(const Poly& f) {
  Poly out(f.field(), f.nvars());
  for (const auto& [m, c] : f.terms()) {
    std::vector<uint32_t> e = m.exps();
    std::swap(e[0], e[1]);
    out.add_term(Monomial(std::move(e)), int64_t(c));
  }
  return out;
}

Generator make_generator(std::vector<Poly> coeffs) {
  Generator g;
  g.text = derivation_to_string(coeffs);
  g.coeffs = std::move(coeffs);
  return g;
}

Generator swap_generator(const Generator& g) {
  std::vector<Poly> coeffs{swap_vars(g.coeffs[1]), swap_vars(g.coeffs[0])};
  return make_generator(std::move(coeffs));
}

}  // namespace

Poly curve_poly(uint32_t p, uint64_t n, uint64_t q) {
  PrimeField f(p);
  Poly h(f, 2);
  h.add_term(Monomial::unit(2, 0, uint32_t(n)), 1);
  h.add_term(Monomial::unit(2, 1, uint32_t(q)), -1);
  return h;
}

CurveInvariants invariants(uint32_t p, uint64_t n, uint64_t q) {
  if (!is_prime(p)) throw InvalidField("not a prime: " + std::to_string(p));
  if (n < 1 || q < 1) throw DegenerateInput("exponents must be positive");
  CurveInvariants inv;
  inv.p = p;
  inv.n = n;
  inv.q = q;
  PadicSplit ns = padic_split(n, p);
  inv.alpha = ns.alpha;
  inv.s = ns.unit_part;
  inv.m_rem = uint32_t(q % p);
  if (q > inv.m_rem) {
    PadicSplit qs = padic_split(q - inv.m_rem, p);
    inv.beta = qs.alpha;
    inv.t = qs.unit_part;
  }
  if (inv.alpha >= 1) {
    uint64_t pa = pow_u64(p, inv.alpha);
    inv.gamma = (q - 1 + pa - 1) / pa;
  }
  return inv;
}

PiecewiseModule classify(uint32_t p, uint64_t n, uint64_t q) {
  if (!is_prime(p)) throw InvalidField("not a prime: " + std::to_string(p));
  if (n < 1 || q < 1) throw DegenerateInput("exponents must be positive");
  if (n % p == 0 && q % p == 0) {
    throw UsePowerReduce("both exponents divisible by " + std::to_string(p) +
                         "; factor the curve as a p-th power first");
  }
  PrimeField f(p);

  if (q % p == 0) {
    // mirror case: swap variable roles in the classification of (q, n)
    PiecewiseModule base = classify(p, q, n);
    PiecewiseModule out;
    out.inv = invariants(p, n, q);
    out.branch = base.branch;
    out.swapped = true;
    out.degenerate_smooth = base.degenerate_smooth;
    out.leaps = base.leaps;
    for (const Piece& pc : base.pieces) {
      Piece s;
      s.lo = pc.lo;
      s.hi = pc.hi;
      for (const Generator& g : pc.generators) s.generators.push_back(swap_generator(g));
      for (const Generator& g : pc.dropped_at_end)
        s.dropped_at_end.push_back(swap_generator(g));
      out.pieces.push_back(std::move(s));
    }
    for (const GeneratorCertificate& gc : base.certificates) {
      out.certificates.push_back(
          GeneratorCertificate{swap_generator(gc.gen), gc.kind, gc.length});
    }
    return out;
  }

  PiecewiseModule out;
  out.inv = invariants(p, n, q);
  const CurveInvariants& inv = out.inv;

  auto var_poly = [&](size_t v) { return Poly::variable(f, 2, v); };
  auto mono = [&](size_t v, uint64_t e) {
    return Poly::from_monomial(f, Monomial::unit(2, v, uint32_t(e)), 1);
  };

  if (n % p != 0) {
    // neither exponent divisible: the full module is integrable
    out.branch = CurveBranch::UnitExponents;
    out.degenerate_smooth = (n == 1 && q == 1);
    Generator d1 = make_generator(
        {var_poly(0).scaled(int64_t(q % p)), var_poly(1).scaled(int64_t(n % p))});
    Generator d2 = make_generator(
        {mono(1, q - 1).scaled(int64_t(q % p)), mono(0, n - 1).scaled(int64_t(n % p))});
    Piece pc;
    pc.lo = 1;
    pc.generators = {d1, d2};
    out.pieces.push_back(std::move(pc));
    out.certificates.push_back(GeneratorCertificate{d1, CertKind::Euler, std::nullopt});
    out.certificates.push_back(GeneratorCertificate{d2, CertKind::Gradient, std::nullopt});
    return out;
  }

  if (q == 1) {
    out.branch = CurveBranch::LineQuotient;
    Generator dx = make_generator({Poly::one(f, 2), Poly::zero(f, 2)});
    Piece pc;
    pc.lo = 1;
    pc.generators = {dx};
    out.pieces.push_back(std::move(pc));
    out.certificates.push_back(
        GeneratorCertificate{dx, CertKind::Gradient, std::nullopt});
    return out;
  }

  // p | n, p does not divide q, q >= 2
  out.branch = CurveBranch::FrobeniusKernel;
  uint64_t pa = pow_u64(p, inv.alpha);
  uint64_t gamma = *inv.gamma;
  bool special = inv.s == 1 && inv.m_rem == 1 && inv.beta &&
                 inv.alpha <= *inv.beta;

  Generator dx = make_generator({Poly::one(f, 2), Poly::zero(f, 2)});
  Generator xdx = make_generator({var_poly(0), Poly::zero(f, 2)});
  Generator yg = make_generator({mono(1, gamma), Poly::zero(f, 2)});

  Piece first;
  first.lo = 1;
  first.hi = pa;
  first.generators = {dx};
  first.dropped_at_end = {dx};
  out.pieces.push_back(std::move(first));
  out.leaps.insert(pa);

  if (special) {
    uint64_t pab = pow_u64(p, inv.alpha + *inv.beta);
    Generator yg1 = make_generator({mono(1, gamma + 1), Poly::zero(f, 2)});
    Piece mid;
    mid.lo = pa;
    mid.hi = pab;
    mid.generators = {xdx, yg};
    mid.dropped_at_end = {yg};
    out.pieces.push_back(std::move(mid));
    Piece last;
    last.lo = pab;
    last.generators = {xdx, yg1};
    out.pieces.push_back(std::move(last));
    out.leaps.insert(pab);
    out.certificates.push_back(
        GeneratorCertificate{xdx, CertKind::Euler, std::nullopt});
    out.certificates.push_back(
        GeneratorCertificate{yg1, CertKind::ClosedForm, std::nullopt});
    out.certificates.push_back(GeneratorCertificate{yg, CertKind::Search, pab - 1});
    out.certificates.push_back(GeneratorCertificate{dx, CertKind::Search, pa - 1});
  } else {
    Piece last;
    last.lo = pa;
    last.generators = {xdx, yg};
    out.pieces.push_back(std::move(last));
    out.certificates.push_back(
        GeneratorCertificate{xdx, CertKind::Euler, std::nullopt});
    out.certificates.push_back(
        GeneratorCertificate{yg, CertKind::ClosedForm, std::nullopt});
    out.certificates.push_back(GeneratorCertificate{dx, CertKind::Search, pa - 1});
  }
  return out;
}

std::set<uint64_t> leaps(uint32_t p, uint64_t n, uint64_t q) {
  return classify(p, n, q).leaps;
}

std::vector<uint32_t> c_coefficients(const CurveInvariants& inv, size_t i_max) {
  PrimeField f(inv.p);
  if (inv.q % inv.p == 0)
    throw NoInverse("q has no inverse modulo p");
  uint32_t qinv = f.inv(uint32_t(inv.q % inv.p));
  std::vector<uint32_t> C(i_max + 1, 0);  // C[0] unused

  for (size_t i = 1; i <= i_max; ++i) {
    // sum over index tuples j with |j| = q and weighted sum i, encoded as
    // partitions of i into parts at most i-1 with multiplicity total <= q
    uint32_t sum_d = 0;
    std::vector<uint64_t> mult(i, 0);  // mult[k] for part size k, 1 <= k < i
    uint64_t total_parts = 0;

    auto add_tuple = [&]() {
      if (total_parts > inv.q) return;
      std::vector<uint64_t> parts;
      parts.push_back(inv.q - total_parts);  // j_0
      for (size_t k = 1; k < i; ++k) parts.push_back(mult[k]);
      uint32_t term = multinomial_mod_p(parts, inv.p);
      if (term == 0) return;
      for (size_t k = 1; k < i && term != 0; ++k) {
        if (mult[k] > 0) term = f.mul(term, f.pow(C[k], mult[k]));
      }
      sum_d = f.add(sum_d, term);
    };

    // enumerate partitions recursively, largest remaining part first
    std::function<void(uint64_t, uint64_t)> rec = [&](uint64_t remaining,
                                                      uint64_t max_part) {
      if (remaining == 0) {
        add_tuple();
        return;
      }
      if (max_part == 0 || total_parts >= inv.q) return;
      for (uint64_t part = std::min<uint64_t>(max_part, remaining); part >= 1;
           --part) {
        ++mult[part];
        ++total_parts;
        rec(remaining - part, part);
        --mult[part];
        --total_parts;
      }
    };
    if (i >= 2) rec(i, i - 1);
    // i = 1 has no admissible tuples

    uint32_t b = binom_mod_p(inv.s, i, inv.p);
    C[i] = f.mul(qinv, f.sub(b, sum_d));
  }
  C.erase(C.begin());
  return C;
}

ClosedFormIntegral closed_form_integral(uint32_t p, uint64_t n, uint64_t q) {
  if (!is_prime(p)) throw InvalidField("not a prime: " + std::to_string(p));
  bool swapped = false;
  if (n % p == 0 && q % p != 0 && q >= 2) {
    // principal case
  } else if (q % p == 0 && n % p != 0 && n >= 2) {
    std::swap(n, q);
    swapped = true;
  } else {
    throw NotApplicable("closed form requires exactly one Frobenius exponent");
  }
  ClosedFormIntegral cf;
  cf.inv = invariants(p, n, q);
  cf.swapped = swapped;
  bool special = cf.inv.s == 1 && cf.inv.m_rem == 1 && cf.inv.beta &&
                 cf.inv.alpha <= *cf.inv.beta;
  cf.gamma_used = *cf.inv.gamma + (special ? 1 : 0);
  return cf;
}

Poly ClosedFormIntegral::v_coefficient(size_t i) const {
  if (i < 1) throw DegenerateInput("index must be positive");
  PrimeField f(inv.p);
  uint64_t pa = pow_u64(inv.p, inv.alpha);
  uint64_t tau = (i - 1) / inv.s;
  uint64_t sigma = i - tau * inv.s;
  int64_t ey = int64_t(i) * int64_t(gamma_used) * int64_t(pa) -
               int64_t(tau + 1) * int64_t(inv.q) + 1;
  if (ey < 0) throw Error("negative exponent in closed-form coefficient");
  uint64_t ex = pa * (inv.s - sigma);
  std::vector<uint32_t> C = c_coefficients(inv, i);
  Poly v(f, 2);
  if (C[i - 1] != 0) {
    Monomial m{std::vector<uint32_t>{uint32_t(ex), uint32_t(ey)}};
    v.add_term(m, int64_t(C[i - 1]));
  }
  return swapped ? swap_vars(v) : v;
}

HSDerivation ClosedFormIntegral::materialize(size_t L) const {
  PrimeField f(inv.p);
  uint64_t pa = pow_u64(inv.p, inv.alpha);
  size_t iv = swapped ? 1 : 0;  // variable receiving the slope image
  TruncSeries sx(f, 2, L);
  sx.set_slot(0, Poly::variable(f, 2, iv));
  Poly slope = Poly::from_monomial(
      f, Monomial::unit(2, 1 - iv, uint32_t(gamma_used)), 1);
  if (L >= 1) sx.set_slot(1, slope);

  TruncSeries sy(f, 2, L);
  sy.set_slot(0, Poly::variable(f, 2, 1 - iv));
  for (size_t i = 1; i * pa <= L; ++i) {
    Poly vi = v_coefficient(i);
    if (!vi.is_zero()) sy.set_slot(i * pa, vi);
  }
  std::vector<TruncSeries> imgs;
  if (iv == 0) {
    imgs = {std::move(sx), std::move(sy)};
  } else {
    imgs = {std::move(sy), std::move(sx)};
  }
  return HSDerivation::from_images(std::move(imgs));
}

AnnihilatorReport annihilator_B(uint32_t p, uint64_t n, uint64_t q, uint64_t i) {
  PiecewiseModule cls = classify(p, n, q);  // validates inputs
  if (!cls.leaps.count(i)) {
    throw NotALeap(std::to_string(i) + " is not a leap of this curve");
  }
  if (cls.branch != CurveBranch::FrobeniusKernel) {
    throw NotALeap("no leaps outside the Frobenius branch");
  }
  const CurveInvariants base =
      cls.swapped ? invariants(p, q, n) : cls.inv;
  PrimeField f(p);
  uint64_t pa = pow_u64(p, base.alpha);
  AnnihilatorReport rep;
  auto mono = [&](size_t v, uint64_t e) {
    return Poly::from_monomial(f, Monomial::unit(2, v, uint32_t(e)), 1);
  };
  size_t vx = cls.swapped ? 1 : 0;
  size_t vy = 1 - vx;
  uint64_t qq = cls.swapped ? n : q;
  if (i == pa) {
    rep.generators = {mono(vx, 1), mono(vy, base.alpha)};
    rep.alpha_gamma_discrepancy = (*base.gamma != base.alpha);
    rep.contains_gradient_ideal = (base.alpha <= qq - 1);
  } else {
    rep.generators = {mono(vy, 1)};
    rep.alpha_gamma_discrepancy = false;
    rep.contains_gradient_ideal = (qq >= 2);
  }
  return rep;
}

bool der_log_full(const Poly& h) {
  if (h.is_zero()) throw ZeroDivisor("zero curve");
  for (size_t v = 0; v < h.nvars(); ++v) {
    if (!h.partial(v).mod_reduce(h).is_zero()) return false;
  }
  return true;
}

std::set<uint64_t> power_leaps(uint32_t p, uint64_t n, uint64_t q, uint32_t tau) {
  std::set<uint64_t> base = leaps(p, n, q);
  if (tau == 0) return base;
  uint64_t pt = pow_u64(p, tau);
  std::set<uint64_t> out;
  for (uint64_t l : base) out.insert(l * pt);
  if (!der_log_full(curve_poly(p, n, q))) out.insert(pt);
  return out;
}

PowerReduction power_reduce(uint32_t p, uint64_t n, uint64_t q) {
  if (!is_prime(p)) throw InvalidField("not a prime: " + std::to_string(p));
  if (n % p != 0 || q % p != 0) {
    throw NotAPowerCase("both exponents must be divisible by " +
                        std::to_string(p));
  }
  PowerReduction red;
  red.tau = std::min(padic_split(n, p).alpha, padic_split(q, p).alpha);
  uint64_t pt = pow_u64(p, red.tau);
  red.n_reduced = n / pt;
  red.q_reduced = q / pt;
  std::set<uint64_t> base = leaps(p, red.n_reduced, red.q_reduced);
  for (uint64_t l : base) red.leaps.insert(l * pt);
  red.leaps.insert(pt);
  red.note = "integrable derivations at length k*" + std::to_string(pt) +
             " pull back from length-k integrable derivations along x^" +
             std::to_string(red.n_reduced) + " - y^" +
             std::to_string(red.q_reduced);
  return red;
}

CertificatePool standard_pool(uint32_t p, uint64_t n, uint64_t q, size_t L) {
  CertificatePool pool;
  Poly h = curve_poly(p, n, q);
  PrimeField f(p);
  {
    HSDerivation e = euler_integral(f, {q, n}, std::max<size_t>(L, 2));
    bool trivial = true;
    for (const Poly& c : e.first_component()) {
      if (!c.is_zero()) trivial = false;
    }
    if (!trivial && is_logarithmic(e, h).ok) pool.add(PoolEntry{e});
  }
  try {
    ClosedFormIntegral cf = closed_form_integral(p, n, q);
    HSDerivation tower = cf.materialize(std::max<size_t>(L, 2));
    if (is_logarithmic(tower, h).ok) pool.add(PoolEntry{tower});
  } catch (const NotApplicable&) {
  }
  return pool;
}

}  // namespace hsint
