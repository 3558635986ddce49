#include "hsint/logint.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "hsint/intarith.hpp"
#include "hsint/parse.hpp"

namespace hsint {

LogCheckReport is_logarithmic(const HSDerivation& d, const Poly& h) {
  if (h.is_zero()) throw ZeroDivisor("logarithmic check against zero");
  TruncSeries s = d.apply(h);
  for (size_t i = 1; i <= d.length(); ++i) {
    Poly r = s.slot(i).mod_reduce(h);
    if (!r.is_zero()) {
      return LogCheckReport{false, std::make_pair(i, std::move(r))};
    }
  }
  return LogCheckReport{true, std::nullopt};
}

namespace {

std::vector<Poly> gradient(const Poly& h) {
  std::vector<Poly> g;
  for (size_t v = 0; v < h.nvars(); ++v) g.push_back(h.partial(v));
  return g;
}

// Slot i of phi(h) where the images carry the given coefficient table with
// slot i zeroed.
Poly known_part_at(const std::vector<std::vector<Poly>>& slots, const Poly& h,
                   size_t i) {
  const PrimeField& f = h.field();
  size_t nv = h.nvars();
  std::vector<TruncSeries> imgs;
  imgs.reserve(nv);
  for (size_t v = 0; v < nv; ++v) {
    TruncSeries s(f, nv, i);
    for (size_t j = 0; j < i && j < slots[v].size(); ++j) {
      s.set_slot(j, slots[v][j]);
    }
    imgs.push_back(std::move(s));
  }
  return HSDerivation::from_images(std::move(imgs)).apply(h).slot(i);
}

}  // namespace

ObstructionRecord obstruction(const HSDerivation& partial, const Poly& h,
                              size_t i) {
  if (i < 1) throw DegenerateInput("obstruction step must be positive");
  if (partial.length() + 1 < i)
    throw LengthExceeded("partial tower shorter than step - 1");
  if (i >= 2) {
    LogCheckReport pre = is_logarithmic(
        partial.length() >= i ? partial.truncate(i - 1) : partial, h);
    if (!pre.ok) {
      throw NotLogarithmicPrefix("prefix not logarithmic at index " +
                                 std::to_string(pre.first_failure->first));
    }
  }
  std::vector<std::vector<Poly>> slots(partial.nvars());
  for (size_t v = 0; v < partial.nvars(); ++v) {
    for (size_t j = 0; j < i && j <= partial.length(); ++j) {
      slots[v].push_back(partial.image(v).slot(j));
    }
  }
  return ObstructionRecord(i, known_part_at(slots, h, i), gradient(h));
}

// ---------------------------------------------------------------------------
// Step systems

namespace {

struct ColumnKey {
  Monomial mono;
  size_t var;
};

// Dense row-reduction over F_p.  Columns are unknown monomials per variable
// ordered lex-smallest first; rows are the monomials of the reduced
// equation.
struct LinearSystem {
  const PrimeField& f;
  std::vector<ColumnKey> cols;
  std::map<Monomial, size_t, LexLess> row_of;
  std::vector<std::vector<uint32_t>> m;  // rows x (cols + 1)

  explicit LinearSystem(const PrimeField& field) : f(field) {}

  size_t row(const Monomial& mono) {
    auto [it, fresh] = row_of.try_emplace(mono, row_of.size());
    if (fresh) m.emplace_back();
    return it->second;
  }

  void finalize_rows() {
    // map insertion order is not row order; rebuild indexes densely
    std::vector<std::vector<uint32_t>> grid(row_of.size(),
                                            std::vector<uint32_t>(cols.size() + 1, 0));
    m.swap(grid);
    size_t idx = 0;
    for (auto& [mono, r] : row_of) r = idx++;
  }
};

struct SolveOutcome {
  std::vector<uint32_t> particular;               // per column
  std::vector<std::vector<uint32_t>> nullspace;   // vectors per column
};

// RREF solve of cols given entries; returns nullopt if inconsistent.
std::optional<SolveOutcome> rref_solve(const PrimeField& f,
                                       std::vector<std::vector<uint32_t>>& m,
                                       size_t ncols) {
  size_t nrows = m.size();
  std::vector<size_t> pivot_row_of_col(ncols, SIZE_MAX);
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < nrows; ++c) {
    size_t pr = SIZE_MAX;
    for (size_t i = r; i < nrows; ++i) {
      if (m[i][c] != 0) {
        pr = i;
        break;
      }
    }
    if (pr == SIZE_MAX) continue;
    std::swap(m[r], m[pr]);
    uint32_t inv = f.inv(m[r][c]);
    if (inv != 1) {
      for (size_t j = c; j <= ncols; ++j) m[r][j] = f.mul(m[r][j], inv);
    }
    for (size_t i = 0; i < nrows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      uint32_t factor = m[i][c];
      for (size_t j = c; j <= ncols; ++j) {
        m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
      }
    }
    pivot_row_of_col[c] = r;
    ++r;
  }
  for (size_t i = r; i < nrows; ++i) {
    if (m[i][ncols] != 0) return std::nullopt;
  }
  SolveOutcome out;
  out.particular.assign(ncols, 0);
  for (size_t c = 0; c < ncols; ++c) {
    if (pivot_row_of_col[c] != SIZE_MAX) {
      out.particular[c] = m[pivot_row_of_col[c]][ncols];
    }
  }
  for (size_t c = 0; c < ncols; ++c) {
    if (pivot_row_of_col[c] != SIZE_MAX) continue;
    std::vector<uint32_t> vec(ncols, 0);
    vec[c] = 1;
    for (size_t c2 = 0; c2 < ncols; ++c2) {
      size_t pr = pivot_row_of_col[c2];
      if (pr != SIZE_MAX) vec[c2] = f.neg(m[pr][c]);
    }
    out.nullspace.push_back(std::move(vec));
  }
  return out;
}

// Unknown monomials with every exponent bounded: reduced with respect to h
// by default, or exactly the filtered set when a filter is supplied.
std::vector<Monomial> reduced_basis(const Poly& h, size_t nvars, uint32_t bound,
                                    const BasisFilter& filter, size_t var) {
  const Monomial& lm = h.leading_monomial();
  std::vector<Monomial> out;
  std::vector<uint32_t> exps(nvars, 0);
  // odometer over the exponent box
  for (;;) {
    Monomial m{exps};
    if (filter ? filter(var, m) : !lm.divides(m)) out.push_back(m);
    size_t v = nvars;
    while (v > 0) {
      --v;
      if (exps[v] < bound) {
        ++exps[v];
        std::fill(exps.begin() + v + 1, exps.end(), 0);
        v = SIZE_MAX;
        break;
      }
    }
    if (v != SIZE_MAX) break;
  }
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) {
              return Monomial::lex_cmp(a, b) < 0;
            });
  return out;
}

// Coefficient layer of x_t^r in p, as a polynomial with x_t-exponent zero.
Poly layer_of(const Poly& p, size_t t, uint32_t r) {
  Poly out(p.field(), p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.exp(t) != r) continue;
    out.add_term(Monomial::unit(p.nvars(), t, r).divide_from(m), int64_t(c));
  }
  return out;
}

// Fast solve of u * (c * x_t^e) = -known (mod <h>) when h has a nonzero
// layer at x_t^0; the solution is unique modulo <h>.
std::optional<Poly> monomial_gradient_solve(const Poly& known, const Poly& h,
                                            size_t t, uint32_t e, uint32_t c) {
  const PrimeField& f = known.field();
  size_t nv = known.nvars();
  Poly W = -known;
  uint32_t hdeg_t = h.degree_in(t);
  Poly h0 = layer_of(h, t, 0);
  if (h0.is_zero()) return std::nullopt;  // caller should use the dense path

  // Peel multiplier layers so W - w*h vanishes below x_t^e.
  Poly w(f, nv);
  std::vector<Poly> wl;  // layers of w
  for (uint32_t r = 0; r < e; ++r) {
    Poly cur = layer_of(W, t, r);
    for (uint32_t s = 1; s <= std::min(r, hdeg_t); ++s) {
      if (r - s < wl.size()) {
        Poly hs = layer_of(h, t, s);
        if (!hs.is_zero() && !wl[r - s].is_zero()) cur = cur - hs * wl[r - s];
      }
    }
    if (cur.is_zero()) {
      wl.push_back(cur);
      continue;
    }
    auto q = cur.exact_div(h0);
    if (!q) return std::nullopt;
    wl.push_back(*q);
    w = w + *q * Poly::from_monomial(f, Monomial::unit(nv, t, r), 1);
  }
  Poly U = W - w * h;
  Poly u(f, nv);
  Monomial me = Monomial::unit(nv, t, e);
  for (const auto& [m, coeff] : U.terms()) {
    if (!me.divides(m)) return std::nullopt;  // defensive; layers were peeled
    u.add_term(me.divide_from(m), int64_t(coeff));
  }
  return u.scaled(int64_t(f.inv(c))).mod_reduce(h);
}

bool within_bound(const Poly& p, uint32_t bound) {
  for (const auto& [m, c] : p.terms()) {
    for (size_t v = 0; v < p.nvars(); ++v) {
      if (m.exp(v) > bound) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<StepSolution> solve_step(const ObstructionRecord& obs,
                                       const Poly& h, uint32_t degree_bound,
                                       const BasisFilter& filter) {
  if (h.is_zero()) throw ZeroDivisor("step solve against zero");
  const PrimeField& f = h.field();
  size_t nv = h.nvars();
  const std::vector<Poly>& grads = obs.linear_coefficients;

  std::vector<size_t> active;  // variables whose gradient is nonzero
  for (size_t v = 0; v < nv; ++v) {
    if (!grads[v].is_zero()) active.push_back(v);
  }

  StepSolution sol;
  sol.particular.assign(nv, Poly::zero(f, nv));
  for (size_t v = 0; v < nv; ++v) {
    if (!grads[v].is_zero()) continue;
    for (const Monomial& m : reduced_basis(h, nv, degree_bound, filter, v)) {
      sol.free_axes.emplace_back(v, m);
    }
  }

  if (active.empty()) {
    // nothing attaches; solvable iff the known part already lies in <h>
    if (!obs.known_part.mod_reduce(h).is_zero()) return std::nullopt;
    return sol;
  }

  // fast path: a single active variable with a pure-power single-term
  // gradient, and h regular at that variable's zero locus
  if (active.size() == 1 && !filter) {
    const Poly& g = grads[active[0]];
    if (g.num_terms() == 1) {
      const Monomial& gm = g.leading_monomial();
      size_t t = SIZE_MAX;
      size_t nonzero_exps = 0;
      for (size_t v = 0; v < nv; ++v) {
        if (gm.exp(v) > 0) {
          ++nonzero_exps;
          t = v;
        }
      }
      if (nonzero_exps <= 1) {
        if (nonzero_exps == 0) {
          // unit gradient: u = -known / c
          Poly u = (-obs.known_part)
                       .scaled(int64_t(f.inv(g.leading_coeff())))
                       .mod_reduce(h);
          if (!within_bound(u, degree_bound)) return std::nullopt;
          sol.particular[active[0]] = u;
          return sol;
        }
        if (!layer_of(h, t, 0).is_zero()) {
          auto u = monomial_gradient_solve(obs.known_part, h, t, gm.exp(t),
                                           g.leading_coeff());
          if (!u) return std::nullopt;
          if (!within_bound(*u, degree_bound)) return std::nullopt;
          sol.particular[active[0]] = *u;
          return sol;
        }
      }
    }
  }

  // dense path
  LinearSystem sys(f);
  std::vector<Poly> colpolys;
  for (size_t v : active) {
    for (const Monomial& m : reduced_basis(h, nv, degree_bound, filter, v)) {
      sys.cols.push_back(ColumnKey{m, v});
    }
  }
  std::sort(sys.cols.begin(), sys.cols.end(),
            [](const ColumnKey& a, const ColumnKey& b) {
              int c = Monomial::lex_cmp(a.mono, b.mono);
              if (c != 0) return c < 0;
              return a.var < b.var;
            });
  if (sys.cols.size() > 20000) {
    throw Error("step system too large; lower the degree bound");
  }
  colpolys.reserve(sys.cols.size());
  for (const ColumnKey& ck : sys.cols) {
    colpolys.push_back(
        (Poly::from_monomial(f, ck.mono, 1) * grads[ck.var]).mod_reduce(h));
  }
  Poly rhs = (-obs.known_part).mod_reduce(h);
  for (const Poly& cp : colpolys) {
    for (const auto& [m, c] : cp.terms()) sys.row(m);
  }
  for (const auto& [m, c] : rhs.terms()) sys.row(m);
  sys.finalize_rows();
  for (size_t ci = 0; ci < colpolys.size(); ++ci) {
    for (const auto& [m, c] : colpolys[ci].terms()) {
      sys.m[sys.row_of.at(m)][ci] = c;
    }
  }
  for (const auto& [m, c] : rhs.terms()) {
    sys.m[sys.row_of.at(m)][sys.cols.size()] = c;
  }

  auto solved = rref_solve(f, sys.m, sys.cols.size());
  if (!solved) return std::nullopt;
  for (size_t ci = 0; ci < sys.cols.size(); ++ci) {
    if (solved->particular[ci] == 0) continue;
    sol.particular[sys.cols[ci].var].add_term(sys.cols[ci].mono,
                                              int64_t(solved->particular[ci]));
  }
  for (const auto& vec : solved->nullspace) {
    std::vector<Poly> dir(nv, Poly::zero(f, nv));
    for (size_t ci = 0; ci < sys.cols.size(); ++ci) {
      if (vec[ci] != 0) {
        dir[sys.cols[ci].var].add_term(sys.cols[ci].mono, int64_t(vec[ci]));
      }
    }
    sol.nullspace_basis.push_back(std::move(dir));
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Uniform obstruction analysis

namespace {

Poly divided_partial_multi(const Poly& h, const std::vector<uint32_t>& order) {
  Poly out(h);
  for (size_t v = 0; v < order.size(); ++v) {
    if (order[v] > 0) out = out.divided_partial(v, order[v]);
    if (out.is_zero()) break;
  }
  return out;
}

// Normal form under multi-divisor reduction.
Poly multi_reduce(Poly work, const std::vector<Poly>& divisors) {
  Poly rem(work.field(), work.nvars());
  while (!work.is_zero()) {
    const Monomial lm = work.leading_monomial();
    const uint32_t lc = work.leading_coeff();
    bool hit = false;
    for (const Poly& d : divisors) {
      if (!d.leading_monomial().divides(lm)) continue;
      Monomial q = d.leading_monomial().divide_from(lm);
      uint32_t qc = work.field().mul(lc, work.field().inv(d.leading_coeff()));
      for (const auto& [dm, dc] : d.terms()) {
        work.add_term(q * dm, -int64_t(work.field().mul(qc, dc)));
      }
      hit = true;
      break;
    }
    if (!hit) {
      rem.add_term(lm, int64_t(lc));
      Poly next(work.field(), work.nvars());
      for (const auto& [m, c] : work.terms()) {
        if (m != lm) next.add_term(m, int64_t(c));
      }
      work = std::move(next);
    }
  }
  return rem;
}

bool coprime_monomials(const Monomial& a, const Monomial& b) {
  for (size_t v = 0; v < a.nvars(); ++v) {
    if (a.exp(v) > 0 && b.exp(v) > 0) return false;
  }
  return true;
}

// Certifies that the step-j condition is unsolvable for every tower over
// the fixed first slot: the slot-j coefficient of phi(h) lies, for any
// choice of slot >= 2 coefficients, in K_fixed + <attachments, h>, and
// K_fixed is not a member of <attachments, h>.  Membership is decided by
// normal form, which is valid only when the divisor set has pairwise
// coprime leading monomials; otherwise the check reports inconclusive.
bool uniform_obstruction_check(const Poly& h, const std::vector<Poly>& delta,
                               size_t j, const Poly& k_fixed) {
  const PrimeField& f = h.field();
  size_t nv = h.nvars();
  if (nv > 2) return false;

  // attachments DP_{K+K'}(h) * delta^{K'} over reach-feasible splits
  std::vector<Poly> atts;
  std::vector<uint32_t> mdeg(nv);
  for (size_t v = 0; v < nv; ++v) mdeg[v] = h.degree_in(v);
  std::vector<uint32_t> M(nv, 0);
  auto advance = [&](std::vector<uint32_t>& idx,
                     const std::vector<uint32_t>& cap) {
    size_t v = idx.size();
    while (v > 0) {
      --v;
      if (idx[v] < cap[v]) {
        ++idx[v];
        std::fill(idx.begin() + v + 1, idx.end(), 0);
        return true;
      }
    }
    return false;
  };
  do {
    uint64_t msum = 0;
    for (uint32_t e : M) msum += e;
    if (msum == 0) continue;
    Poly dp = divided_partial_multi(h, M);
    if (dp.is_zero()) continue;
    // splits M = K + K'; K carries the slot >= 2 factors
    std::vector<uint32_t> Kp(nv, 0);
    do {
      bool ok = true;
      uint64_t kpsum = 0;
      for (size_t v = 0; v < nv; ++v) {
        if (Kp[v] > M[v]) {
          ok = false;
          break;
        }
        kpsum += Kp[v];
      }
      if (!ok || kpsum >= msum) continue;
      // reach: each of the |K| choice factors sits at slot >= 2 and each
      // delta factor at slot 1
      if (2 * (msum - kpsum) + kpsum > j) continue;
      Poly att = dp;
      for (size_t v = 0; v < nv && !att.is_zero(); ++v) {
        if (Kp[v] > 0) att = att * delta[v].pow(Kp[v]);
      }
      if (!att.is_zero()) atts.push_back(att.mod_reduce(h));
    } while (advance(Kp, M));
  } while (advance(M, mdeg));

  std::vector<Poly> divisors{h};
  for (Poly& a : atts) {
    if (a.is_zero()) continue;
    bool redundant = false;
    for (const Poly& d : divisors) {
      if (d.num_terms() == 1 && a.exact_div(d).has_value()) {
        redundant = true;
        break;
      }
    }
    if (!redundant) divisors.push_back(std::move(a));
  }
  // drop divisors that a later single-term divisor subsumes
  for (size_t i = 1; i < divisors.size(); ++i) {
    for (size_t k = 1; k < divisors.size(); ++k) {
      if (i == k || divisors[k].is_zero() || divisors[i].is_zero()) continue;
      if (divisors[k].num_terms() == 1 &&
          divisors[i].exact_div(divisors[k]).has_value()) {
        divisors[i] = Poly::zero(f, nv);
      }
    }
  }
  std::vector<Poly> kept;
  for (Poly& d : divisors) {
    if (!d.is_zero()) kept.push_back(std::move(d));
  }
  for (size_t i = 0; i < kept.size(); ++i) {
    for (size_t k = i + 1; k < kept.size(); ++k) {
      if (!coprime_monomials(kept[i].leading_monomial(),
                             kept[k].leading_monomial())) {
        return false;  // not a certified basis; stay inconclusive
      }
    }
  }
  return !multi_reduce(k_fixed, kept).is_zero();
}

// ---------------------------------------------------------------------------
// Search

struct Dir {
  std::vector<Poly> coeffs;
  bool axis = false;
  size_t var = 0;
  Monomial mono{0};
};

std::string dir_key(const Dir& d) {
  return derivation_to_string(d.coeffs);
}

struct SearchContext {
  explicit SearchContext(const Poly& curve) : h(curve) {}

  Poly h;
  std::vector<Poly> grads;
  size_t L = 0;
  SearchOptions opts;
  uint32_t bound_mult = 1;
  std::vector<Poly> delta_coeffs;

  std::vector<std::vector<Poly>> slots;  // per var, indices 0..L
  CertificatePool pool;                  // verified towers only

  uint64_t explored = 0;
  size_t deepest_fail = 1;
  bool capped = false;
  bool uniform = false;
  size_t uniform_step = 0;
  std::set<size_t> uwc_tried;
  std::map<std::string, bool> slot_inf_cache;
  std::map<std::string, bool> micro_cache;

  std::vector<size_t> axis_order;  // least k with a nonzero pure divided power
  size_t any_order = SIZE_MAX;

  uint32_t bound_at(size_t i) const {
    return static_cast<uint32_t>(std::min<uint64_t>(
        uint64_t(i) * bound_mult, 100000));
  }
};

void compute_static_orders(SearchContext& ctx) {
  const Poly& h = ctx.h;
  size_t nv = h.nvars();
  ctx.axis_order.assign(nv, SIZE_MAX);
  for (size_t v = 0; v < nv; ++v) {
    for (uint32_t k = 1; k <= h.degree_in(v); ++k) {
      if (!h.divided_partial(v, k).is_zero()) {
        ctx.axis_order[v] = k;
        break;
      }
    }
  }
  ctx.any_order = SIZE_MAX;
  if (nv <= 2) {
    std::vector<uint32_t> M(nv, 0), cap(nv);
    for (size_t v = 0; v < nv; ++v) cap[v] = h.degree_in(v);
    for (;;) {
      size_t v = M.size();
      bool moved = false;
      while (v > 0) {
        --v;
        if (M[v] < cap[v]) {
          ++M[v];
          std::fill(M.begin() + v + 1, M.end(), 0);
          moved = true;
          break;
        }
      }
      if (!moved) break;
      uint64_t s = 0;
      for (uint32_t e : M) s += e;
      if (s == 0 || s >= ctx.any_order) continue;
      if (!divided_partial_multi(h, M).is_zero()) ctx.any_order = s;
    }
  } else {
    ctx.any_order = 1;
  }
}

// Every coefficient of h(x_1 + a_1 mu, ..., x_d + a_d mu) beyond slot 0
// lies in <h>: the single-slot tower on these coefficients is logarithmic
// of unbounded length.
bool single_slot_infinite(SearchContext& ctx, const Dir& d) {
  std::string key = dir_key(d);
  auto it = ctx.slot_inf_cache.find(key);
  if (it != ctx.slot_inf_cache.end()) return it->second;
  const Poly& h = ctx.h;
  size_t nv = h.nvars();
  bool ok = true;
  std::vector<uint32_t> M(nv, 0), cap(nv);
  for (size_t v = 0; v < nv; ++v) cap[v] = h.degree_in(v);
  for (;;) {
    size_t v = M.size();
    bool moved = false;
    while (v > 0) {
      --v;
      if (M[v] < cap[v]) {
        ++M[v];
        std::fill(M.begin() + v + 1, M.end(), 0);
        moved = true;
        break;
      }
    }
    if (!moved) break;
    Poly dp = divided_partial_multi(h, M);
    if (dp.is_zero()) continue;
    Poly term = dp;
    for (size_t w = 0; w < nv && !term.is_zero(); ++w) {
      if (M[w] > 0) term = term * d.coeffs[w].pow(M[w]);
    }
    if (term.is_zero()) continue;
    if (!term.mod_reduce(h).is_zero()) {
      ok = false;
      break;
    }
  }
  ctx.slot_inf_cache.emplace(std::move(key), ok);
  return ok;
}

bool pool_covers(const SearchContext& ctx, const Dir& d, size_t step) {
  for (const PoolEntry& e : ctx.pool.entries()) {
    if (e.length() * step < ctx.L) continue;
    std::vector<Poly> ec = e.coeffs();
    if (d.axis) {
      // single-variable single-term entries cover their monomial multiples
      size_t ev = SIZE_MAX;
      bool pure = true;
      for (size_t v = 0; v < ec.size(); ++v) {
        if (ec[v].is_zero()) continue;
        if (ev != SIZE_MAX) {
          pure = false;
          break;
        }
        ev = v;
      }
      if (pure && ev == d.var && ec[ev].num_terms() == 1 &&
          ec[ev].leading_monomial().divides(d.mono)) {
        return true;
      }
    }
    // exact scalar multiple of the entry
    size_t v0 = SIZE_MAX;
    for (size_t v = 0; v < ec.size(); ++v) {
      if (!ec[v].is_zero()) {
        v0 = v;
        break;
      }
    }
    if (v0 == SIZE_MAX) continue;
    if (d.coeffs[v0].is_zero()) continue;
    const PrimeField& f = ctx.h.field();
    Poly er = ec[v0].mod_reduce(ctx.h);
    Poly dr = d.coeffs[v0];
    if (er.is_zero()) continue;
    uint32_t c = f.mul(dr.coeff(er.leading_monomial()), f.inv(er.leading_coeff()));
    if (c == 0) continue;
    bool match = true;
    for (size_t v = 0; v < ec.size(); ++v) {
      if (ec[v].mod_reduce(ctx.h).scaled(int64_t(c)) != d.coeffs[v]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

IntegrateResult integrate_impl(const HSDerivation& delta, const Poly& h,
                               size_t L, const SearchOptions& opts);

bool micro_bootstrap_dir(SearchContext& ctx, const Dir& d, size_t step) {
  if (!ctx.opts.micro_bootstrap || ctx.opts.recursion_depth > 0) return false;
  size_t target = (ctx.L + step - 1) / step;
  if (target >= ctx.L || target < 1) return false;
  std::string key = dir_key(d) + "#" + std::to_string(target);
  auto it = ctx.micro_cache.find(key);
  if (it != ctx.micro_cache.end()) return it->second;

  bool ok = false;
  try {
    HSDerivation cand = HSDerivation::from_derivation(d.coeffs);
    SearchOptions sub;
    sub.mode = SearchMode::Greedy;
    sub.budget = 2000;
    sub.bound_multiplier = ctx.bound_mult;
    sub.auto_seed = false;
    sub.micro_bootstrap = false;
    sub.recursion_depth = ctx.opts.recursion_depth + 1;
    IntegrateResult r = integrate_impl(cand, ctx.h, target, sub);
    if (auto* cert = std::get_if<IntegralCertificate>(&r)) {
      ctx.pool.add(PoolEntry{cert->derivation});
      ok = true;
    }
  } catch (const Error&) {
    ok = false;
  }
  ctx.micro_cache.emplace(std::move(key), ok);
  return ok;
}

std::vector<Dir> residual_dirs(SearchContext& ctx, const StepSolution& sol,
                               size_t i) {
  std::vector<Dir> out;
  if (ctx.opts.mode == SearchMode::Greedy) return out;
  if (2 * i > ctx.L) return out;  // free extension past the target length

  const PrimeField& f = ctx.h.field();
  size_t nv = ctx.h.nvars();
  std::vector<Dir> cand;
  for (const auto& [v, m] : sol.free_axes) {
    if (ctx.axis_order[v] == SIZE_MAX || ctx.axis_order[v] * i > ctx.L) {
      continue;  // earliest affected slot beyond the target
    }
    Dir d;
    d.axis = true;
    d.var = v;
    d.mono = m;
    d.coeffs.assign(nv, Poly::zero(f, nv));
    d.coeffs[v] = Poly::from_monomial(f, m, 1);
    cand.push_back(std::move(d));
  }
  for (const auto& vec : sol.nullspace_basis) {
    size_t nonzero_vars = 0, var = 0;
    for (size_t v = 0; v < nv; ++v) {
      if (!vec[v].is_zero()) {
        ++nonzero_vars;
        var = v;
      }
    }
    if (nonzero_vars == 0) continue;
    Dir d;
    d.coeffs = vec;
    if (nonzero_vars == 1 && vec[var].num_terms() == 1) {
      d.axis = true;
      d.var = var;
      d.mono = vec[var].leading_monomial();
      if (ctx.axis_order[var] == SIZE_MAX || ctx.axis_order[var] * i > ctx.L) {
        continue;
      }
    } else {
      if (ctx.any_order == SIZE_MAX || ctx.any_order * i > ctx.L) continue;
    }
    cand.push_back(std::move(d));
  }

  // cheap filters first; keep candidates ordered smallest-first so the most
  // useful directions survive the cap
  auto dir_rank = [](const Dir& d) {
    if (d.axis) return d.mono;
    Monomial top(d.coeffs[0].nvars());
    for (const Poly& c : d.coeffs) {
      if (!c.is_zero() && Monomial::lex_cmp(c.leading_monomial(), top) > 0) {
        top = c.leading_monomial();
      }
    }
    return top;
  };
  std::sort(cand.begin(), cand.end(), [&](const Dir& a, const Dir& b) {
    int c = Monomial::lex_cmp(dir_rank(a), dir_rank(b));
    if (c != 0) return c < 0;
    if (a.axis != b.axis) return a.axis;
    if (a.axis && a.var != b.var) return a.var < b.var;
    return derivation_to_string(a.coeffs) < derivation_to_string(b.coeffs);
  });

  size_t micro_budget = 64;
  for (Dir& d : cand) {
    if (out.size() >= ctx.opts.residual_cap) {
      ctx.capped = true;
      break;
    }
    if (pool_covers(ctx, d, i)) continue;
    if (single_slot_infinite(ctx, d)) continue;
    if (micro_budget > 0) {
      --micro_budget;
      if (micro_bootstrap_dir(ctx, d, i)) continue;
    }
    out.push_back(std::move(d));
  }
  // enumerate with the lex-smallest direction in the fastest-moving
  // coordinate, so low-degree branches are visited first
  std::reverse(out.begin(), out.end());
  return out;
}

enum class DfsResult { Found, Dead, UniformDead };

DfsResult dfs(SearchContext& ctx, size_t i) {
  if (i > ctx.L) return DfsResult::Found;
  Poly known = known_part_at(ctx.slots, ctx.h, i);
  ObstructionRecord obs(i, known, ctx.grads);
  auto sol = solve_step(obs, ctx.h, ctx.bound_at(i), ctx.opts.basis_filter);
  if (!sol) {
    ctx.deepest_fail = std::max(ctx.deepest_fail, i);
    if (!ctx.uwc_tried.count(i)) {
      ctx.uwc_tried.insert(i);
      Poly k_fixed = known_part_at(
          [&] {
            std::vector<std::vector<Poly>> base(ctx.h.nvars());
            for (size_t v = 0; v < ctx.h.nvars(); ++v) {
              base[v] = {Poly::variable(ctx.h.field(), ctx.h.nvars(), v),
                         ctx.delta_coeffs[v]};
            }
            return base;
          }(),
          ctx.h, i);
      if (uniform_obstruction_check(ctx.h, ctx.delta_coeffs, i, k_fixed)) {
        ctx.uniform = true;
        ctx.uniform_step = i;
        return DfsResult::UniformDead;
      }
    }
    return DfsResult::Dead;
  }

  const PrimeField& f = ctx.h.field();
  size_t nv = ctx.h.nvars();
  uint32_t p = f.p();

  auto try_branch = [&](const std::vector<Poly>& coeffs) {
    ++ctx.explored;
    if (ctx.explored > ctx.opts.budget) throw BudgetExceeded(ctx.explored);
    for (size_t v = 0; v < nv; ++v) ctx.slots[v][i] = coeffs[v];
    DfsResult r = dfs(ctx, i + 1);
    if (r == DfsResult::Found) return r;  // keep the winning slot in place
    for (size_t v = 0; v < nv; ++v) ctx.slots[v][i] = Poly::zero(f, nv);
    return r;
  };

  // the particular branch first; directions are built only if it dies
  DfsResult first = try_branch(sol->particular);
  if (first != DfsResult::Dead) return first;
  if (ctx.opts.mode == SearchMode::Greedy) return DfsResult::Dead;

  std::vector<Dir> dirs = residual_dirs(ctx, *sol, i);
  if (dirs.empty()) return DfsResult::Dead;

  std::vector<uint32_t> c(dirs.size(), 0);
  for (;;) {
    // next assignment in ascending lex order (rightmost fastest); the
    // all-zero vector was already visited above
    size_t k = dirs.size();
    bool moved = false;
    while (k > 0) {
      --k;
      if (c[k] + 1 < p) {
        ++c[k];
        std::fill(c.begin() + k + 1, c.end(), 0);
        moved = true;
        break;
      }
    }
    if (!moved) break;
    std::vector<Poly> coeffs = sol->particular;
    for (size_t kk = 0; kk < dirs.size(); ++kk) {
      if (c[kk] == 0) continue;
      for (size_t v = 0; v < nv; ++v) {
        coeffs[v] = coeffs[v] + dirs[kk].coeffs[v].scaled(int64_t(c[kk]));
      }
    }
    DfsResult r = try_branch(coeffs);
    if (r != DfsResult::Dead) return r;
  }
  return DfsResult::Dead;
}

IntegrateResult integrate_impl(const HSDerivation& delta, const Poly& h,
                               size_t L, const SearchOptions& opts) {
  if (h.is_zero()) throw ZeroDivisor("integrate against zero");
  if (delta.length() != 1)
    throw DegenerateInput("integrate expects a length-1 derivation");
  if (delta.nvars() != h.nvars() || delta.field() != h.field())
    throw RingMismatch("derivation and polynomial from different rings");
  if (L < 1) throw DegenerateInput("target length must be at least 1");

  LogCheckReport base = is_logarithmic(delta, h);
  if (!base.ok) {
    throw NotLogarithmic("derivation is not logarithmic; residue " +
                         to_string(base.first_failure->second));
  }

  SearchContext ctx(h);
  ctx.grads = gradient(h);
  ctx.L = L;
  ctx.opts = opts;
  ctx.delta_coeffs = delta.first_component();
  {
    uint64_t dd = 0;
    for (const Poly& c : ctx.delta_coeffs) {
      if (!c.is_zero()) dd = std::max(dd, c.total_degree());
    }
    uint64_t m = std::max<uint64_t>(h.total_degree(), dd + 1);
    ctx.bound_mult = opts.bound_multiplier.value_or(
        static_cast<uint32_t>(std::max<uint64_t>(m, 1)));
  }
  compute_static_orders(ctx);

  // verified pool entries
  if (opts.pool) {
    for (const PoolEntry& e : opts.pool->entries()) {
      if (e.tower.nvars() != h.nvars() || e.tower.field() != h.field()) continue;
      if (is_logarithmic(e.tower, h).ok) ctx.pool.add(e);
    }
  }
  if (opts.auto_seed) {
    if (auto w = quasi_homogeneous_weights(h)) {
      HSDerivation e = euler_integral(h.field(), *w, std::max<size_t>(L, 2));
      bool trivial = true;
      for (const Poly& c : e.first_component()) {
        if (!c.is_zero()) trivial = false;
      }
      if (!trivial && is_logarithmic(e, h).ok) ctx.pool.add(PoolEntry{e});
    }
  }

  size_t nv = h.nvars();
  ctx.slots.assign(nv, {});
  for (size_t v = 0; v < nv; ++v) {
    ctx.slots[v].assign(L + 1, Poly::zero(h.field(), nv));
    ctx.slots[v][0] = Poly::variable(h.field(), nv, v);
    ctx.slots[v][1] = ctx.delta_coeffs[v];
  }

  DfsResult r = L == 1 ? DfsResult::Found : dfs(ctx, 2);
  if (r == DfsResult::Found) {
    std::vector<TruncSeries> imgs;
    for (size_t v = 0; v < nv; ++v) {
      TruncSeries s(h.field(), nv, L);
      for (size_t j = 0; j <= L; ++j) s.set_slot(j, ctx.slots[v][j]);
      imgs.push_back(std::move(s));
    }
    HSDerivation tower = HSDerivation::from_images(std::move(imgs));
    LogCheckReport final_check = is_logarithmic(tower, h);
    if (!final_check.ok) {
      throw Error("internal: certificate failed independent re-verification");
    }
    if (opts.pool) opts.pool->add(PoolEntry{tower});
    return IntegralCertificate{std::move(tower), h, L};
  }
  LeapWitness w;
  w.explored = ctx.explored;
  w.mode = opts.mode;
  if (r == DfsResult::UniformDead) {
    w.failed_at = ctx.uniform_step;
    w.degree_bound = ctx.bound_at(ctx.uniform_step);
    w.exhaustive_within_bound = true;
    w.uniform_obstruction = true;
  } else {
    w.failed_at = ctx.deepest_fail;
    w.degree_bound = ctx.bound_at(ctx.deepest_fail);
    w.exhaustive_within_bound =
        opts.mode == SearchMode::Exhaustive && !ctx.capped;
    w.uniform_obstruction = false;
  }
  return w;
}

}  // namespace

IntegrateResult integrate(const HSDerivation& delta, const Poly& h, size_t L,
                          const SearchOptions& opts) {
  return integrate_impl(delta, h, L, opts);
}

HSDerivation euler_integral(const PrimeField& f,
                            const std::vector<uint64_t>& weights, size_t L) {
  if (weights.empty()) throw DegenerateInput("no variables");
  size_t nv = weights.size();
  std::vector<TruncSeries> imgs;
  for (size_t v = 0; v < nv; ++v) {
    if (weights[v] == 0) throw DegenerateInput("weights must be positive");
    TruncSeries s(f, nv, L);
    Poly xv = Poly::variable(f, nv, v);
    for (size_t i = 0; i <= L; ++i) {
      uint32_t b = binom_mod_p(weights[v], i, f.p());
      if (b != 0) s.set_slot(i, xv.scaled(int64_t(b)));
    }
    imgs.push_back(std::move(s));
  }
  return HSDerivation::from_images(std::move(imgs));
}

std::optional<std::vector<uint64_t>> quasi_homogeneous_weights(const Poly& h) {
  if (h.is_zero()) return std::nullopt;
  size_t nv = h.nvars();
  std::vector<std::vector<uint32_t>> exps;
  for (const auto& [m, c] : h.terms()) exps.push_back(m.exps());
  if (exps.size() == 1) {
    return std::vector<uint64_t>(nv, 1);
  }
  if (nv == 1) return std::nullopt;  // distinct pure powers cannot balance
  if (nv != 2) return std::nullopt;

  // all (a_i - a_0) w1 + (b_i - b_0) w2 = 0 with w positive
  int64_t w1 = 0, w2 = 0;
  for (size_t i = 1; i < exps.size(); ++i) {
    int64_t da = int64_t(exps[i][0]) - int64_t(exps[0][0]);
    int64_t db = int64_t(exps[i][1]) - int64_t(exps[0][1]);
    if (da == 0 && db == 0) continue;
    if (da == 0 || db == 0) return std::nullopt;
    if ((da > 0) == (db > 0)) return std::nullopt;
    int64_t c1 = std::abs(db), c2 = std::abs(da);
    int64_t g = std::gcd(c1, c2);
    c1 /= g;
    c2 /= g;
    if (w1 == 0) {
      w1 = c1;
      w2 = c2;
    } else if (w1 * c2 != w2 * c1) {
      return std::nullopt;
    }
  }
  if (w1 == 0) return std::nullopt;
  // verify
  uint64_t target = uint64_t(w1) * exps[0][0] + uint64_t(w2) * exps[0][1];
  for (const auto& e : exps) {
    if (uint64_t(w1) * e[0] + uint64_t(w2) * e[1] != target) return std::nullopt;
  }
  return std::vector<uint64_t>{uint64_t(w1), uint64_t(w2)};
}

IntegrateResult gradient_multiple_integral(
    const std::vector<std::vector<Poly>>& decomposition, const Poly& f,
    size_t L, const SearchOptions& opts) {
  if (f.is_zero()) throw ZeroDivisor("gradient integral against zero");
  size_t nv = f.nvars();
  if (decomposition.size() != nv)
    throw NotApplicable("decomposition has wrong arity");
  std::vector<Poly> grads = gradient(f);
  std::vector<Poly> delta(nv, Poly::zero(f.field(), nv));
  for (size_t v = 0; v < nv; ++v) {
    if (decomposition[v].size() != nv)
      throw NotApplicable("decomposition has wrong arity");
    for (size_t w = 0; w < nv; ++w) {
      delta[v] = delta[v] + decomposition[v][w] * grads[w];
    }
  }
  Poly df(f.field(), nv);
  for (size_t v = 0; v < nv; ++v) df = df + delta[v] * grads[v];
  if (!df.mod_reduce(f).is_zero()) {
    throw NotApplicable("candidate does not preserve the ideal");
  }
  SearchOptions o = opts;
  o.mode = SearchMode::Exhaustive;
  return integrate(HSDerivation::from_derivation(delta), f, L, o);
}

ProbeReport ider_probe(const Poly& h, size_t m,
                       const std::vector<std::vector<Poly>>& candidates,
                       const SearchOptions& opts) {
  ProbeReport report;
  CertificatePool local;
  SearchOptions o = opts;
  if (!o.pool) o.pool = &local;
  for (const auto& cand : candidates) {
    HSDerivation delta = HSDerivation::from_derivation(cand);
    IntegrateResult r = integrate(delta, h, m, o);
    if (std::holds_alternative<IntegralCertificate>(r)) {
      report.integrable.push_back(cand);
    }
    report.verdicts.push_back(ProbeVerdict{cand, std::move(r)});
  }
  return report;
}

}  // namespace hsint
