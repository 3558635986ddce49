// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "hsint/binomial.hpp"
#include "hsint/io.hpp"
#include "hsint/parse.hpp"

using namespace hsint;
using Clock = std::chrono::steady_clock;

namespace {

struct Gate {
  int failures = 0;

  void run(int index, const std::string& title,
           const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto start = Clock::now();
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion-" << index << ": " << title
         << " [" << std::fixed;
    line.precision(2);
    line << secs << "s]";
    if (!ok && !detail.empty()) line << " -- " << detail;
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
  }
};

std::vector<std::string> gen_texts(const Piece& pc) {
  std::vector<std::string> out;
  for (const Generator& g : pc.generators) out.push_back(g.text);
  return out;
}

bool is_cert(const IntegrateResult& r) {
  return std::holds_alternative<IntegralCertificate>(r);
}

HSDerivation delta_of(const std::string& text, const PrimeField& f,
                      size_t nvars = 2) {
  return HSDerivation::from_derivation(parse_derivation(text, f, nvars));
}

// --- criterion 1: exact classification of the two worked curves ------------

bool criterion1(std::string& detail) {
  auto start = Clock::now();
  PiecewiseModule m = classify(3, 3, 4);
  bool ok = m.leaps == std::set<uint64_t>{3, 9} && m.pieces.size() == 3 &&
            m.pieces[0].lo == 1 && m.pieces[0].hi == 3 &&
            gen_texts(m.pieces[0]) == std::vector<std::string>{"dx"} &&
            m.pieces[1].hi == 9 &&
            gen_texts(m.pieces[1]) ==
                std::vector<std::string>{"x*dx", "y*dx"} &&
            !m.pieces[2].hi &&
            gen_texts(m.pieces[2]) ==
                std::vector<std::string>{"x*dx", "y^2*dx"};
  PiecewiseModule m5 = classify(3, 3, 5);
  ok = ok && m5.leaps == std::set<uint64_t>{3} && m5.pieces.size() == 2 &&
       gen_texts(m5.pieces[0]) == std::vector<std::string>{"dx"} &&
       m5.pieces[0].hi == 3 &&
       gen_texts(m5.pieces[1]) == std::vector<std::string>{"x*dx", "y^2*dx"};
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 1.0) {
    detail = "took " + std::to_string(secs) + "s";
    return false;
  }
  if (!ok) detail = "classification mismatch";
  return ok;
}

// --- criterion 2: classifier vs search oracle over the grid -----------------

bool criterion2(std::string& detail) {
  for (uint32_t p : {2u, 3u, 5u}) {
    uint64_t limit = 2 * uint64_t(p) * p;
    for (uint64_t n = 1; n <= 10; ++n) {
      for (uint64_t q = 1; q <= 10; ++q) {
        if (n % p == 0 && q % p == 0) continue;
        PiecewiseModule cls = classify(p, n, q);
        if (cls.leaps.empty()) continue;
        bool any_leap_in_range = false;
        for (uint64_t b : cls.leaps) {
          if (b <= limit) any_leap_in_range = true;
        }
        if (!any_leap_in_range) continue;
        Poly h = curve_poly(p, n, q);
        CertificatePool pool = standard_pool(p, n, q, size_t(limit));
        SearchOptions opts;
        opts.mode = SearchMode::Exhaustive;
        opts.pool = &pool;
        for (const Piece& pc : cls.pieces) {
          if (!pc.hi || *pc.hi > limit) continue;
          uint64_t b = *pc.hi;
          for (const Generator& g : pc.generators) {
            IntegrateResult r = integrate(
                HSDerivation::from_derivation(g.coeffs), h, size_t(b - 1),
                opts);
            if (!is_cert(r)) {
              detail = "no certificate for " + g.text + " to " +
                       std::to_string(b - 1) + " on (" + std::to_string(p) +
                       "," + std::to_string(n) + "," + std::to_string(q) + ")";
              return false;
            }
          }
          for (const Generator& g : pc.dropped_at_end) {
            IntegrateResult r = integrate(
                HSDerivation::from_derivation(g.coeffs), h, size_t(b), opts);
            const auto* w = std::get_if<LeapWitness>(&r);
            if (!w || w->failed_at != b) {
              detail = "no witness at " + std::to_string(b) + " for " +
                       g.text + " on (" + std::to_string(p) + "," +
                       std::to_string(n) + "," + std::to_string(q) + ")";
              return false;
            }
          }
        }
      }
    }
  }
  return true;
}

// --- criterion 3: closed-form towers verify on long prefixes ----------------

bool criterion3(std::string& detail) {
  for (uint32_t p : {2u, 3u, 5u}) {
    for (uint64_t n = 1; n <= 10; ++n) {
      for (uint64_t q = 1; q <= 10; ++q) {
        ClosedFormIntegral cf;
        try {
          cf = closed_form_integral(p, n, q);
        } catch (const Error&) {
          continue;
        }
        uint64_t expo = cf.inv.alpha + (cf.inv.beta ? *cf.inv.beta : 0);
        uint64_t L = 3;
        for (uint64_t i = 0; i < expo; ++i) L *= p;
        HSDerivation d = cf.materialize(size_t(L));
        if (!is_logarithmic(d, curve_poly(p, n, q)).ok) {
          detail = "closed form fails on (" + std::to_string(p) + "," +
                   std::to_string(n) + "," + std::to_string(q) + ") at L=" +
                   std::to_string(L);
          return false;
        }
      }
    }
  }
  return true;
}

// --- criteria 4-7: the worked-example fixtures ------------------------------

bool fixture_criterion(const std::string& name, std::string& detail) {
  fixtures::FixtureResult r = fixtures::run_fixture(name);
  if (!r.passed) {
    for (const auto& line : r.checks) {
      if (line.rfind("FAIL", 0) == 0) detail += line + "; ";
    }
  }
  return r.passed;
}

// --- criterion 8: Frobenius-power transfer at desk scale --------------------

bool criterion8(std::string& detail) {
  PrimeField f3(3);
  Poly h = curve_poly(3, 3, 4);
  Poly hp = parse_poly("x^9 - y^12", f3, 2);

  CertificatePool pool = standard_pool(3, 3, 4, 9);
  CertificatePool pool_hp;
  SearchOptions opts;
  opts.mode = SearchMode::Exhaustive;

  std::vector<std::string> gens{"dx", "x*dx", "y*dx", "y^2*dx"};
  for (const std::string& g : gens) {
    for (size_t k : {1u, 2u, 3u}) {
      opts.pool = &pool;
      bool along_h = is_cert(integrate(delta_of(g, f3), h, k, opts));
      opts.pool = &pool_hp;
      bool along_hp = is_cert(integrate(delta_of(g, f3), hp, 3 * k, opts));
      if (along_h != along_hp) {
        detail = g + " at length " + std::to_string(k) +
                 ": base and cube disagree";
        return false;
      }
    }
  }

  if (power_leaps(3, 3, 4, 1) != std::set<uint64_t>{3, 9, 27}) {
    detail = "power leap set mismatch";
    return false;
  }

  // direct search on the cube: drop points of the candidate set up to 9
  std::set<uint64_t> drops;
  std::vector<std::string> cands{"dy", "dx", "x*dx", "y*dx"};
  for (const std::string& g : cands) {
    opts.pool = &pool_hp;
    for (size_t l = 2; l <= 9; ++l) {
      IntegrateResult r = integrate(delta_of(g, f3), hp, l, opts);
      if (!is_cert(r)) {
        const auto& w = std::get<LeapWitness>(r);
        if (w.failed_at != l) {
          detail = g + ": witness at " + std::to_string(w.failed_at) +
                   " while probing " + std::to_string(l);
          return false;
        }
        drops.insert(l);
        break;
      }
    }
  }
  std::set<uint64_t> expected;
  for (uint64_t l : power_leaps(3, 3, 4, 1)) {
    if (l <= 9) expected.insert(l);
  }
  if (drops != expected) {
    std::string got;
    for (auto d : drops) got += std::to_string(d) + " ";
    detail = "drop points { " + got + "} do not match the lifted leap set";
    return false;
  }
  return true;
}

// --- criterion 9: randomized property suites --------------------------------

struct PropRng {
  std::mt19937_64 gen{20260810};
  uint64_t next(uint64_t bound) { return gen() % bound; }

  Poly poly(const PrimeField& f, size_t nvars, uint32_t max_exp,
            size_t max_terms) {
    Poly out(f, nvars);
    size_t terms = 1 + next(max_terms);
    for (size_t t = 0; t < terms; ++t) {
      std::vector<uint32_t> e(nvars);
      for (auto& x : e) x = uint32_t(next(max_exp + 1));
      out.add_term(Monomial(std::move(e)), int64_t(next(f.p())));
    }
    return out;
  }

  HSDerivation tower(const PrimeField& f, size_t nvars, size_t length,
                     uint32_t max_exp, size_t max_terms) {
    std::vector<TruncSeries> imgs;
    for (size_t v = 0; v < nvars; ++v) {
      TruncSeries s(f, nvars, length);
      s.set_slot(0, Poly::variable(f, nvars, v));
      for (size_t i = 1; i <= length; ++i) {
        s.set_slot(i, poly(f, nvars, max_exp, max_terms));
      }
      imgs.push_back(std::move(s));
    }
    return HSDerivation::from_images(std::move(imgs));
  }
};

bool criterion9(std::string& detail) {
  PropRng rng;
  const int N = 1000;

  // Leibniz law
  for (int t = 0; t < N; ++t) {
    PrimeField f(t % 2 == 0 ? 2 : 3);
    auto d = rng.tower(f, 2, 3, 2, 2);
    Poly a = rng.poly(f, 2, 2, 2);
    Poly b = rng.poly(f, 2, 2, 2);
    TruncSeries sa = d.apply(a), sb = d.apply(b), sab = d.apply(a * b);
    for (size_t i = 0; i <= 3; ++i) {
      Poly conv(f, 2);
      for (size_t k = 0; k <= i; ++k) conv = conv + sa.slot(k) * sb.slot(i - k);
      if (sab.slot(i) != conv) {
        detail = "Leibniz law failed";
        return false;
      }
    }
  }

  // group axioms
  for (int t = 0; t < N; ++t) {
    PrimeField f(t % 2 == 0 ? 2 : 3);
    size_t len = 2 + t % 3;  // lengths 2..4
    auto a = rng.tower(f, 2, len, 2, 2);
    auto b = rng.tower(f, 2, len, 2, 2);
    auto c = rng.tower(f, 2, len, 2, 2);
    auto id = HSDerivation::identity(f, 2, len);
    if (a.compose(b.compose(c)) != (a.compose(b)).compose(c) ||
        a.compose(id) != a || a.compose(a.invert()) != id ||
        a.invert().compose(a) != id) {
      detail = "group axiom failed";
      return false;
    }
  }

  // scale and truncate laws
  for (int t = 0; t < N; ++t) {
    PrimeField f(5);
    auto d = rng.tower(f, 2, 4, 2, 2);
    Poly a = rng.poly(f, 2, 2, 2);
    auto s = d.scale(a);
    Poly g = rng.poly(f, 2, 2, 2);
    Poly apow = Poly::one(f, 2);
    TruncSeries dg = d.apply(g), sg = s.apply(g);
    for (size_t i = 1; i <= 4; ++i) {
      apow = apow * a;
      if (sg.slot(i) != apow * dg.slot(i)) {
        detail = "scale law failed";
        return false;
      }
    }
    size_t nn = 1 + t % 4;
    if (d.truncate(nn).length() != nn ||
        d.truncate(3).truncate(2) != d.truncate(2) ||
        d.extend_freely(6).truncate(4) != d) {
      detail = "truncate law failed";
      return false;
    }
  }

  // Frobenius law for components of p-th powers
  for (int t = 0; t < N; ++t) {
    uint32_t p = t % 2 == 0 ? 2 : 3;
    PrimeField f(p);
    size_t m = 2 * p;
    auto d = rng.tower(f, 2, m, 2, 2);
    Poly h = rng.poly(f, 2, 2, 2);
    TruncSeries of_power = d.apply(h.pow(p));
    TruncSeries of_base = d.apply(h);
    for (size_t i = 1; i <= m; ++i) {
      if (i % p != 0) {
        if (!of_power.slot(i).is_zero()) {
          detail = "Frobenius vanishing failed";
          return false;
        }
      } else if (of_power.slot(i) != of_base.slot(i / p).pow(p)) {
        detail = "Frobenius law failed";
        return false;
      }
    }
  }

  // top component of powers for towers stabilizing <g> below the top
  for (int t = 0; t < N; ++t) {
    PrimeField f(t % 2 == 0 ? 2 : 3);
    Poly g = rng.poly(f, 2, 2, 2);
    if (g.is_zero()) g = Poly::one(f, 2);
    size_t m = 3;
    std::vector<TruncSeries> imgs;
    for (size_t v = 0; v < 2; ++v) {
      TruncSeries s(f, 2, m);
      s.set_slot(0, Poly::variable(f, 2, v));
      for (size_t i = 1; i < m; ++i) s.set_slot(i, g * rng.poly(f, 2, 1, 2));
      s.set_slot(m, rng.poly(f, 2, 2, 2));
      imgs.push_back(std::move(s));
    }
    auto d = HSDerivation::from_images(std::move(imgs));
    uint32_t r = 2 + uint32_t(t % 2);
    Poly lhs = d.component(g.pow(r), m);
    Poly rhs = g.pow(r - 1).scaled(int64_t(r)) * d.component(g, m);
    if (!(lhs - rhs).exact_div(g.pow(r)).has_value()) {
      detail = "power congruence failed";
      return false;
    }
  }

  // intersection law along coprime factors
  {
    PrimeField f2(2);
    Poly fa = parse_poly("y^2", f2, 2);
    Poly fb = parse_poly("x^2 - y", f2, 2);
    Poly fab = fa * fb;
    for (int t = 0; t < N; ++t) {
      size_t len = 2 + t % 2;
      std::vector<TruncSeries> imgs;
      bool seeded = t % 2 == 0;
      for (size_t v = 0; v < 2; ++v) {
        TruncSeries s(f2, 2, len);
        s.set_slot(0, Poly::variable(f2, 2, v));
        for (size_t i = 1; i <= len; ++i) {
          Poly c = rng.poly(f2, 2, 2, 2);
          s.set_slot(i, seeded ? fab * c : c);
        }
        imgs.push_back(std::move(s));
      }
      auto d = HSDerivation::from_images(std::move(imgs));
      bool la = is_logarithmic(d, fa).ok;
      bool lb = is_logarithmic(d, fb).ok;
      bool lab = is_logarithmic(d, fab).ok;
      if (lab != (la && lb)) {
        detail = "intersection law failed";
        return false;
      }
    }
  }

  // certificate soundness: every returned tower re-verifies slot by slot
  {
    PrimeField f3(3);
    Poly h = curve_poly(3, 3, 4);
    CertificatePool pool = standard_pool(3, 3, 4, 4);
    int verified = 0;
    for (int t = 0; verified < N; ++t) {
      Poly u = rng.poly(f3, 2, 2, 3);
      Poly no_const = u - Poly::constant(f3, 2, int64_t(u.coeff(Monomial(2))));
      if (no_const.is_zero()) continue;
      SearchOptions opts;
      opts.pool = &pool;
      IntegrateResult r = integrate(
          HSDerivation::from_derivation({no_const, Poly::zero(f3, 2)}), h, 4,
          opts);
      if (!is_cert(r)) {
        detail = "expected a certificate for a module element: " +
                 derivation_to_string({no_const, Poly::zero(f3, 2)});
        return false;
      }
      const auto& cert = std::get<IntegralCertificate>(r);
      TruncSeries s = cert.derivation.apply(h);
      for (size_t i = 1; i <= 4; ++i) {
        if (!s.slot(i).exact_div(h).has_value()) {
          detail = "certificate failed slotwise re-verification";
          return false;
        }
      }
      ++verified;
    }
  }
  return true;
}

}  // namespace

int main() {
  Gate gate;
  gate.run(1, "worked classification reproduced exactly", criterion1);
  gate.run(2, "classifier agrees with the exhaustive search oracle",
           criterion2);
  gate.run(3, "closed-form towers verify on long prefixes", criterion3);
  gate.run(4, "characteristic-2 curve x^4 + y^6 + y^7",
           [](std::string& d) { return fixture_criterion("ex2-char2", d); });
  gate.run(5, "characteristic-3 curve x^3 + y^5 + x^2 y^2",
           [](std::string& d) { return fixture_criterion("ex3-char3", d); });
  gate.run(6, "one-variable family x^p + x^(p+1)",
           [](std::string& d) { return fixture_criterion("ex1", d); });
  gate.run(7, "product counterexample over F_2",
           [](std::string& d) { return fixture_criterion("remark-2.7", d); });
  gate.run(8, "Frobenius-power transfer at desk scale", criterion8);
  gate.run(9, "randomized property suites", criterion9);
  if (gate.failures == 0) {
    std::cout << "all criteria passed" << std::endl;
  } else {
    std::cout << gate.failures << " criterion(s) failed" << std::endl;
  }
  return gate.failures == 0 ? 0 : 1;
}
