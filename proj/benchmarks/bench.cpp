#include <benchmark/benchmark.h>

#include "hsint/binomial.hpp"
#include "hsint/parse.hpp"

using namespace hsint;

namespace {

Poly dense_poly(const PrimeField& f, uint32_t deg) {
  Poly out(f, 2);
  uint64_t seed = 0x9e3779b97f4a7c15ull;
  for (uint32_t a = 0; a <= deg; ++a) {
    for (uint32_t b = 0; a + b <= deg; ++b) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      out.add_term(Monomial(std::vector<uint32_t>{a, b}),
                   int64_t(seed % f.p()));
    }
  }
  return out;
}

void BM_poly_mul(benchmark::State& state) {
  PrimeField f(3);
  Poly a = dense_poly(f, uint32_t(state.range(0)));
  Poly b = dense_poly(f, uint32_t(state.range(0)));
  for (auto _ : state) {
    Poly c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_poly_mul)->Arg(4)->Arg(8)->Arg(16);

void BM_mod_reduce(benchmark::State& state) {
  PrimeField f(3);
  Poly h = curve_poly(3, 3, 4);
  Poly a = dense_poly(f, uint32_t(state.range(0)));
  for (auto _ : state) {
    Poly r = a.mod_reduce(h);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_mod_reduce)->Arg(8)->Arg(16)->Arg(32);

void BM_closed_form_verify(benchmark::State& state) {
  size_t L = size_t(state.range(0));
  Poly h = curve_poly(3, 3, 4);
  ClosedFormIntegral cf = closed_form_integral(3, 3, 4);
  for (auto _ : state) {
    HSDerivation d = cf.materialize(L);
    bool ok = is_logarithmic(d, h).ok;
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_closed_form_verify)->Arg(9)->Arg(27)->Arg(81);

void BM_integrate_exhaustive(benchmark::State& state) {
  PrimeField f(3);
  Poly h = curve_poly(3, 3, 4);
  auto delta = HSDerivation::from_derivation(parse_derivation("y*dx", f, 2));
  for (auto _ : state) {
    CertificatePool pool = standard_pool(3, 3, 4, size_t(state.range(0)));
    SearchOptions opts;
    opts.mode = SearchMode::Exhaustive;
    opts.pool = &pool;
    auto r = integrate(delta, h, size_t(state.range(0)), opts);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_integrate_exhaustive)->Arg(4)->Arg(8);

void BM_classify_grid(benchmark::State& state) {
  for (auto _ : state) {
    size_t leap_count = 0;
    for (uint64_t n = 1; n <= 8; ++n) {
      for (uint64_t q = 1; q <= 8; ++q) {
        if (n % 3 == 0 && q % 3 == 0) continue;
        leap_count += classify(3, n, q).leaps.size();
      }
    }
    benchmark::DoNotOptimize(leap_count);
  }
}
BENCHMARK(BM_classify_grid);

}  // namespace

BENCHMARK_MAIN();
