#include <benchmark/benchmark.h>

#include "norlund/catalog.hpp"
#include "norlund/series.hpp"
#include "norlund/specfun.hpp"

using namespace norlund;

namespace {

void BM_Digamma(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const PrecisionContext ctx(p);
  const BigReal z = BigReal::from_fraction(7, 3, p);
  for (auto _ : state) benchmark::DoNotOptimize(digamma(z, ctx));
}
BENCHMARK(BM_Digamma)->Arg(256)->Arg(512)->Arg(1024)->Arg(2048);

void BM_Trigamma(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const PrecisionContext ctx(p);
  const BigReal z = BigReal::from_fraction(7, 3, p);
  for (auto _ : state) benchmark::DoNotOptimize(polygamma(PolyOrder(1), z, ctx));
}
BENCHMARK(BM_Trigamma)->Arg(256)->Arg(1024);

// PI-COT k=3 summed three ways; Levin needs ~70 terms, the others thousands.
void BM_PiCot(benchmark::State& state) {
  const auto method = static_cast<SumMethod>(state.range(0));
  const TermStream s = find_identity("PI-COT").lhs(Params{{"k", Scalar(3)}});
  SumConfig cfg;
  cfg.method = method;
  cfg.max_terms = 2048;
  for (auto _ : state) benchmark::DoNotOptimize(sum_stream(s, cfg));
  state.SetLabel(to_string(method));
}
BENCHMARK(BM_PiCot)
    ->Arg(static_cast<int>(SumMethod::levin))
    ->Arg(static_cast<int>(SumMethod::direct))
    ->Arg(static_cast<int>(SumMethod::richardson));

void BM_LevinByPrecision(benchmark::State& state) {
  const TermStream s = norlund_stream(Scalar(Rational(1, 3)), Scalar(Rational(5, 7)));
  SumConfig cfg;
  cfg.precision_bits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sum_stream(s, cfg));
}
BENCHMARK(BM_LevinByPrecision)->Arg(256)->Arg(512)->Arg(1024);

void BM_VerifyAll(benchmark::State& state) {
  const VerifyConfig cfg;
  for (auto _ : state) {
    for (const auto& e : catalog()) {
      for (const auto& s : samples(e)) benchmark::DoNotOptimize(verify_sample(e, s, cfg));
    }
  }
}
BENCHMARK(BM_VerifyAll)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
