// Parallel kernels against their serial references.
#include "adelic/family.hpp"

#include <benchmark/benchmark.h>

using namespace adelic;

namespace {

const Curve& disc31_curve() {
  static const Curve E = [] {
    const NumberField& K = family_field();
    return curve_from_roots(K.zero(), K.parse("2*a^2+7*a+19"), K.parse("18*a^2+7*a+3"));
  }();
  return E;
}

ReducedCurve at157() { return reduce_at(disc31_curve(), prime_from_generator(family_field(), family_field().parse("157"))); }

ReducedCurve prime_curve(std::uint64_t p) { return reduce_rational({1, -1, 1, -19353, 958713}, p); }

void BM_count_parallel_Fp(benchmark::State& st) {
  ReducedCurve C = prime_curve(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(count_points(C));
}
void BM_count_serial_Fp(benchmark::State& st) {
  ReducedCurve C = prime_curve(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(count_points_serial(C));
}
void BM_count_parallel_F157cubed(benchmark::State& st) {
  ReducedCurve C = at157();
  for (auto _ : st) benchmark::DoNotOptimize(count_points(C));
}
void BM_count_serial_F157cubed(benchmark::State& st) {
  ReducedCurve C = at157();
  for (auto _ : st) benchmark::DoNotOptimize(count_points_serial(C));
}
void BM_scan_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(intersection_exclusions(st.range(0)));
}
void BM_scan_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(intersection_exclusions_serial(st.range(0)));
}
void BM_cyc_parallel(benchmark::State& st) {
  WitnessPool pool(family_field());
  for (auto _ : st) benchmark::DoNotOptimize(cyclotomic_intersection_ok(disc31_curve(), pool));
}
void BM_cyc_serial(benchmark::State& st) {
  WitnessPool pool(family_field());
  for (auto _ : st) benchmark::DoNotOptimize(cyclotomic_intersection_ok_serial(disc31_curve(), pool));
}

}  // namespace

BENCHMARK(BM_count_parallel_Fp)->Arg(19993)->Arg(1000003)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_serial_Fp)->Arg(19993)->Arg(1000003)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_parallel_F157cubed)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_count_serial_F157cubed)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_scan_parallel)->Arg(787)->Arg(827)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_serial)->Arg(787)->Arg(827)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cyc_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cyc_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
