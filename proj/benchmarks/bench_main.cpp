#include "holocontact/holocontact.hpp"

#include <benchmark/benchmark.h>

using namespace holocontact;

namespace {

HermJet sample_jet(std::size_t m, int order) {
  std::string text = "exp(";
  for (std::size_t k = 1; k <= m; ++k) text += (k > 1 ? " + z" : "z") + std::to_string(k) + "*zb" + std::to_string(k);
  text += ") * pow(2 + z1*zb1, -1.5)";
  return eval_herm_jet(parse_kernel(text), Point(m, Complex(0.1, 0.05)), order, order);
}

void BM_JetMul(benchmark::State& st) {
  const HermJet a = sample_jet(st.range(0), st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(jet_mul(a, a));
}
BENCHMARK(BM_JetMul)->Args({1, 6})->Args({2, 4})->Args({3, 3});

void BM_JetInv(benchmark::State& st) {
  const HermJet a = sample_jet(st.range(0), st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(jet_inv(a));
}
BENCHMARK(BM_JetInv)->Args({1, 6})->Args({2, 4})->Args({3, 3});

void BM_AlongZ(benchmark::State& st) {
  ContactProblem pr;
  pr.bundle = BundleSpec::from_text("ball-1", 2, {{"pow(1 - z1*zb1 - z2*zb2, -1)"}});
  pr.bundle_tilde = pr.bundle;
  pr.order = static_cast<int>(st.range(0));
  for (int k = 0; k < 5; ++k) pr.points.push_back({Complex(0.0), Complex(-0.2 + 0.1 * k, 0.0)});
  pr.parallel = st.range(1) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(alongZ_check(pr));
}
BENCHMARK(BM_AlongZ)->Args({1, 0})->Args({2, 0})->Args({3, 0})->Args({3, 1})->Unit(benchmark::kMillisecond);

void BM_WordcalcSequences(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(build_sequences(SequenceRule::Recur19, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_WordcalcSequences)->DenseRange(3, 7, 2);

void BM_VerifyAppendix(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(verify_appendix(static_cast<int>(st.range(0)), 1));
}
BENCHMARK(BM_VerifyAppendix)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
