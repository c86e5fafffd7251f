#include "lkt/corpus.hpp"
#include "lkt/lkt.hpp"

#include <benchmark/benchmark.h>

using namespace lkt;

namespace {

const GroupCase& corpus_group(std::size_t i) {
  static const std::vector<GroupCase> groups = finite_corpus_groups();
  return groups.at(i);
}

void BM_KgbConstruction(benchmark::State& state) {
  const GroupCase& g = corpus_group(static_cast<std::size_t>(state.range(0)));
  InnerClass ic = inner_class_of(g);
  for (auto _ : state) {
    Kgb kgb(ic);
    benchmark::DoNotOptimize(kgb.enumerate().size());
  }
  state.SetLabel(g.label);
}

void BM_CorpusParameters(benchmark::State& state) {
  const GroupCase& g = corpus_group(static_cast<std::size_t>(state.range(0)));
  Context ctx(inner_class_of(g));
  for (auto _ : state) benchmark::DoNotOptimize(corpus_parameters(ctx).size());
  state.SetLabel(g.label);
}

void BM_LowestKTypes(benchmark::State& state) {
  const GroupCase& g = corpus_group(static_cast<std::size_t>(state.range(0)));
  Context ctx(inner_class_of(g));
  std::vector<LParameter> params = corpus_parameters(ctx);
  std::size_t runs = 0;
  for (auto _ : state)
    for (const auto& p : params) {
      benchmark::DoNotOptimize(lowest_k_types(ctx, p, final_characters(ctx, p).group.zero()).entries.size());
      ++runs;
    }
  state.SetItemsProcessed(static_cast<int64_t>(runs));
  state.SetLabel(g.label);
}

void corpus_range(benchmark::internal::Benchmark* b) {
  for (std::size_t i = 0; i < finite_corpus_groups().size(); ++i) b->Arg(static_cast<int64_t>(i));
}

}  // namespace

BENCHMARK(BM_KgbConstruction)->Apply(corpus_range)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorpusParameters)->Apply(corpus_range)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LowestKTypes)->Apply(corpus_range)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
