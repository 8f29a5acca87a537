#include <benchmark/benchmark.h>

#include "coindex/abelian.hpp"
#include "coindex/bsgs.hpp"
#include "coindex/congruence.hpp"
#include "coindex/dataset.hpp"
#include "coindex/reidemeister.hpp"
#include "coindex/toddcoxeter.hpp"

namespace {

using namespace coindex;

struct Fixture {
  ReducedPresentation reduced;
  std::vector<NamedMatrix> gens;
  std::vector<Word> s_words;
  CosetTable table7;
  RSPresentation rs;
};

Fixture const& fixture() {
  static Fixture const f = [] {
    Fixture out;
    Dataset const& d = builtin_dataset();
    out.reduced = reduce_presentation(d);
    for (std::size_t i = 0; i < out.reduced.presentation.generator_count(); ++i) {
      for (auto const& g : d.gamma_gens) {
        if (g.name == out.reduced.presentation.generators().name(i)) {
          out.gens.push_back(g);
        }
      }
    }
    for (auto const& w : d.s_words) {
      out.s_words.push_back(out.reduced.map(w.word));
    }
    out.table7 = cayley_coset_table(FiniteMatGroup::reduce(out.gens, make_reduction(7)));
    out.rs = subgroup_presentation(out.reduced.presentation, out.table7);
    return out;
  }();
  return f;
}

void BM_CayleyTable(benchmark::State& state) {
  auto const& f = fixture();
  FiniteMatGroup const g = FiniteMatGroup::reduce(f.gens, make_reduction(static_cast<std::uint32_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cayley_coset_table(g));
  }
}
BENCHMARK(BM_CayleyTable)->Arg(2)->Arg(7)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_BsgsOrder(benchmark::State& state) {
  auto const& f = fixture();
  FiniteMatGroup const g = FiniteMatGroup::reduce(f.gens, make_reduction(static_cast<std::uint32_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bsgs_order(g));
  }
}
BENCHMARK(BM_BsgsOrder)->Arg(31)->Arg(607)->Unit(benchmark::kMillisecond);

void BM_ToddCoxeter(benchmark::State& state) {
  auto const& f = fixture();
  TCConfig cfg;
  cfg.max_cosets = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coset_enumerate(f.reduced.presentation, f.s_words, cfg));
  }
}
BENCHMARK(BM_ToddCoxeter)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_KernelPresentation(benchmark::State& state) {
  auto const& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(subgroup_presentation(f.reduced.presentation, f.table7));
  }
}
BENCHMARK(BM_KernelPresentation)->Unit(benchmark::kMillisecond);

void BM_KernelRank(benchmark::State& state) {
  IntMat const rel = relation_matrix(fixture().rs.presentation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(int_rank(rel));
  }
}
BENCHMARK(BM_KernelRank)->Unit(benchmark::kMillisecond);

void BM_KernelRankModP(benchmark::State& state) {
  IntMat const rel = relation_matrix(fixture().rs.presentation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_mod_p(rel, rank_check_primes().front()));
  }
}
BENCHMARK(BM_KernelRankModP)->Unit(benchmark::kMillisecond);

void BM_Simplify(benchmark::State& state) {
  auto const& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(simplify_presentation_traced(f.rs.presentation));
  }
}
BENCHMARK(BM_Simplify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
