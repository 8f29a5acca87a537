// One PASS/FAIL line per acceptance criterion. Integer comparisons are
// exact; wall-clock limits are listed with each criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "coindex/abelian.hpp"
#include "coindex/congruence.hpp"
#include "coindex/dataset.hpp"
#include "coindex/reidemeister.hpp"
#include "coindex/toddcoxeter.hpp"
#include "properties.hpp"

using namespace coindex;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  char const* title;
  double limit_seconds;
  std::function<Outcome(std::ostringstream&)> body;
};

// Shared state built by earlier criteria.
struct Context {
  Dataset data;
  ReducedPresentation reduced;
  std::vector<NamedMatrix> reduced_gens;
  std::vector<Word> s_words;
  FieldDesc f7;
  CosetTable table7;
  SchreierOrbit orbit7;
  std::optional<RSPresentation> rs;
  std::optional<SimplifyTrace> simplified;
};

void expect(Outcome& o, std::ostringstream& log, bool cond, std::string const& what) {
  log << (log.tellp() > 0 ? "; " : "") << what;
  if (!cond) {
    o.ok = false;
    log << " (MISMATCH)";
  }
}

template <class T>
std::string eq(char const* name, T const& got, T const& want) {
  std::ostringstream os;
  os << name << "=" << got;
  if (!(got == want)) {
    os << " want " << want;
  }
  return os.str();
}

}  // namespace

int main() {
  Context ctx;
  ctx.data = builtin_dataset();

  std::vector<Criterion> const criteria{
      {1, "dataset words and Swan relators", 1.0,
       [&](std::ostringstream& log) {
         Outcome o;
         Dataset const& d = ctx.data;
         std::size_t words_ok = 0;
         for (std::size_t i = 0; i < d.s_words.size(); ++i) {
           words_ok += evaluate_matrix_word(d.s_words[i].word, d.gamma_alphabet(), d.gamma_gens) == d.s_gens[i].matrix;
         }
         std::size_t rels_ok = 0;
         for (auto const& r : d.presentation.relators()) {
           rels_ok += evaluate_matrix_word(r, d.gamma_alphabet(), d.gamma_gens).is_identity();
         }
         expect(o, log, words_ok == 6 && d.s_words.size() == 6, eq("words_ok", words_ok, std::size_t{6}));
         expect(o, log, rels_ok == 19 && d.presentation.relator_count() == 19, eq("relators_ok", rels_ok, std::size_t{19}));
         ctx.reduced = reduce_presentation(d);
         expect(o, log, ctx.reduced.presentation.generators() == Alphabet{"t", "a", "w"}, "reduced to t,a,w");
         for (std::size_t i = 0; i < ctx.reduced.presentation.generator_count(); ++i) {
           for (auto const& g : d.gamma_gens) {
             if (g.name == ctx.reduced.presentation.generators().name(i)) {
               ctx.reduced_gens.push_back(g);
             }
           }
         }
         for (auto const& w : d.s_words) {
           ctx.s_words.push_back(ctx.reduced.map(w.word));
         }
         return o;
       }},
      {2, "mod-2 congruence image", 1.0,
       [&](std::ostringstream& log) {
         Outcome o;
         FieldDesc const f = make_reduction(2);
         auto const s = closure_order(FiniteMatGroup::reduce(ctx.data.s_gens, f), kDefaultClosureCap);
         auto const g = closure_order(FiniteMatGroup::reduce(ctx.reduced_gens, f), kDefaultClosureCap);
         mpz_class const b = congruence_index_bound(FiniteMatGroup::reduce(ctx.data.s_gens, f),
                                                    FiniteMatGroup::reduce(ctx.reduced_gens, f));
         expect(o, log, s == 12U, eq("|phi(S)|", s.value_or(0), std::uint64_t{12}));
         expect(o, log, g == 180U, eq("|phi(G)|", g.value_or(0), std::uint64_t{180}));
         expect(o, log, b == 15, eq("bound", b, mpz_class(15)));
         return o;
       }},
      {3, "mod-7 kernel data", 5.0,
       [&](std::ostringstream& log) {
         Outcome o;
         ctx.f7 = make_reduction(7);
         ctx.table7 = cayley_coset_table(FiniteMatGroup::reduce(ctx.reduced_gens, ctx.f7));
         FiniteMatGroup const s = FiniteMatGroup::reduce(ctx.data.s_gens, ctx.f7);
         auto const order_s = closure_order(s, kDefaultClosureCap);
         ctx.orbit7 = orbit_stabilizer_schreier(ctx.f7, s.gens, fq_identity(ctx.f7));
         expect(o, log, ctx.table7.rows() == 2016, eq("[G:N]", ctx.table7.rows(), std::size_t{2016}));
         expect(o, log, order_s == 24U, eq("|phi(S)|", order_s.value_or(0), std::uint64_t{24}));
         expect(o, log, ctx.orbit7.orbit_length() == 24, eq("orbit", ctx.orbit7.orbit_length(), std::size_t{24}));
         expect(o, log, ctx.orbit7.schreier_gens.size() == 121,
                eq("schreier", ctx.orbit7.schreier_gens.size(), std::size_t{121}));
         return o;
       }},
      {4, "kernel presentation", 60.0,
       [&](std::ostringstream& log) {
         Outcome o;
         ctx.rs = subgroup_presentation(ctx.reduced.presentation, ctx.table7);
         std::size_t const gens = ctx.rs->presentation.generator_count();
         expect(o, log, gens == 4033, eq("generators", gens, std::size_t{4033}));
         std::vector<MatZ2> mats;
         for (auto const& g : ctx.reduced_gens) {
           mats.push_back(g.matrix);
         }
         std::size_t const total = ctx.rs->presentation.relator_count();
         std::size_t const sample = std::min<std::size_t>(total, 256);
         std::size_t identity = 0;
         for (std::size_t k = 0; k < sample; ++k) {
           Word const w = ctx.rs->expand(ctx.rs->presentation.relators()[k * total / sample], ctx.table7);
           identity += evaluate_matrix_word(w, mats).is_identity();
         }
         expect(o, log, sample >= 100 && identity == sample,
                "relators sampled=" + std::to_string(sample) + " identity=" + std::to_string(identity));
         return o;
       }},
      {5, "abelianization of N", 600.0,
       [&](std::ostringstream& log) {
         Outcome o;
         ctx.simplified = simplify_presentation_traced(ctx.rs->presentation);
         AbelianQuotient const q = abelian_invariants(ctx.simplified->result);
         expect(o, log, q.free_rank == 8, eq("free_rank", q.free_rank, std::size_t{8}));
         std::string torsion;
         for (auto const& d : q.torsion) {
           torsion += (torsion.empty() ? "" : ",") + d.get_str();
         }
         log << "; torsion=[" << torsion << "]";
         // Direct computation on the unsimplified matrix as a cross-check.
         std::size_t const rank = int_rank(relation_matrix(ctx.rs->presentation));
         expect(o, log, 4033 - rank == 8, eq("direct_free_rank", 4033 - rank, std::size_t{8}));
         return o;
       }},
      {6, "subgroup image rank", 60.0,
       [&](std::ostringstream& log) {
         Outcome o;
         std::vector<ExponentVector> rows;
         std::vector<ExponentVector> mapped;
         std::size_t const n = ctx.rs->presentation.generator_count();
         for (Word const& g : ctx.orbit7.schreier_gens) {
           Word const w = substitute(g, ctx.s_words);
           rows.push_back(exponent_vector(rs_rewrite(w, ctx.table7, ctx.rs->alphabet), n));
           mapped.push_back(ctx.simplified->map_exponents(rows.back()));
         }
         Presentation const& small = ctx.simplified->result;
         std::size_t const sub = subgroup_image_rank(relation_matrix(small),
                                                     IntMat::from_exponent_vectors(mapped, small.generator_count()));
         std::size_t const free = small.generator_count() - int_rank(relation_matrix(small));
         expect(o, log, rows.size() == 121, eq("rows", rows.size(), std::size_t{121}));
         expect(o, log, sub == 3, eq("subgroup_rank", sub, std::size_t{3}));
         std::size_t const direct = subgroup_image_rank(relation_matrix(ctx.rs->presentation),
                                                        IntMat::from_exponent_vectors(rows, n));
         expect(o, log, direct == 3, eq("direct_subgroup_rank", direct, std::size_t{3}));
         bool const infinite = sub < free;
         expect(o, log, infinite, std::string("verdict=") + (infinite ? "infinite" : "not infinite"));
         return o;
       }},
      {7, "Todd-Coxeter reproduction", 120.0,
       [&](std::ostringstream& log) {
         Outcome o;
         TCConfig cfg;
         cfg.max_cosets = 1'000'000;
         TCResult const r = coset_enumerate(ctx.reduced.presentation, ctx.s_words, cfg);
         expect(o, log, r.status == TCStatus::exceeded,
                std::string("S in <t,a,w>: ") + (r.completed() ? "completed" : "exceeded") + " at " +
                    std::to_string(r.max_cosets) + " cosets");
         Presentation const c5 = Presentation::parse(Alphabet{"x"}, std::vector<std::string>{"x^5"});
         TCResult const five = coset_enumerate(c5, {}, cfg);
         expect(o, log, five.completed() && five.index == 5,
                std::string("<x|x^5>: ") + (five.completed() ? "completed(" + std::to_string(five.index) + ")" : "exceeded"));
         return o;
       }},
      {8, "property suites", 600.0,
       [&](std::ostringstream& log) {
         Outcome o;
         for (auto const& p : testing::all_properties(testing::kDefaultCases)) {
           bool const ok = p.ok() && p.cases >= testing::kDefaultCases;
           expect(o, log, ok,
                  p.name + " " + std::to_string(p.cases - p.failures) + "/" + std::to_string(p.cases) +
                      (p.failures ? " first failure: " + p.first_failure : ""));
         }
         return o;
       }},
      {9, "multi-modulus bounds over prime sets", 60.0,
       [&](std::ostringstream& log) {
         Outcome o;
         std::vector<std::uint32_t> const p2{2};
         std::vector<std::uint32_t> const p37{3, 7};
         mpz_class const b2 = multi_modulus_bound(p2, ctx.data.s_gens, ctx.data.gamma_gens).index;
         MultiModulusBound const b37 = multi_modulus_bound(p37, ctx.data.s_gens, ctx.data.gamma_gens);
         expect(o, log, b2 == 15, eq("bound{2}", b2, mpz_class(15)));
         expect(o, log, b37.index >= 84, "bound{3,7}=" + b37.index.get_str() + " >= 84");
         bool monotone = true;
         for (auto const& m : b37.per_modulus) {
           monotone &= b37.index >= m.index_bound;
         }
         expect(o, log, monotone, "combined >= each single-modulus bound");
         return o;
       }},
  };

  int failed = 0;
  for (auto const& c : criteria) {
    std::ostringstream log;
    auto const start = Clock::now();
    Outcome o;
    try {
      o = c.body(log);
    } catch (std::exception const& e) {
      o.ok = false;
      log << (log.tellp() > 0 ? "; " : "") << "exception: " << e.what();
    }
    double const secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool const in_time = secs < c.limit_seconds;
    bool const pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d: %s [%.2fs, limit %.0fs%s] %s\n", pass ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_seconds, in_time ? "" : ", too slow", log.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
