#include <doctest.h>

#include "coindex/bsgs.hpp"
#include "coindex/congruence.hpp"
#include "coindex/dataset.hpp"
#include "coindex/errors.hpp"
#include "oracles.hpp"

using namespace coindex;

namespace {

// Closure-oracle values, frozen.
constexpr std::uint64_t kOrderGamma31 = 178560;
constexpr std::uint64_t kOrderGamma37 = 48384;
constexpr std::uint64_t kOrderS37 = 48;
constexpr std::uint64_t kBound37 = 1008;

std::vector<NamedMatrix> taw() {
  std::vector<NamedMatrix> out;
  for (char const* name : {"t", "a", "w"}) {
    for (auto const& g : builtin_dataset().gamma_gens) {
      if (g.name == name) {
        out.push_back(g);
      }
    }
  }
  return out;
}

std::vector<MatZ2> matrices(std::vector<NamedMatrix> const& xs) {
  std::vector<MatZ2> out;
  for (auto const& x : xs) {
    out.push_back(x.matrix);
  }
  return out;
}

FiniteMatGroup gamma_mod(std::uint32_t p) { return FiniteMatGroup::reduce(taw(), make_reduction(p)); }
FiniteMatGroup s_mod(std::uint32_t p) { return FiniteMatGroup::reduce(builtin_dataset().s_gens, make_reduction(p)); }

}  // namespace

TEST_SUITE("congruence") {
  TEST_CASE("closure orders modulo 2 and 7") {
    CHECK(closure_order(s_mod(2), kDefaultClosureCap) == 12);
    CHECK(closure_order(gamma_mod(2), kDefaultClosureCap) == 180);
    CHECK(closure_order(gamma_mod(7), kDefaultClosureCap) == 2016);
    CHECK(closure_order(s_mod(7), kDefaultClosureCap) == 24);
    CHECK(!closure_order(gamma_mod(7), 100).has_value());
  }

  TEST_CASE("closure orders agree with an independent closure") {
    auto const s = matrices(builtin_dataset().s_gens);
    auto const g = matrices(taw());
    for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
      CHECK(closure_order(gamma_mod(p), kDefaultClosureCap) == testing::naive_closure_order(g, p));
      CHECK(closure_order(s_mod(p), kDefaultClosureCap) == testing::naive_closure_order(s, p));
    }
    CHECK(testing::naive_product_order(g, {3, 7}) == kOrderGamma37);
    CHECK(testing::naive_product_order(s, {3, 7}) == kOrderS37);
  }

  TEST_CASE("Schreier-Sims orders") {
    FiniteMatGroup trivial;
    trivial.field = make_reduction(5);
    trivial.names = {"e"};
    trivial.gens = {fq_identity(trivial.field)};
    CHECK(bsgs_order(trivial) == 1);
    for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
      CHECK(bsgs_order(gamma_mod(p)) == mpz_class(static_cast<unsigned long>(*closure_order(gamma_mod(p), kDefaultClosureCap))));
      CHECK(bsgs_order(s_mod(p)) == mpz_class(static_cast<unsigned long>(*closure_order(s_mod(p), kDefaultClosureCap))));
    }
    CHECK(bsgs_order(gamma_mod(31)) == kOrderGamma31);
    // Determinants of Γ are the six units, so |φ_p(Γ)| = 6·|SL2(p)| for p ≡ 1 mod 6.
    CHECK(bsgs_order(gamma_mod(97)) == mpz_class(6) * 97 * (97 * 97 - 1));
  }

  TEST_CASE("Cayley coset tables") {
    CosetTable const t7 = cayley_coset_table(gamma_mod(7));
    CHECK(t7.rows() == 2016);
    CHECK(t7.columns() == 6);
    CHECK(t7.origin() == TableOrigin::cayley);
    CHECK(t7.is_complete());
    CHECK(t7.is_consistent());
    CHECK(t7.columns_are_permutations());
    CHECK(cayley_coset_table(gamma_mod(2)).rows() == 180);

    FiniteMatGroup trivial;
    trivial.field = make_reduction(7);
    trivial.names = {"e"};
    trivial.gens = {fq_identity(trivial.field)};
    CosetTable const t1 = cayley_coset_table(trivial);
    CHECK(t1.rows() == 1);
    CHECK(t1(0, 0) == 0);
    CHECK(t1(0, 1) == 0);
    CHECK_THROWS_AS(cayley_coset_table(gamma_mod(7), 1000), Exceeded);
  }

  TEST_CASE("orbit of the identity under S modulo 7") {
    FieldDesc const f = make_reduction(7);
    FiniteMatGroup const s = s_mod(7);
    SchreierOrbit const o = orbit_stabilizer_schreier(f, s.gens, fq_identity(f));
    CHECK(o.orbit_length() == 24);
    CHECK(o.schreier_gens.size() == 121);
    CHECK(o.schreier_gens.size() == 6 * 24 - 23);
    // Direct count of non-tree edges.
    std::size_t tree = 0;
    for (auto const& e : o.tree) {
      tree += e.parent >= 0 ? 1 : 0;
    }
    CHECK(6 * o.orbit_length() - tree == 121);
    // Every Schreier generator evaluates into the kernel mod 7.
    Dataset const& d = builtin_dataset();
    for (auto const& w : o.schreier_gens) {
      MatZ2 const m = evaluate_matrix_word(w, d.s_alphabet(), d.s_gens);
      CHECK(reduce_matrix(m, f) == fq_identity(f));
    }
    SchreierOrbit const dedup = orbit_stabilizer_schreier(f, s.gens, fq_identity(f), true);
    CHECK(dedup.schreier_gens.size() <= 121);
    CHECK(dedup.orbit_length() == 24);
  }

  TEST_CASE("orbit under the identity matrix") {
    FieldDesc const f = make_reduction(5);
    std::vector<MatFq2> const gens{fq_identity(f)};
    SchreierOrbit const o = orbit_stabilizer_schreier(f, gens, fq_identity(f));
    CHECK(o.orbit_length() == 1);
    REQUIRE(o.schreier_gens.size() == 1);
    CHECK(free_reduce(o.schreier_gens[0]) == Word{Letter{0, 1}});
  }

  TEST_CASE("single-modulus index bounds") {
    CHECK(congruence_index_bound(s_mod(2), gamma_mod(2)) == 15);
    CHECK(congruence_index_bound(s_mod(7), gamma_mod(7)) == 84);
    CHECK(congruence_index_bound(gamma_mod(7), gamma_mod(7)) == 1);
    // S mod 7 does not contain Γ mod 7.
    CHECK_THROWS_AS(congruence_index_bound(gamma_mod(7), s_mod(7)), NotASubgroup);
    CHECK_THROWS_AS(congruence_index_bound(s_mod(2), gamma_mod(7)), NotASubgroup);
  }

  TEST_CASE("subdirect bounds over several primes") {
    Dataset const& d = builtin_dataset();
    auto const bound = [&](std::vector<std::uint32_t> const& ps) {
      return multi_modulus_bound(ps, d.s_gens, d.gamma_gens);
    };
    MultiModulusBound const b2 = bound({2});
    CHECK(b2.index == 15);
    CHECK(b2.order_gamma == 180);
    CHECK(b2.order_s == 12);
    MultiModulusBound const b37 = bound({3, 7});
    CHECK(b37.order_gamma == kOrderGamma37);
    CHECK(b37.order_s == kOrderS37);
    CHECK(b37.index == kBound37);
    CHECK(b37.index >= 84);
    REQUIRE(b37.per_modulus.size() == 2);
    CHECK(b37.per_modulus[0].index_bound == 6);
    CHECK(b37.per_modulus[1].index_bound == 84);
    CHECK(bound({}).index == 1);
    CHECK(bound({2, 3, 7}).index >= b37.index);
    CHECK_THROWS_AS(bound({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(bound({9}), NotPrime);
    // S replaced by Γ's own generators.
    std::vector<NamedMatrix> all = taw();
    CHECK(multi_modulus_bound(std::vector<std::uint32_t>{2, 7}, all, d.gamma_gens).index == 1);
  }
}
