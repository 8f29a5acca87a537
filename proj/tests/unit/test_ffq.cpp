#include <doctest.h>

#include "coindex/dataset.hpp"
#include "coindex/errors.hpp"
#include "coindex/ffq.hpp"
#include "oracles.hpp"

using namespace coindex;

namespace {

MatZ2 const& gamma(std::string const& name) {
  for (auto const& g : builtin_dataset().gamma_gens) {
    if (g.name == name) {
      return g.matrix;
    }
  }
  throw std::out_of_range(name);
}

MatFq2 mat(FqElt a, FqElt b, FqElt c, FqElt d) { return MatFq2{{a, b, c, d}}; }

}  // namespace

TEST_SUITE("ffq") {
  TEST_CASE("field selection by residue of p mod 3") {
    FieldDesc const f7 = make_reduction(7);
    CHECK(f7.degree() == 1);
    auto const roots = testing::cube_roots_of_unity_scan(7);
    REQUIRE(!roots.empty());
    CHECK(f7.zeta_image() == FqElt{roots.front() >= 2 ? roots.front() : roots.back(), 0});
    CHECK(f7.zeta_image() == FqElt{2, 0});

    FieldDesc const f2 = make_reduction(2);
    CHECK(f2.degree() == 2);
    CHECK(f2.size() == 4);
    CHECK(f2.zeta_image() == FqElt{0, 1});

    FieldDesc const f3 = make_reduction(3);
    CHECK(f3.degree() == 1);
    CHECK(f3.ramified());
    CHECK(f3.zeta_image() == FqElt{1, 0});
    CHECK(testing::cube_roots_of_unity_scan(3) == std::vector<std::uint32_t>{1});

    CHECK(make_reduction(5).degree() == 2);
    CHECK(make_reduction(31).degree() == 1);
    CHECK_THROWS_AS(make_reduction(1), NotPrime);
    CHECK_THROWS_AS(make_reduction(169), NotPrime);
    CHECK_THROWS_AS(make_reduction(361), NotPrime);
  }

  TEST_CASE("least root tie-break matches an exhaustive scan") {
    for (std::uint32_t p : {7U, 13U, 19U, 31U, 37U, 97U, 607U}) {
      auto const roots = testing::cube_roots_of_unity_scan(p);
      REQUIRE(roots.size() == 2);
      CHECK(make_reduction(p).zeta_image() == FqElt{roots[0], 0});
    }
  }

  TEST_CASE("zeta image is a cube root of unity") {
    for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U, 13U, 31U, 97U, 65537U}) {
      FieldDesc const f = make_reduction(p);
      FqElt const z = f.zeta_image();
      CHECK(f.mul(z, f.mul(z, z)) == f.one());
      if (p != 3) {
        CHECK(f.add(f.add(f.mul(z, z), z), f.one()) == f.zero());
      } else {
        FqElt const d = f.sub(z, f.one());
        CHECK(f.mul(d, d) == f.zero());
      }
    }
  }

  TEST_CASE("field inverses") {
    for (std::uint32_t p : {2U, 5U, 7U, 11U}) {
      FieldDesc const f = make_reduction(p);
      for (std::uint64_t i = 1; i < f.size(); ++i) {
        FqElt const x = f.from_index(i);
        CHECK(f.mul(x, f.inv(x)) == f.one());
      }
      CHECK_THROWS(f.inv(f.zero()));
    }
  }

  TEST_CASE("reducing generator matrices") {
    FieldDesc const f7 = make_reduction(7);
    CHECK(reduce_matrix(gamma("t"), f7) == mat({1, 0}, {1, 0}, {0, 0}, {1, 0}));
    MatZ2 const mt{EisensteinInt::zeta(), 0, 0, EisensteinInt::zeta()};
    CHECK(reduce_matrix(mt, f7) == mat({2, 0}, {0, 0}, {0, 0}, {2, 0}));
    FieldDesc const f2 = make_reduction(2);
    CHECK(reduce_matrix(gamma("w"), f2) == mat({0, 1}, {0, 0}, {0, 0}, {1, 0}));
    CHECK(reduce_element(EisensteinInt(-1), f7) == FqElt{6, 0});
  }

  TEST_CASE("unit determinants never vanish") {
    for (std::uint32_t p : {2U, 3U, 7U, 13U}) {
      FieldDesc const f = make_reduction(p);
      for (auto const& g : builtin_dataset().s_gens) {
        CHECK(!fq_det(f, reduce_matrix(g.matrix, f)).is_zero());
      }
      for (auto const& u : eisenstein_units()) {
        CHECK(!reduce_element(u, f).is_zero());
      }
    }
  }
}
