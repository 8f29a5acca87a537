#include <doctest.h>

#include <complex>

#include "coindex/dataset.hpp"
#include "coindex/eisenstein.hpp"
#include "coindex/errors.hpp"
#include "oracles.hpp"

using namespace coindex;
using coindex::testing::to_complex;

namespace {

EisensteinInt E(long a, long b) { return {mpz_class(a), mpz_class(b)}; }

MatZ2 const& gamma(std::string const& name) {
  for (auto const& g : builtin_dataset().gamma_gens) {
    if (g.name == name) {
      return g.matrix;
    }
  }
  throw std::out_of_range(name);
}

MatZ2 const& sgen(std::string const& name) {
  for (auto const& g : builtin_dataset().s_gens) {
    if (g.name == name) {
      return g.matrix;
    }
  }
  throw std::out_of_range(name);
}

bool close(std::complex<double> x, std::complex<double> y) { return std::abs(x - y) < 1e-9; }

}  // namespace

TEST_SUITE("eiszeta") {
  TEST_CASE("zeta satisfies its minimal polynomial") {
    EisensteinInt const z = EisensteinInt::zeta();
    CHECK(z * z == E(-1, -1));
    CHECK(z * E(-1, -1) == E(1, 0));
    CHECK(EisensteinInt::zeta_power(3) == E(1, 0));
    CHECK(EisensteinInt::zeta_power(-1) == E(-1, -1));
    CHECK(EisensteinInt::zeta_power(2) == z * z);
  }

  TEST_CASE("products agree with complex substitution") {
    EisensteinInt const one_plus_zeta = E(1, 1);
    EisensteinInt const sq = one_plus_zeta * one_plus_zeta;
    CHECK(sq == E(0, 1));
    CHECK(close(to_complex(sq), to_complex(one_plus_zeta) * to_complex(one_plus_zeta)));
    for (long a = -4; a <= 4; ++a) {
      for (long b = -4; b <= 4; ++b) {
        EisensteinInt const x = E(a, b);
        EisensteinInt const y = E(b - 1, a + 2);
        CHECK(close(to_complex(x * y), to_complex(x) * to_complex(y)));
        CHECK(std::abs(std::norm(to_complex(x)) - x.norm().get_d()) < 1e-9);
      }
    }
  }

  TEST_CASE("norms") {
    CHECK(E(2, 0).norm() == 4);
    CHECK(EisensteinInt::zeta().norm() == 1);
    CHECK(E(3, 1).norm() == 7);
    CHECK(std::abs(std::norm(to_complex(E(3, 1))) - 7.0) < 1e-9);
  }

  TEST_CASE("the unit group has exactly six elements") {
    std::size_t units = 0;
    for (long a = -5; a <= 5; ++a) {
      for (long b = -5; b <= 5; ++b) {
        if (E(a, b).is_unit()) {
          ++units;
          bool listed = false;
          for (auto const& u : eisenstein_units()) {
            listed |= u == E(a, b);
          }
          CHECK(listed);
          CHECK(E(a, b) * E(a, b).unit_inverse() == E(1, 0));
        }
      }
    }
    CHECK(units == 6);
    CHECK_THROWS_AS(E(2, 0).unit_inverse(), NotAUnit);
  }

  TEST_CASE("zeta/zeta^2 coefficient form") {
    // 97ζ² = 97(−1 − ζ)
    CHECK(EisensteinInt::from_zeta_zeta2(0, 97) == E(-97, -97));
    CHECK(EisensteinInt::from_zeta_zeta2(1, 0) == EisensteinInt::zeta());
  }

  TEST_CASE("matrix determinant and inverse") {
    CHECK(mat_mul(MatZ2::identity(), sgen("m1")) == sgen("m1"));
    // det(m_j) = −ζ² − ζ⁴ = −ζ² − ζ = 1.
    CHECK(mat_det(sgen("mj")) == E(1, 0));
    CHECK(mat_det(sgen("mj")).is_unit());
    MatZ2 const& a = gamma("a");
    CHECK((mat_inv(a) * a).is_identity());
    for (auto const& g : builtin_dataset().s_gens) {
      CHECK(g.matrix.in_gl2());
      CHECK((mat_inv(g.matrix) * g.matrix).is_identity());
    }
    MatZ2 const singular{2, 0, 0, 1};
    CHECK_THROWS_AS(mat_inv(singular), NotAUnit);
    CHECK(mat_pow(gamma("w"), 6).is_identity());
    CHECK(mat_pow(gamma("t"), -3) == MatZ2(1, -3, 0, 1));
  }

  TEST_CASE("word evaluation") {
    Dataset const& d = builtin_dataset();
    Alphabet const al = d.gamma_alphabet();
    CHECK(evaluate_matrix_word(parse_word("(w/a)^2", al), al, d.gamma_gens) ==
          MatZ2(EisensteinInt::zeta(), 0, 0, EisensteinInt::zeta()));
    CHECK(evaluate_matrix_word(parse_word("a^-1", al), al, d.gamma_gens) == MatZ2(0, 1, -1, 0));
    CHECK(evaluate_matrix_word(Word{}, al, d.gamma_gens).is_identity());
    std::vector<NamedMatrix> partial{d.gamma_gens[0]};
    CHECK_THROWS_AS(evaluate_matrix_word(parse_word("a", al), al, partial), UnknownSymbol);
  }

  TEST_CASE("dataset words and relators evaluate exactly") {
    Dataset const& d = builtin_dataset();
    CHECK(d.name == kBuiltinDatasetName);
    CHECK(d.presentation.relator_count() == 19);
    REQUIRE(d.s_words.size() == 6);
    for (std::size_t i = 0; i < d.s_words.size(); ++i) {
      CHECK(evaluate_matrix_word(d.s_words[i].word, d.gamma_alphabet(), d.gamma_gens) == d.s_gens[i].matrix);
    }
    for (auto const& r : d.presentation.relators()) {
      CHECK(evaluate_matrix_word(r, d.gamma_alphabet(), d.gamma_gens).is_identity());
    }
    DatasetCheck const c = verify_dataset(d);
    CHECK(c.ok());
    CHECK(c.reduced_generator_count == 3);
  }

  TEST_CASE("m1 entries as printed") {
    MatZ2 const& m1 = sgen("m1");
    CHECK(m1(0, 0) == EisensteinInt::from_zeta_zeta2(0, 97));
    CHECK(m1(0, 1) == EisensteinInt::from_zeta_zeta2(-112, -56));
    CHECK(m1(1, 0) == EisensteinInt::from_zeta_zeta2(112, 56));
  }

  TEST_CASE("dataset JSON round trip") {
    Dataset const& d = builtin_dataset();
    json const j = dataset_to_json(d);
    CHECK(j["gamma_gens"]["w"] == json::parse("[[[0,-1],[0,0]],[[0,0],[1,0]]]"));
    Dataset const back = dataset_from_json(j);
    CHECK(dataset_to_json(back) == j);
    CHECK(verify_dataset(back).ok());
    CHECK_THROWS_AS(load_dataset("/nonexistent/dataset.json"), DatasetError);
  }
}
