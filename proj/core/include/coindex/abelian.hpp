#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "coindex/words.hpp"

namespace coindex {

using DenseIntMat = std::vector<std::vector<mpz_class>>;

// Sparse integer matrix: per-row sorted (column, value) lists without zeros.
class IntMat {
 public:
  struct Entry {
    std::uint32_t col;
    mpz_class value;
  };

  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static IntMat from_dense(DenseIntMat const& a, std::size_t cols);
  static IntMat from_dense(std::vector<std::vector<long>> const& a);
  // One row per exponent vector.
  static IntMat from_exponent_vectors(std::span<ExponentVector const> rows, std::size_t cols);
  // Rows of a followed by rows of b; throws DimensionMismatch.
  static IntMat stack(IntMat const& a, IntMat const& b);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const;

  std::vector<Entry> const& row(std::size_t r) const { return rows_.at(r); }
  mpz_class get(std::size_t r, std::size_t c) const;
  // Setting zero removes the entry.
  void set(std::size_t r, std::size_t c, mpz_class v);
  void append_row(std::vector<Entry> entries);

  DenseIntMat to_dense() const;

 private:
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> rows_;
};

struct SnfResult {
  // d_1 | d_2 | ... | d_rank, all positive.
  std::vector<mpz_class> divisors;
  std::size_t rank = 0;
  // With transforms: U·A·V = D, U and V unimodular.
  struct Transforms {
    DenseIntMat u;
    DenseIntMat v;
  };
  std::optional<Transforms> transforms;
};

// Unit-pivot sparse elimination, then a dense Smith form of whatever is
// left. Transforms force the dense algorithm on the whole matrix and are
// meant for small inputs.
SnfResult snf(IntMat const& a, bool want_transforms = false);

// Dense Smith form; the building block behind snf().
SnfResult dense_snf(DenseIntMat a, std::size_t cols, bool want_transforms);

// Exact rank over Q: unit pivots first, fraction-free Bareiss on the rest.
std::size_t int_rank(IntMat const& a);
std::size_t rank_mod_p(IntMat const& a, std::uint32_t p);

// The three largest primes below 2^30, used for modular rank checks.
std::vector<std::uint32_t> const& rank_check_primes();

struct RankCertificate {
  std::size_t rank = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> modular;  // (p, rank mod p)
  // Every modular rank equals the exact one.
  bool modular_agrees = true;
};
RankCertificate certified_rank(IntMat const& a, unsigned threads = 1);

// rank(stack(relations, subgroup_rows)) − rank(relations): the rank of the
// image of the subgroup rows in coker(relations) modulo torsion. Throws
// DimensionMismatch.
std::size_t subgroup_image_rank(IntMat const& relations, IntMat const& subgroup_rows);

struct AbelianQuotient {
  std::size_t generator_count = 0;
  std::size_t relation_rank = 0;
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // divisors > 1
};

// Rows are relator exponent vectors.
IntMat relation_matrix(Presentation const& p);
AbelianQuotient abelian_invariants(Presentation const& p);

}  // namespace coindex
