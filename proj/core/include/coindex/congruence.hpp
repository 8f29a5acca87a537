#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "coindex/coset_table.hpp"
#include "coindex/eisenstein.hpp"
#include "coindex/ffq.hpp"
#include "coindex/words.hpp"

namespace coindex {

// A subgroup of GL2(F_q) given by generators.
struct FiniteMatGroup {
  FieldDesc field;
  std::vector<std::string> names;
  std::vector<MatFq2> gens;

  // Reduce named matrices over Z[ζ] into the given field, keeping order.
  static FiniteMatGroup reduce(std::span<NamedMatrix const> gens, FieldDesc const& f);
};

// Elements of a finite matrix group in breadth-first order from the
// identity, generators tried in column order g0, g0^-1, g1, g1^-1, ...
class ElementTable {
 public:
  std::size_t size() const noexcept { return elements_.size(); }
  MatFq2 const& operator[](std::size_t i) const { return elements_[i]; }
  std::vector<MatFq2> const& elements() const noexcept { return elements_; }
  std::optional<std::size_t> find(MatFq2 const& m) const;

 private:
  friend std::optional<ElementTable> enumerate_elements(FiniteMatGroup const& g, std::uint64_t cap);
  std::vector<MatFq2> elements_;
  std::unordered_map<MatFq2, std::uint32_t, MatFq2Hash> index_;
};

inline constexpr std::uint64_t kDefaultClosureCap = 5'000'000;

// nullopt when the group has more than `cap` elements.
std::optional<ElementTable> enumerate_elements(FiniteMatGroup const& g, std::uint64_t cap);
std::optional<std::uint64_t> closure_order(FiniteMatGroup const& g, std::uint64_t cap);

// The Cayley graph of the group on its generators as a coset table: row i
// is element i of enumerate_elements, entry (i, g) the row of element_i·g.
// It is the coset table of the kernel of any map onto this group.
// Throws Exceeded past `cap` elements.
CosetTable cayley_coset_table(FiniteMatGroup const& g, std::uint64_t cap = kDefaultClosureCap);

// Orbit of `seed` under right multiplication by `acting` (indexed by the
// acting alphabet), with a breadth-first Schreier tree: points in discovery
// order, generators in index order. One Schreier generator
// rep(x)·g·rep(x·g)^-1 is produced per non-tree (point, generator) pair,
// scanned point-major.
struct SchreierOrbit {
  struct TreeEdge {
    std::int64_t parent = -1;  // -1 at the seed
    std::uint32_t gen = 0;
    std::int8_t sign = 1;
  };
  struct Pair {
    std::uint32_t point;
    std::uint32_t gen;
  };

  std::vector<MatFq2> points;
  std::vector<TreeEdge> tree;
  std::vector<Word> reps;
  std::vector<Word> schreier_gens;
  std::vector<Pair> schreier_pairs;

  std::size_t orbit_length() const noexcept { return points.size(); }
};

// With `dedup`, freely equal Schreier words are listed once.
SchreierOrbit orbit_stabilizer_schreier(FieldDesc const& f, std::span<MatFq2 const> acting,
                                        MatFq2 const& seed, bool dedup = false);

// |gamma| / |s|, a lower bound for the index of any group mapping onto s
// inside one mapping onto gamma. Throws NotASubgroup when s is not
// contained in gamma (or the fields differ).
mpz_class congruence_index_bound(FiniteMatGroup const& s, FiniteMatGroup const& gamma);

struct ModulusBound {
  FieldDesc field;
  mpz_class order_gamma;
  mpz_class order_s;
  mpz_class index_bound;
};

struct MultiModulusBound {
  std::vector<ModulusBound> per_modulus;
  mpz_class order_gamma = 1;  // order of the image in the product over all moduli
  mpz_class order_s = 1;
  mpz_class index = 1;
};

// Index of the image of S in the image of Γ inside ∏ GL2(F_q) over the
// given primes, plus the single-modulus bounds. Primes must be distinct;
// throws NotPrime or std::invalid_argument.
MultiModulusBound multi_modulus_bound(std::span<std::uint32_t const> primes,
                                      std::span<NamedMatrix const> s_gens,
                                      std::span<NamedMatrix const> gamma_gens,
                                      unsigned threads = 1);

}  // namespace coindex
