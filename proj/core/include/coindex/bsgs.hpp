#pragma once

#include <vector>

#include <gmpxx.h>

#include "coindex/ffq.hpp"

namespace coindex {

struct FiniteMatGroup;

// A group generated by tuples of 2×2 matrices, one component per field.
// It acts faithfully on the disjoint union of the nonzero row vectors of
// the F_q², which is the action used for its stabilizer chain.
struct ProductMatGroup {
  std::vector<FieldDesc> fields;
  // gens[i][k] is component k of generator i.
  std::vector<std::vector<MatFq2>> gens;
};

struct StabilizerChainStats {
  std::vector<std::uint64_t> base;  // encoded points
  std::vector<std::size_t> orbit_lengths;
  std::size_t strong_generators = 0;
  mpz_class order = 1;
};

// Deterministic Schreier–Sims.
StabilizerChainStats schreier_sims(ProductMatGroup const& g);
mpz_class bsgs_order(ProductMatGroup const& g);
mpz_class bsgs_order(FiniteMatGroup const& g);

}  // namespace coindex
