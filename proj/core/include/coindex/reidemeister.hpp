#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coindex/coset_table.hpp"
#include "coindex/words.hpp"

namespace coindex {

// Prefix-closed coset representatives from a breadth-first spanning tree of
// a complete coset table; columns are tried in table order, so t before
// t^-1 before a and so on.
struct Transversal {
  std::vector<Word> reps;
  // For each (coset, generator) pair, packed as coset * gens + gen: whether
  // the edge coset --gen--> coset·gen is a tree edge.
  std::vector<bool> tree_edge;
  std::size_t generator_count = 0;
  std::size_t depth = 0;  // longest representative

  bool is_tree(std::size_t coset, std::uint32_t gen) const {
    return tree_edge[coset * generator_count + gen];
  }
};

// Throws IncompleteTable.
Transversal schreier_transversal(CosetTable const& t);

// Numbering of the Schreier generators x_(c,g): the non-tree pairs in
// coset-major, generator-minor order.
struct SchreierAlphabet {
  std::vector<std::int64_t> index;  // (coset * gens + gen) → generator index or -1
  struct Pair {
    std::uint32_t coset;
    std::uint32_t gen;
  };
  std::vector<Pair> labels;
  std::size_t generator_count = 0;

  std::size_t size() const noexcept { return labels.size(); }
  std::int64_t at(std::size_t coset, std::uint32_t gen) const {
    return index[coset * generator_count + gen];
  }
};

SchreierAlphabet schreier_alphabet(Transversal const& tr);

// Rewrite w, read from coset `start`, into Schreier generators; returns the
// freely reduced rewrite and stores the final coset in *end.
Word rs_rewrite_from(Word const& w, std::size_t start, CosetTable const& t,
                     SchreierAlphabet const& sa, std::size_t* end);

// Rewrite of a word lying in the subgroup (tracing 0 → 0). Throws
// NotInSubgroup when the trace ends elsewhere.
Word rs_rewrite(Word const& w, CosetTable const& t, SchreierAlphabet const& sa);

struct RSPresentation {
  Presentation presentation;  // generators named x{c}_{g}
  Transversal transversal;
  SchreierAlphabet alphabet;

  // The word rep_c · g · rep_{c·g}^-1 over the ambient generators.
  Word expand_generator(std::size_t i, CosetTable const& t) const;
  // Replace every Schreier generator by its expansion (freely reduced).
  Word expand(Word const& w, CosetTable const& t) const;
};

// Presentation of the subgroup with coset table t: the rewrites of every
// relator read from every coset, cosets ascending, relators in order.
// Throws IncompleteTable if t is not complete or a relator fails to close
// at some coset.
RSPresentation subgroup_presentation(Presentation const& p, CosetTable const& t,
                                     unsigned threads = 1);

}  // namespace coindex
