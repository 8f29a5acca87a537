#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "coindex/coset_table.hpp"
#include "coindex/words.hpp"

namespace coindex {

struct TCConfig {
  std::size_t max_cosets = 1'000'000;
  // Re-check table consistency after every coincidence (slow; for tests).
  bool audit = false;
};

enum class TCStatus { completed, exceeded };

struct TCResult {
  TCStatus status = TCStatus::exceeded;
  std::size_t index = 0;           // valid when completed
  std::size_t cosets_defined = 0;  // rows ever allocated
  std::size_t cosets_alive = 0;    // rows not merged away
  std::size_t max_cosets = 0;
  std::size_t coincidences = 0;
  // Standardized complete table when completed: cosets renumbered in the
  // order a breadth-first scan over columns first reaches them.
  std::optional<CosetTable> table;

  bool completed() const { return status == TCStatus::completed; }
};

// HLT (relator-first) coset enumeration of the subgroup generated by
// `subgroup_gens` in the group presented by `p`. Throws InvalidWord when a
// subgroup word leaves p's alphabet.
TCResult coset_enumerate(Presentation const& p, std::span<Word const> subgroup_gens,
                         TCConfig const& cfg = {});

// Renumber a complete table breadth-first from row 0.
CosetTable standardize(CosetTable const& t);

}  // namespace coindex
