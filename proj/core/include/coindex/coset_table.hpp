#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coindex/words.hpp"

namespace coindex {

enum class TableOrigin { cayley, todd_coxeter };

// Right action of the generators and their inverses on cosets. Column
// 2g is generator g, column 2g + 1 its inverse.
class CosetTable {
 public:
  static constexpr std::int32_t kUndefined = -1;

  CosetTable() = default;
  CosetTable(std::size_t generator_count, std::size_t rows, TableOrigin origin)
      : gens_(generator_count),
        rows_(rows),
        origin_(origin),
        data_(rows * 2 * generator_count, kUndefined) {}

  static std::size_t column(Letter x) { return 2 * std::size_t{x.gen} + (x.sign < 0 ? 1 : 0); }
  static std::size_t inverse_column(std::size_t c) { return c ^ 1U; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t generator_count() const noexcept { return gens_; }
  std::size_t columns() const noexcept { return 2 * gens_; }
  TableOrigin origin() const noexcept { return origin_; }

  std::int32_t operator()(std::size_t row, std::size_t col) const {
    return data_[row * columns() + col];
  }
  void set(std::size_t row, std::size_t col, std::int32_t value) {
    data_[row * columns() + col] = value;
  }
  // Append a row of undefined entries; returns its index.
  std::size_t add_row();

  bool is_complete() const;
  // Row r, column c = s implies row s, inverse column = r.
  bool is_consistent() const;
  bool columns_are_permutations() const;

  // Follow w from `start`; nullopt if an undefined entry is hit.
  std::optional<std::size_t> trace(std::size_t start, Word const& w) const;

 private:
  std::size_t gens_ = 0;
  std::size_t rows_ = 0;
  TableOrigin origin_ = TableOrigin::cayley;
  std::vector<std::int32_t> data_;
};

}  // namespace coindex
