#include "coindex/coset_table.hpp"

#include <algorithm>

namespace coindex {

std::size_t CosetTable::add_row() {
  data_.resize(data_.size() + columns(), kUndefined);
  return rows_++;
}

bool CosetTable::is_complete() const {
  return std::none_of(data_.begin(), data_.end(), [](std::int32_t v) { return v == kUndefined; });
}

bool CosetTable::is_consistent() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < columns(); ++c) {
      std::int32_t const s = (*this)(r, c);
      if (s == kUndefined) {
        continue;
      }
      if (s < 0 || static_cast<std::size_t>(s) >= rows_ ||
          (*this)(static_cast<std::size_t>(s), inverse_column(c)) != static_cast<std::int32_t>(r)) {
        return false;
      }
    }
  }
  return true;
}

bool CosetTable::columns_are_permutations() const {
  std::vector<char> hit(rows_);
  for (std::size_t c = 0; c < columns(); ++c) {
    std::fill(hit.begin(), hit.end(), 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::int32_t const s = (*this)(r, c);
      if (s < 0 || static_cast<std::size_t>(s) >= rows_ || hit[static_cast<std::size_t>(s)]) {
        return false;
      }
      hit[static_cast<std::size_t>(s)] = 1;
    }
  }
  return true;
}

std::optional<std::size_t> CosetTable::trace(std::size_t start, Word const& w) const {
  std::size_t cur = start;
  for (Letter x : w) {
    if (x.gen >= gens_) {
      return std::nullopt;
    }
    std::int32_t const next = (*this)(cur, column(x));
    if (next == kUndefined) {
      return std::nullopt;
    }
    cur = static_cast<std::size_t>(next);
  }
  return cur;
}

}  // namespace coindex
