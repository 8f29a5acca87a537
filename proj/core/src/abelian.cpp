#include "coindex/abelian.hpp"

#include <algorithm>
#include <future>
#include <queue>
#include <stdexcept>

#include "coindex/errors.hpp"
#include "coindex/ffq.hpp"

namespace coindex {

namespace {

struct Int64Overflow : std::exception {};

// Exact integers in an int64, pivoting on ±1 only. Throws Int64Overflow.
struct Int64Ring {
  using T = std::int64_t;
  static constexpr bool exact_integers = true;

  T from(mpz_class const& v) const {
    if (!v.fits_slong_p()) {
      throw Int64Overflow{};
    }
    return v.get_si();
  }
  static bool is_zero(T v) { return v == 0; }
  static bool is_pivot(T v) { return v == 1 || v == -1; }
  static T factor(T a, T pivot) { return a * pivot; }
  static T sub_mul(T x, T f, T y) {
    T prod = 0;
    T out = 0;
    if (__builtin_mul_overflow(f, y, &prod) || __builtin_sub_overflow(x, prod, &out)) {
      throw Int64Overflow{};
    }
    return out;
  }
  static mpz_class to_mpz(T v) { return mpz_class(static_cast<long>(v)); }
};

struct MpzRing {
  using T = mpz_class;
  static constexpr bool exact_integers = true;

  T from(mpz_class const& v) const { return v; }
  static bool is_zero(T const& v) { return v == 0; }
  static bool is_pivot(T const& v) { return v == 1 || v == -1; }
  static T factor(T const& a, T const& pivot) { return a * pivot; }
  static T sub_mul(T const& x, T const& f, T const& y) { return x - f * y; }
  static mpz_class to_mpz(T const& v) { return v; }
};

// F_p; every nonzero entry is a pivot.
struct ModRing {
  using T = std::uint64_t;
  static constexpr bool exact_integers = false;
  std::uint64_t p;

  T from(mpz_class const& v) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
    return r.get_ui();
  }
  static bool is_zero(T v) { return v == 0; }
  static bool is_pivot(T v) { return v != 0; }
  T inv(T v) const {
    T r = 1;
    T b = v;
    T e = p - 2;
    while (e != 0) {
      if (e & 1U) {
        r = r * b % p;
      }
      b = b * b % p;
      e >>= 1U;
    }
    return r;
  }
  T factor(T a, T pivot) const { return a * inv(pivot) % p; }
  T sub_mul(T x, T f, T y) const { return (x + p - f * y % p) % p; }
  static mpz_class to_mpz(T v) { return mpz_class(static_cast<unsigned long>(v)); }
};

// Markowitz-flavoured sparse elimination: take the column with fewest
// entries, pivot on a unit entry in its shortest row, clear the column and
// drop the pivot row and column. Over Z this preserves the Smith form up
// to the removed unit divisors.
template <class Ring>
class SparseEliminator {
 public:
  using T = typename Ring::T;
  struct Entry {
    std::uint32_t col;
    T val;
  };
  using Row = std::vector<Entry>;

  SparseEliminator(IntMat const& a, Ring ring)
      : ring_(std::move(ring)),
        rows_(a.rows()),
        col_rows_(a.cols()),
        col_count_(a.cols(), 0),
        col_done_(a.cols(), false) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (auto const& e : a.row(r)) {
        T v = ring_.from(e.value);
        if (!Ring::is_zero(v)) {
          rows_[r].push_back({e.col, std::move(v)});
          col_rows_[e.col].push_back(static_cast<std::uint32_t>(r));
          ++col_count_[e.col];
        }
      }
    }
  }

  std::size_t eliminate() {
    std::vector<std::uint32_t> pending;
    for (std::uint32_t c = 0; c < col_count_.size(); ++c) {
      if (col_count_[c] > 0) {
        pending.push_back(c);
      }
    }
    for (;;) {
      std::size_t const before = pivots_;
      std::vector<std::uint32_t> deferred;
      using Key = std::pair<std::size_t, std::uint32_t>;
      std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
      for (std::uint32_t c : pending) {
        heap.emplace(col_count_[c], c);
      }
      while (!heap.empty()) {
        auto [cnt, j] = heap.top();
        heap.pop();
        if (col_done_[j] || col_count_[j] == 0) {
          continue;
        }
        if (cnt != col_count_[j]) {
          heap.emplace(col_count_[j], j);
          continue;
        }
        if (!pivot_on_column(j)) {
          deferred.push_back(j);
        }
      }
      if (deferred.empty() || pivots_ == before) {
        break;
      }
      pending = std::move(deferred);
    }
    return pivots_;
  }

  // Remaining nonzero rows restricted to remaining columns, as a dense
  // integer matrix (only meaningful for the integer rings).
  DenseIntMat residual(std::size_t* cols_out) const {
    std::vector<std::int64_t> col_map(col_count_.size(), -1);
    std::size_t ncols = 0;
    for (std::size_t c = 0; c < col_count_.size(); ++c) {
      if (!col_done_[c] && col_count_[c] > 0) {
        col_map[c] = static_cast<std::int64_t>(ncols++);
      }
    }
    DenseIntMat out;
    for (auto const& row : rows_) {
      if (row.empty()) {
        continue;
      }
      std::vector<mpz_class> dense(ncols, 0);
      for (auto const& e : row) {
        dense[static_cast<std::size_t>(col_map[e.col])] = Ring::to_mpz(e.val);
      }
      out.push_back(std::move(dense));
    }
    *cols_out = ncols;
    return out;
  }

 private:
  bool has_col(Row const& row, std::uint32_t col, T* val) const {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](Entry const& e, std::uint32_t c) { return e.col < c; });
    if (it == row.end() || it->col != col) {
      return false;
    }
    *val = it->val;
    return true;
  }

  bool pivot_on_column(std::uint32_t j) {
    auto& holders = col_rows_[j];
    std::sort(holders.begin(), holders.end());
    holders.erase(std::unique(holders.begin(), holders.end()), holders.end());
    std::vector<std::uint32_t> live;
    std::vector<T> vals;
    for (std::uint32_t r : holders) {
      T v{};
      if (has_col(rows_[r], j, &v)) {
        live.push_back(r);
        vals.push_back(std::move(v));
      }
    }
    holders = live;
    std::size_t best = live.size();
    for (std::size_t k = 0; k < live.size(); ++k) {
      if (Ring::is_pivot(vals[k]) &&
          (best == live.size() || rows_[live[k]].size() < rows_[live[best]].size())) {
        best = k;
      }
    }
    if (best == live.size()) {
      return false;
    }
    std::uint32_t const pr = live[best];
    T const pivot = vals[best];
    for (std::size_t k = 0; k < live.size(); ++k) {
      if (k != best) {
        T f = ring_.factor(vals[k], pivot);
        subtract_row(live[k], f, pr);
      }
    }
    for (auto const& e : rows_[pr]) {
      --col_count_[e.col];
    }
    rows_[pr].clear();
    col_done_[j] = true;
    holders.clear();
    ++pivots_;
    return true;
  }

  // rows_[k] -= f · rows_[i]
  void subtract_row(std::uint32_t k, T const& f, std::uint32_t i) {
    Row const& a = rows_[k];
    Row const& b = rows_[i];
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t x = 0;
    std::size_t y = 0;
    while (x < a.size() || y < b.size()) {
      if (y == b.size() || (x < a.size() && a[x].col < b[y].col)) {
        out.push_back(a[x++]);
      } else if (x == a.size() || b[y].col < a[x].col) {
        T v = ring_.sub_mul(T{}, f, b[y].val);
        std::uint32_t const c = b[y].col;
        ++y;
        if (!Ring::is_zero(v)) {
          out.push_back({c, std::move(v)});
          ++col_count_[c];
          col_rows_[c].push_back(k);
        }
      } else {
        T v = ring_.sub_mul(a[x].val, f, b[y].val);
        std::uint32_t const c = a[x].col;
        ++x;
        ++y;
        if (Ring::is_zero(v)) {
          --col_count_[c];
        } else {
          out.push_back({c, std::move(v)});
        }
      }
    }
    rows_[k] = std::move(out);
  }

  Ring ring_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::size_t> col_count_;
  std::vector<bool> col_done_;
  std::size_t pivots_ = 0;
};

// Unit pivots over Z, trying int64 arithmetic before arbitrary precision.
struct UnitReduction {
  std::size_t pivots = 0;
  DenseIntMat residual;
  std::size_t residual_cols = 0;
};

UnitReduction unit_reduce(IntMat const& a) {
  UnitReduction out;
  try {
    SparseEliminator<Int64Ring> e(a, Int64Ring{});
    out.pivots = e.eliminate();
    out.residual = e.residual(&out.residual_cols);
  } catch (Int64Overflow const&) {
    SparseEliminator<MpzRing> e(a, MpzRing{});
    out.pivots = e.eliminate();
    out.residual = e.residual(&out.residual_cols);
  }
  return out;
}

std::size_t bareiss_rank(DenseIntMat m, std::size_t cols) {
  std::size_t const rows = m.size();
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t r = rank;
    while (r < rows && m[r][c] == 0) {
      ++r;
    }
    if (r == rows) {
      continue;
    }
    std::swap(m[r], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = m[rank][c] * m[i][j] - m[i][c] * m[rank][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

DenseIntMat identity(std::size_t n) {
  DenseIntMat id(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    id[i][i] = 1;
  }
  return id;
}

}  // namespace

IntMat IntMat::from_dense(DenseIntMat const& a, std::size_t cols) {
  IntMat m(0, cols);
  for (auto const& row : a) {
    std::vector<Entry> entries;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0) {
        entries.push_back({static_cast<std::uint32_t>(c), row[c]});
      }
    }
    m.append_row(std::move(entries));
  }
  return m;
}

IntMat IntMat::from_dense(std::vector<std::vector<long>> const& a) {
  std::size_t const cols = a.empty() ? 0 : a[0].size();
  DenseIntMat d;
  for (auto const& row : a) {
    std::vector<mpz_class> r;
    for (long v : row) {
      r.emplace_back(v);
    }
    d.push_back(std::move(r));
  }
  return from_dense(d, cols);
}

IntMat IntMat::from_exponent_vectors(std::span<ExponentVector const> rows, std::size_t cols) {
  IntMat m(0, cols);
  for (auto const& v : rows) {
    if (v.entries.size() != cols) {
      throw DimensionMismatch("exponent vector length differs from column count");
    }
    std::vector<Entry> entries;
    for (std::size_t c = 0; c < cols; ++c) {
      if (v.entries[c] != 0) {
        entries.push_back({static_cast<std::uint32_t>(c), mpz_class(static_cast<long>(v.entries[c]))});
      }
    }
    m.append_row(std::move(entries));
  }
  return m;
}

IntMat IntMat::stack(IntMat const& a, IntMat const& b) {
  if (a.cols() != b.cols()) {
    throw DimensionMismatch("cannot stack matrices with " + std::to_string(a.cols()) + " and " +
                            std::to_string(b.cols()) + " columns");
  }
  IntMat m = a;
  for (auto const& row : b.rows_) {
    m.rows_.push_back(row);
  }
  return m;
}

std::size_t IntMat::nonzeros() const {
  std::size_t n = 0;
  for (auto const& r : rows_) {
    n += r.size();
  }
  return n;
}

mpz_class IntMat::get(std::size_t r, std::size_t c) const {
  auto const& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](Entry const& e, std::size_t col) { return e.col < col; });
  return it != row.end() && it->col == c ? it->value : mpz_class(0);
}

void IntMat::set(std::size_t r, std::size_t c, mpz_class v) {
  if (c >= cols_) {
    throw DimensionMismatch("column " + std::to_string(c) + " out of range");
  }
  auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](Entry const& e, std::size_t col) { return e.col < col; });
  bool const present = it != row.end() && it->col == c;
  if (v == 0) {
    if (present) {
      row.erase(it);
    }
  } else if (present) {
    it->value = std::move(v);
  } else {
    row.insert(it, Entry{static_cast<std::uint32_t>(c), std::move(v)});
  }
}

void IntMat::append_row(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](Entry const& x, Entry const& y) { return x.col < y.col; });
  std::vector<Entry> clean;
  for (auto& e : entries) {
    if (e.col >= cols_) {
      throw DimensionMismatch("column " + std::to_string(e.col) + " out of range");
    }
    if (!clean.empty() && clean.back().col == e.col) {
      clean.back().value += e.value;
      if (clean.back().value == 0) {
        clean.pop_back();
      }
    } else if (e.value != 0) {
      clean.push_back(std::move(e));
    }
  }
  rows_.push_back(std::move(clean));
}

DenseIntMat IntMat::to_dense() const {
  DenseIntMat d(rows(), std::vector<mpz_class>(cols_, 0));
  for (std::size_t r = 0; r < rows(); ++r) {
    for (auto const& e : rows_[r]) {
      d[r][e.col] = e.value;
    }
  }
  return d;
}

SnfResult dense_snf(DenseIntMat a, std::size_t cols, bool want_transforms) {
  std::size_t const rows = a.size();
  DenseIntMat u;
  DenseIntMat v;
  if (want_transforms) {
    u = identity(rows);
    v = identity(cols);
  }
  auto row_addmul = [&](std::size_t dst, std::size_t src, mpz_class const& q) {
    // row dst -= q · row src
    for (std::size_t j = 0; j < cols; ++j) {
      a[dst][j] -= q * a[src][j];
    }
    if (want_transforms) {
      for (std::size_t j = 0; j < rows; ++j) {
        u[dst][j] -= q * u[src][j];
      }
    }
  };
  auto col_addmul = [&](std::size_t dst, std::size_t src, mpz_class const& q) {
    for (std::size_t i = 0; i < rows; ++i) {
      a[i][dst] -= q * a[i][src];
    }
    if (want_transforms) {
      for (std::size_t i = 0; i < cols; ++i) {
        v[i][dst] -= q * v[i][src];
      }
    }
  };
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    std::swap(a[x], a[y]);
    if (want_transforms) {
      std::swap(u[x], u[y]);
    }
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) {
      std::swap(row[x], row[y]);
    }
    if (want_transforms) {
      for (auto& row : v) {
        std::swap(row[x], row[y]);
      }
    }
  };

  SnfResult out;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block as pivot.
    bool found = false;
    std::size_t pr = t;
    std::size_t pc = t;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pr][pc]))) {
          found = true;
          pr = i;
          pc = j;
        }
      }
    }
    if (!found) {
      break;
    }
    swap_rows(t, pr);
    swap_cols(t, pc);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] != 0) {
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          row_addmul(i, t, q);
          dirty |= a[i][t] != 0;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] != 0) {
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          col_addmul(j, t, q);
          dirty |= a[t][j] != 0;
        }
      }
      if (dirty) {
        // A smaller remainder appeared in row or column t: move it to the pivot.
        std::size_t bi = t;
        std::size_t bj = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) {
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) {
            bi = t;
            bj = j;
          }
        }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Row and column clear; enforce divisibility of the trailing block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) {
        break;
      }
      row_addmul(t, bad, -1);
    }
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) {
        a[t][j] = -a[t][j];
      }
      if (want_transforms) {
        for (std::size_t j = 0; j < rows; ++j) {
          u[t][j] = -u[t][j];
        }
      }
    }
    out.divisors.push_back(a[t][t]);
  }
  out.rank = out.divisors.size();
  if (want_transforms) {
    out.transforms = SnfResult::Transforms{std::move(u), std::move(v)};
  }
  return out;
}

SnfResult snf(IntMat const& a, bool want_transforms) {
  if (want_transforms) {
    return dense_snf(a.to_dense(), a.cols(), true);
  }
  UnitReduction red = unit_reduce(a);
  SnfResult rest = dense_snf(std::move(red.residual), red.residual_cols, false);
  SnfResult out;
  out.divisors.assign(red.pivots, mpz_class(1));
  out.divisors.insert(out.divisors.end(), rest.divisors.begin(), rest.divisors.end());
  out.rank = out.divisors.size();
  return out;
}

std::size_t int_rank(IntMat const& a) {
  UnitReduction red = unit_reduce(a);
  return red.pivots + bareiss_rank(std::move(red.residual), red.residual_cols);
}

std::size_t rank_mod_p(IntMat const& a, std::uint32_t p) {
  if (!is_prime(p)) {
    throw NotPrime(std::to_string(p) + " is not prime");
  }
  SparseEliminator<ModRing> e(a, ModRing{p});
  return e.eliminate();
}

std::vector<std::uint32_t> const& rank_check_primes() {
  static std::vector<std::uint32_t> const primes = [] {
    std::vector<std::uint32_t> ps;
    for (std::uint32_t n = (1U << 30) - 1; ps.size() < 3; n -= 2) {
      if (is_prime(n)) {
        ps.push_back(n);
      }
    }
    return ps;
  }();
  return primes;
}

RankCertificate certified_rank(IntMat const& a, unsigned threads) {
  RankCertificate cert;
  auto const& primes = rank_check_primes();
  std::vector<std::size_t> modular(primes.size());
  if (threads > 1) {
    std::vector<std::future<std::size_t>> jobs;
    for (std::uint32_t p : primes) {
      jobs.push_back(std::async(std::launch::async, [&a, p] { return rank_mod_p(a, p); }));
    }
    cert.rank = int_rank(a);
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      modular[k] = jobs[k].get();
    }
  } else {
    for (std::size_t k = 0; k < primes.size(); ++k) {
      modular[k] = rank_mod_p(a, primes[k]);
    }
    cert.rank = int_rank(a);
  }
  for (std::size_t k = 0; k < primes.size(); ++k) {
    cert.modular.emplace_back(primes[k], modular[k]);
    cert.modular_agrees &= modular[k] == cert.rank;
  }
  return cert;
}

std::size_t subgroup_image_rank(IntMat const& relations, IntMat const& subgroup_rows) {
  if (relations.cols() != subgroup_rows.cols()) {
    throw DimensionMismatch("relation matrix has " + std::to_string(relations.cols()) +
                            " columns, subgroup rows have " + std::to_string(subgroup_rows.cols()));
  }
  return int_rank(IntMat::stack(relations, subgroup_rows)) - int_rank(relations);
}

IntMat relation_matrix(Presentation const& p) {
  std::vector<ExponentVector> rows;
  rows.reserve(p.relator_count());
  for (auto const& r : p.relators()) {
    rows.push_back(exponent_vector(r, p.generator_count()));
  }
  return IntMat::from_exponent_vectors(rows, p.generator_count());
}

AbelianQuotient abelian_invariants(Presentation const& p) {
  SnfResult s = snf(relation_matrix(p));
  AbelianQuotient q;
  q.generator_count = p.generator_count();
  q.relation_rank = s.rank;
  q.free_rank = p.generator_count() - s.rank;
  for (auto const& d : s.divisors) {
    if (d > 1) {
      q.torsion.push_back(d);
    }
  }
  return q;
}

}  // namespace coindex
