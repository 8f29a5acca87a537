#include "coindex/toddcoxeter.hpp"

#include <stdexcept>

#include "coindex/errors.hpp"

namespace coindex {

namespace {

constexpr std::int32_t kNone = CosetTable::kUndefined;

class Enumerator {
 public:
  Enumerator(Presentation const& p, TCConfig const& cfg)
      : cols_(2 * p.generator_count()), cfg_(cfg) {
    for (auto const& r : p.relators()) {
      relators_.push_back(to_columns(r));
    }
    new_coset();
  }

  static std::vector<std::uint32_t> to_columns(Word const& w) {
    std::vector<std::uint32_t> cols;
    cols.reserve(w.size());
    for (Letter x : w) {
      cols.push_back(static_cast<std::uint32_t>(CosetTable::column(x)));
    }
    return cols;
  }

  // False when the coset limit is reached.
  bool run(std::span<Word const> subgroup_gens) {
    for (auto const& h : subgroup_gens) {
      if (!scan_and_fill(0, to_columns(h))) {
        return false;
      }
    }
    for (std::size_t alpha = 0; alpha < n_; ++alpha) {
      for (auto const& r : relators_) {
        if (!alive(alpha)) {
          break;
        }
        if (!scan_and_fill(alpha, r)) {
          return false;
        }
      }
      for (std::size_t c = 0; c < cols_ && alive(alpha); ++c) {
        if (at(alpha, c) == kNone && !define(alpha, c)) {
          return false;
        }
      }
    }
    return true;
  }

  std::size_t defined() const { return n_; }
  std::size_t coincidences() const { return coincidences_; }

  std::size_t alive_count() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      k += alive(i) ? 1 : 0;
    }
    return k;
  }

  CosetTable live_table() const {
    std::vector<std::int32_t> renumber(n_, kNone);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (alive(i)) {
        renumber[i] = static_cast<std::int32_t>(k++);
      }
    }
    CosetTable t(cols_ / 2, k, TableOrigin::todd_coxeter);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!alive(i)) {
        continue;
      }
      for (std::size_t c = 0; c < cols_; ++c) {
        std::int32_t v = at(i, c);
        t.set(static_cast<std::size_t>(renumber[i]), c,
              v == kNone ? kNone : renumber[static_cast<std::size_t>(v)]);
      }
    }
    return t;
  }

 private:
  bool alive(std::size_t i) const { return parent_[i] == static_cast<std::int32_t>(i); }
  std::int32_t& at(std::size_t row, std::size_t col) { return table_[row * cols_ + col]; }
  std::int32_t at(std::size_t row, std::size_t col) const { return table_[row * cols_ + col]; }

  bool new_coset() {
    if (n_ >= cfg_.max_cosets) {
      return false;
    }
    table_.resize(table_.size() + cols_, kNone);
    parent_.push_back(static_cast<std::int32_t>(n_));
    ++n_;
    return true;
  }

  bool define(std::size_t alpha, std::size_t c) {
    if (!new_coset()) {
      return false;
    }
    std::int32_t const beta = static_cast<std::int32_t>(n_ - 1);
    at(alpha, c) = beta;
    at(static_cast<std::size_t>(beta), c ^ 1U) = static_cast<std::int32_t>(alpha);
    return true;
  }

  bool scan_and_fill(std::size_t alpha, std::vector<std::uint32_t> const& w) {
    if (w.empty()) {
      return true;
    }
    std::size_t f = alpha;
    std::size_t b = alpha;
    std::size_t i = 0;
    std::size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && at(f, w[i]) != kNone) {
        f = static_cast<std::size_t>(at(f, w[i]));
        ++i;
      }
      if (i == j) {
        if (f != b) {
          coincidence(f, b);
        }
        return true;
      }
      while (j > i && at(b, w[j - 1] ^ 1U) != kNone) {
        b = static_cast<std::size_t>(at(b, w[j - 1] ^ 1U));
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        // deduction
        at(f, w[i]) = static_cast<std::int32_t>(b);
        at(b, w[i] ^ 1U) = static_cast<std::int32_t>(f);
        return true;
      }
      if (!define(f, w[i])) {
        return false;
      }
    }
  }

  std::size_t find(std::size_t k) {
    std::size_t root = k;
    while (parent_[root] != static_cast<std::int32_t>(root)) {
      root = static_cast<std::size_t>(parent_[root]);
    }
    while (parent_[k] != static_cast<std::int32_t>(root)) {
      std::size_t next = static_cast<std::size_t>(parent_[k]);
      parent_[k] = static_cast<std::int32_t>(root);
      k = next;
    }
    return root;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    std::size_t phi = find(k);
    std::size_t psi = find(l);
    if (phi == psi) {
      return;
    }
    if (psi < phi) {
      std::swap(phi, psi);
    }
    parent_[psi] = static_cast<std::int32_t>(phi);
    queue.push_back(psi);
  }

  void coincidence(std::size_t alpha, std::size_t beta) {
    ++coincidences_;
    std::vector<std::size_t> queue;
    merge(alpha, beta, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::size_t const gamma = queue[q];
      for (std::size_t c = 0; c < cols_; ++c) {
        std::int32_t const d = at(gamma, c);
        if (d == kNone) {
          continue;
        }
        std::size_t const delta = static_cast<std::size_t>(d);
        if (at(delta, c ^ 1U) == static_cast<std::int32_t>(gamma)) {
          at(delta, c ^ 1U) = kNone;
        }
        std::size_t const mu = find(gamma);
        std::size_t const nu = find(delta);
        if (at(mu, c) != kNone) {
          merge(nu, static_cast<std::size_t>(at(mu, c)), queue);
        } else if (at(nu, c ^ 1U) != kNone) {
          merge(mu, static_cast<std::size_t>(at(nu, c ^ 1U)), queue);
        } else {
          at(mu, c) = static_cast<std::int32_t>(nu);
          at(nu, c ^ 1U) = static_cast<std::int32_t>(mu);
        }
      }
    }
    if (cfg_.audit) {
      audit();
    }
  }

  void audit() const {
    for (std::size_t r = 0; r < n_; ++r) {
      if (!alive(r)) {
        continue;
      }
      for (std::size_t c = 0; c < cols_; ++c) {
        std::int32_t const s = at(r, c);
        if (s == kNone) {
          continue;
        }
        if (!alive(static_cast<std::size_t>(s)) ||
            at(static_cast<std::size_t>(s), c ^ 1U) != static_cast<std::int32_t>(r)) {
          throw std::logic_error("coset table inconsistent after coincidence");
        }
      }
    }
  }

  std::size_t cols_;
  TCConfig cfg_;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::size_t n_ = 0;
  std::size_t coincidences_ = 0;
};

}  // namespace

CosetTable standardize(CosetTable const& t) {
  if (!t.is_complete()) {
    throw IncompleteTable("cannot standardize an incomplete coset table");
  }
  std::vector<std::int32_t> order(t.rows(), kNone);
  std::vector<std::size_t> seq;
  if (t.rows() > 0) {
    order[0] = 0;
    seq.push_back(0);
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t c = 0; c < t.columns(); ++c) {
      std::size_t const s = static_cast<std::size_t>(t(seq[i], c));
      if (order[s] == kNone) {
        order[s] = static_cast<std::int32_t>(seq.size());
        seq.push_back(s);
      }
    }
  }
  CosetTable out(t.generator_count(), seq.size(), t.origin());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t c = 0; c < t.columns(); ++c) {
      out.set(i, c, order[static_cast<std::size_t>(t(seq[i], c))]);
    }
  }
  return out;
}

TCResult coset_enumerate(Presentation const& p, std::span<Word const> subgroup_gens,
                         TCConfig const& cfg) {
  if (cfg.max_cosets < 1) {
    throw std::invalid_argument("max_cosets must be at least 1");
  }
  for (auto const& h : subgroup_gens) {
    for (Letter x : h) {
      if (x.gen >= p.generator_count()) {
        throw InvalidWord("subgroup generator uses a symbol outside the presentation");
      }
    }
  }
  Enumerator e(p, cfg);
  bool const done = e.run(subgroup_gens);
  TCResult r;
  r.max_cosets = cfg.max_cosets;
  r.cosets_defined = e.defined();
  r.cosets_alive = e.alive_count();
  r.coincidences = e.coincidences();
  // Coset 0 is never merged away, so this only fires on a corrupted run.
  if (r.cosets_alive == 0) {
    throw DegeneratePresentation("coincidences collapsed every coset");
  }
  if (done) {
    r.status = TCStatus::completed;
    r.table = standardize(e.live_table());
    r.index = r.table->rows();
  }
  return r;
}

}  // namespace coindex
