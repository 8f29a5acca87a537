#include "coindex/congruence.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "coindex/bsgs.hpp"
#include "coindex/errors.hpp"

namespace coindex {

namespace {

// Generators then inverses interleaved: column order of a coset table.
std::vector<MatFq2> column_matrices(FiniteMatGroup const& g) {
  std::vector<MatFq2> cols;
  cols.reserve(2 * g.gens.size());
  for (auto const& m : g.gens) {
    cols.push_back(m);
    cols.push_back(fq_inv(g.field, m));
  }
  return cols;
}

}  // namespace

FiniteMatGroup FiniteMatGroup::reduce(std::span<NamedMatrix const> gens, FieldDesc const& f) {
  FiniteMatGroup g{f, {}, {}};
  for (auto const& [name, m] : gens) {
    g.names.push_back(name);
    g.gens.push_back(reduce_matrix(m, f));
  }
  return g;
}

std::optional<std::size_t> ElementTable::find(MatFq2 const& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<ElementTable> enumerate_elements(FiniteMatGroup const& g, std::uint64_t cap) {
  ElementTable t;
  std::vector<MatFq2> const cols = column_matrices(g);
  MatFq2 const id = fq_identity(g.field);
  t.elements_.push_back(id);
  t.index_.emplace(id, 0);
  for (std::size_t i = 0; i < t.elements_.size(); ++i) {
    for (auto const& c : cols) {
      MatFq2 y = fq_mul(g.field, t.elements_[i], c);
      if (t.index_.find(y) == t.index_.end()) {
        if (t.elements_.size() >= cap) {
          return std::nullopt;
        }
        t.index_.emplace(y, static_cast<std::uint32_t>(t.elements_.size()));
        t.elements_.push_back(y);
      }
    }
  }
  return t;
}

std::optional<std::uint64_t> closure_order(FiniteMatGroup const& g, std::uint64_t cap) {
  auto t = enumerate_elements(g, cap);
  if (!t) {
    return std::nullopt;
  }
  return t->size();
}

CosetTable cayley_coset_table(FiniteMatGroup const& g, std::uint64_t cap) {
  auto elems = enumerate_elements(g, cap);
  if (!elems) {
    throw Exceeded("group has more than " + std::to_string(cap) + " elements");
  }
  std::vector<MatFq2> const cols = column_matrices(g);
  CosetTable table(g.gens.size(), elems->size(), TableOrigin::cayley);
  for (std::size_t r = 0; r < elems->size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto j = elems->find(fq_mul(g.field, (*elems)[r], cols[c]));
      table.set(r, c, static_cast<std::int32_t>(*j));
    }
  }
  return table;
}

SchreierOrbit orbit_stabilizer_schreier(FieldDesc const& f, std::span<MatFq2 const> acting,
                                        MatFq2 const& seed, bool dedup) {
  SchreierOrbit o;
  std::unordered_map<MatFq2, std::uint32_t, MatFq2Hash> where;
  o.points.push_back(seed);
  o.tree.push_back({});
  o.reps.emplace_back();
  where.emplace(seed, 0);
  std::set<Word> seen;
  for (std::size_t i = 0; i < o.points.size(); ++i) {
    for (std::uint32_t g = 0; g < acting.size(); ++g) {
      MatFq2 y = fq_mul(f, o.points[i], acting[g]);
      auto [it, fresh] = where.emplace(y, static_cast<std::uint32_t>(o.points.size()));
      if (fresh) {
        o.points.push_back(y);
        o.tree.push_back({static_cast<std::int64_t>(i), g, 1});
        Word rep = o.reps[i];
        rep.push_back(Letter{g, 1});
        o.reps.push_back(std::move(rep));
        continue;
      }
      Word s = o.reps[i];
      s.push_back(Letter{g, 1});
      s.append(o.reps[it->second].inverse());
      s = free_reduce(s);
      if (dedup && !seen.insert(s).second) {
        continue;
      }
      o.schreier_gens.push_back(std::move(s));
      o.schreier_pairs.push_back({static_cast<std::uint32_t>(i), g});
    }
  }
  return o;
}

mpz_class congruence_index_bound(FiniteMatGroup const& s, FiniteMatGroup const& gamma) {
  if (!(s.field == gamma.field)) {
    throw NotASubgroup("subgroup and group are reduced into different fields");
  }
  mpz_class const order_gamma = bsgs_order(gamma);
  FiniteMatGroup joined = gamma;
  joined.gens.insert(joined.gens.end(), s.gens.begin(), s.gens.end());
  if (bsgs_order(joined) != order_gamma) {
    throw NotASubgroup("subgroup generators do not lie in the group");
  }
  mpz_class const order_s = bsgs_order(s);
  return order_gamma / order_s;
}

MultiModulusBound multi_modulus_bound(std::span<std::uint32_t const> primes,
                                      std::span<NamedMatrix const> s_gens,
                                      std::span<NamedMatrix const> gamma_gens, unsigned threads) {
  std::set<std::uint32_t> distinct(primes.begin(), primes.end());
  if (distinct.size() != primes.size()) {
    throw std::invalid_argument("moduli must be distinct");
  }
  MultiModulusBound out;
  std::vector<FieldDesc> fields;
  for (std::uint32_t p : primes) {
    fields.push_back(make_reduction(p));
  }
  out.per_modulus.resize(fields.size());
  auto one_modulus = [&](std::size_t k) {
    FiniteMatGroup const s = FiniteMatGroup::reduce(s_gens, fields[k]);
    FiniteMatGroup const gamma = FiniteMatGroup::reduce(gamma_gens, fields[k]);
    ModulusBound& b = out.per_modulus[k];
    b.field = fields[k];
    b.order_gamma = bsgs_order(gamma);
    // Images of S are small; closure is exact and cheap there.
    if (auto small = closure_order(s, 200'000)) {
      b.order_s = static_cast<unsigned long>(*small);
    } else {
      b.order_s = bsgs_order(s);
    }
    b.index_bound = congruence_index_bound(s, gamma);
  };
  unsigned const workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(fields.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      one_modulus(k);
    }
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex m;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < fields.size(); k += workers) {
          try {
            one_modulus(k);
          } catch (...) {
            std::lock_guard lock(m);
            failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }
  if (fields.empty()) {
    return out;
  }
  auto product = [&fields](std::span<NamedMatrix const> gens) {
    ProductMatGroup g;
    g.fields = fields;
    for (auto const& named : gens) {
      std::vector<MatFq2> tuple;
      for (auto const& f : fields) {
        tuple.push_back(reduce_matrix(named.matrix, f));
      }
      g.gens.push_back(std::move(tuple));
    }
    return g;
  };
  out.order_gamma = bsgs_order(product(gamma_gens));
  out.order_s = bsgs_order(product(s_gens));
  out.index = out.order_gamma / out.order_s;
  return out;
}

}  // namespace coindex
