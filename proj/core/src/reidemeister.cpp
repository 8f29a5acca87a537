#include "coindex/reidemeister.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "coindex/errors.hpp"

namespace coindex {

Transversal schreier_transversal(CosetTable const& t) {
  if (!t.is_complete()) {
    throw IncompleteTable("transversal needs a complete coset table");
  }
  std::size_t const n = t.rows();
  std::size_t const gens = t.generator_count();
  Transversal tr;
  tr.generator_count = gens;
  tr.reps.assign(n, Word{});
  tr.tree_edge.assign(n * gens, false);
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> queue;
  if (n == 0) {
    return tr;
  }
  reached[0] = true;
  queue.push_back(0);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::size_t const c = queue[q];
    for (std::size_t col = 0; col < t.columns(); ++col) {
      std::size_t const d = static_cast<std::size_t>(t(c, col));
      if (reached[d]) {
        continue;
      }
      reached[d] = true;
      queue.push_back(d);
      Letter const x{static_cast<std::uint32_t>(col / 2), static_cast<std::int8_t>(col % 2 == 0 ? 1 : -1)};
      tr.reps[d] = tr.reps[c];
      tr.reps[d].push_back(x);
      tr.depth = std::max(tr.depth, tr.reps[d].size());
      // c·g = d for a positive letter, d·g = c for an inverse one.
      std::size_t const from = x.sign > 0 ? c : d;
      tr.tree_edge[from * gens + x.gen] = true;
    }
  }
  if (queue.size() != n) {
    throw IncompleteTable("coset table is not connected");
  }
  return tr;
}

SchreierAlphabet schreier_alphabet(Transversal const& tr) {
  SchreierAlphabet sa;
  sa.generator_count = tr.generator_count;
  std::size_t const n = tr.reps.size();
  sa.index.assign(n * tr.generator_count, -1);
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::uint32_t g = 0; g < tr.generator_count; ++g) {
      if (!tr.is_tree(c, g)) {
        sa.index[c * tr.generator_count + g] = static_cast<std::int64_t>(sa.labels.size());
        sa.labels.push_back({c, g});
      }
    }
  }
  return sa;
}

Word rs_rewrite_from(Word const& w, std::size_t start, CosetTable const& t,
                     SchreierAlphabet const& sa, std::size_t* end) {
  std::vector<Letter> out;
  std::size_t c = start;
  auto emit = [&out](Letter x) {
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  };
  for (Letter x : w) {
    std::size_t const d = static_cast<std::size_t>(t(c, CosetTable::column(x)));
    std::size_t const from = x.sign > 0 ? c : d;
    std::int64_t const s = sa.at(from, x.gen);
    if (s >= 0) {
      emit(Letter{static_cast<std::uint32_t>(s), x.sign});
    }
    c = d;
  }
  if (end != nullptr) {
    *end = c;
  }
  return Word(std::move(out));
}

Word rs_rewrite(Word const& w, CosetTable const& t, SchreierAlphabet const& sa) {
  std::size_t end = 0;
  Word r = rs_rewrite_from(w, 0, t, sa, &end);
  if (end != 0) {
    throw NotInSubgroup("word ends at coset " + std::to_string(end) + ", not in the subgroup");
  }
  return r;
}

Word RSPresentation::expand_generator(std::size_t i, CosetTable const& t) const {
  auto const [c, g] = alphabet.labels.at(i);
  std::size_t const d = static_cast<std::size_t>(t(c, CosetTable::column(Letter{g, 1})));
  Word w = transversal.reps[c];
  w.push_back(Letter{g, 1});
  w.append(transversal.reps[d].inverse());
  return w;
}

Word RSPresentation::expand(Word const& w, CosetTable const& t) const {
  Word out;
  for (Letter x : w) {
    Word e = expand_generator(x.gen, t);
    out.append(x.sign > 0 ? e : e.inverse());
  }
  return free_reduce(out);
}

RSPresentation subgroup_presentation(Presentation const& p, CosetTable const& t, unsigned threads) {
  if (t.generator_count() != p.generator_count()) {
    throw IncompleteTable("coset table and presentation have different generator counts");
  }
  RSPresentation out;
  out.transversal = schreier_transversal(t);
  out.alphabet = schreier_alphabet(out.transversal);

  std::size_t const n = t.rows();
  std::size_t const nr = p.relator_count();
  std::vector<Word> rewritten(n * nr);
  std::exception_ptr failure;
  std::mutex m;
  auto work = [&](std::size_t first, std::size_t step) {
    for (std::size_t c = first; c < n; c += step) {
      for (std::size_t r = 0; r < nr; ++r) {
        std::size_t end = 0;
        Word w = rs_rewrite_from(p.relators()[r], c, t, out.alphabet, &end);
        if (end != c) {
          std::lock_guard lock(m);
          failure = std::make_exception_ptr(IncompleteTable(
              "relator " + std::to_string(r) + " does not close at coset " + std::to_string(c)));
          return;
        }
        rewritten[c * nr + r] = std::move(w);
      }
    }
  };
  unsigned const workers = std::max(1U, threads);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) {
      pool.emplace_back(work, i, workers);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::vector<std::string> names;
  names.reserve(out.alphabet.size());
  for (auto const& [c, g] : out.alphabet.labels) {
    names.push_back("x" + std::to_string(c) + "_" + p.generators().name(g));
  }
  out.presentation = Presentation(Alphabet(std::move(names)), std::move(rewritten));
  return out;
}

}  // namespace coindex
