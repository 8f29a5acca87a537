#include <algorithm>
#include <cstdint>
#include <queue>
#include <tuple>

#include "coindex/words.hpp"

namespace coindex {

namespace {

// Lexicographically least rotation of w and of w^-1; equal for relators that
// agree up to cyclic permutation and inversion.
Word canonical_cyclic(Word const& w) {
  auto least_rotation = [](Word const& u) {
    std::size_t const m = u.size();
    std::size_t best = 0;
    for (std::size_t s = 1; s < m; ++s) {
      for (std::size_t t = 0; t < m; ++t) {
        Letter x = u[(s + t) % m];
        Letter y = u[(best + t) % m];
        if (x != y) {
          if (x < y) {
            best = s;
          }
          break;
        }
      }
    }
    std::vector<Letter> out;
    out.reserve(m);
    for (std::size_t t = 0; t < m; ++t) {
      out.push_back(u[(best + t) % m]);
    }
    return Word(std::move(out));
  };
  Word a = least_rotation(w);
  Word b = least_rotation(w.inverse());
  return std::min(a, b);
}

Word substitute_one(Word const& w, std::uint32_t gen, Word const& def) {
  std::vector<Letter> stack;
  stack.reserve(w.size() + def.size());
  auto push = [&stack](Letter x) {
    if (!stack.empty() && stack.back() == x.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  };
  for (Letter x : w) {
    if (x.gen != gen) {
      push(x);
    } else if (x.sign > 0) {
      for (Letter y : def) {
        push(y);
      }
    } else {
      for (auto it = def.letters().rbegin(); it != def.letters().rend(); ++it) {
        push(it->inverse());
      }
    }
  }
  return Word(std::move(stack));
}

Word replace_generator(Word const& w, std::uint32_t gen, Word const& def) {
  return cyclic_reduce(substitute_one(w, gen, def));
}

class Simplifier {
 public:
  Simplifier(Presentation const& p, SimplifyOptions const& opts)
      : opts_(opts),
        n_(p.generator_count()),
        alive_(n_, true),
        occ_(n_),
        occ_count_(n_, 0),
        rels_(p.relators()),
        version_(rels_.size(), 0) {
    for (std::uint32_t r = 0; r < rels_.size(); ++r) {
      index_relator(r);
      add_counts(rels_[r], 1);
      total_ += rels_[r].size();
    }
    length_limit_ = opts_.expand_limit_percent == 0
                        ? static_cast<std::size_t>(-1)
                        : total_ * opts_.expand_limit_percent / 100;
  }

  void run() {
    for (std::size_t round = 0;; ++round) {
      eliminate_phase();
      dedupe();
      if (round >= opts_.substitution_rounds || live_relator_count() > opts_.substitution_max_relators) {
        break;
      }
      if (!substitution_phase()) {
        break;
      }
    }
  }

  SimplifyTrace finish() {
    SimplifyTrace out;
    out.kept.assign(n_, -1);
    std::vector<std::string> names;
    for (std::uint32_t g = 0; g < n_; ++g) {
      if (alive_[g]) {
        out.kept[g] = static_cast<std::int64_t>(names.size());
        names.push_back(original_names_->name(g));
      }
    }
    std::vector<Word> relators;
    for (auto const& r : rels_) {
      if (r.empty()) {
        continue;
      }
      std::vector<Letter> letters;
      letters.reserve(r.size());
      for (Letter x : r) {
        letters.push_back(Letter{static_cast<std::uint32_t>(out.kept[x.gen]), x.sign});
      }
      relators.emplace_back(std::move(letters));
    }
    out.result = Presentation(Alphabet(std::move(names)), std::move(relators));
    out.eliminations = std::move(eliminations_);
    return out;
  }

  void set_names(Alphabet const& names) { original_names_ = &names; }

 private:
  void index_relator(std::uint32_t r) {
    for (Letter x : rels_[r]) {
      if (occ_[x.gen].empty() || occ_[x.gen].back() != r) {
        occ_[x.gen].push_back(r);
      }
    }
  }

  void add_counts(Word const& w, std::int64_t s) {
    for (Letter x : w) {
      occ_count_[x.gen] += s;
    }
  }

  std::size_t live_relator_count() const {
    return static_cast<std::size_t>(
        std::count_if(rels_.begin(), rels_.end(), [](Word const& w) { return !w.empty(); }));
  }

  void set_relator(std::uint32_t r, Word w) {
    add_counts(rels_[r], -1);
    total_ -= rels_[r].size();
    rels_[r] = std::move(w);
    add_counts(rels_[r], 1);
    total_ += rels_[r].size();
    ++version_[r];
    index_relator(r);
    if (!rels_[r].empty()) {
      heap_.emplace(rels_[r].size(), r, version_[r]);
    }
  }

  // Relators that currently contain gen, ascending, with the index list
  // compacted as a side effect.
  std::vector<std::uint32_t> const& holders(std::uint32_t gen) {
    auto& list = occ_[gen];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](std::uint32_t r) {
                                return std::none_of(rels_[r].begin(), rels_[r].end(),
                                                    [gen](Letter x) { return x.gen == gen; });
                              }),
               list.end());
    return list;
  }

  bool try_eliminate(std::uint32_t r) {
    Word const& rel = rels_[r];
    if (rel.empty() || rel.size() - 1 > opts_.max_definition_length) {
      return false;
    }
    // Generators occurring exactly once in this relator.
    std::vector<std::pair<std::uint32_t, std::size_t>> seen;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto it = std::find_if(seen.begin(), seen.end(),
                             [&](auto const& p) { return p.first == rel[i].gen; });
      if (it == seen.end()) {
        seen.emplace_back(rel[i].gen, i);
      } else {
        it->second = static_cast<std::size_t>(-1);
      }
    }
    std::uint32_t best_gen = 0;
    std::size_t best_pos = static_cast<std::size_t>(-1);
    std::int64_t best_count = 0;
    for (auto const& [g, pos] : seen) {
      if (pos == static_cast<std::size_t>(-1)) {
        continue;
      }
      if (best_pos == static_cast<std::size_t>(-1) || occ_count_[g] < best_count ||
          (occ_count_[g] == best_count && g < best_gen)) {
        best_gen = g;
        best_pos = pos;
        best_count = occ_count_[g];
      }
    }
    if (best_pos == static_cast<std::size_t>(-1)) {
      return false;
    }
    std::size_t const def_len = rel.size() - 1;
    std::size_t const growth = static_cast<std::size_t>(best_count - 1) * def_len;
    if (opts_.expand_limit_percent != 0 && total_ + growth > length_limit_ + rel.size()) {
      return false;
    }
    // rel rotated to g^e·C gives g = C^-1 (e = +1) or g = C (e = -1).
    std::vector<Letter> rest;
    rest.reserve(def_len);
    for (std::size_t t = 1; t < rel.size(); ++t) {
      rest.push_back(rel[(best_pos + t) % rel.size()]);
    }
    Word def(std::move(rest));
    if (rel[best_pos].sign > 0) {
      def = def.inverse();
    }
    std::uint32_t const g = best_gen;
    set_relator(r, Word{});
    for (std::uint32_t s : std::vector<std::uint32_t>(holders(g))) {
      set_relator(s, replace_generator(rels_[s], g, def));
    }
    occ_[g].clear();
    alive_[g] = false;
    eliminations_.push_back(Elimination{g, std::move(def)});
    return true;
  }

  void eliminate_phase() {
    heap_ = {};
    for (std::uint32_t r = 0; r < rels_.size(); ++r) {
      if (!rels_[r].empty()) {
        heap_.emplace(rels_[r].size(), r, version_[r]);
      }
    }
    while (!heap_.empty() && eliminations_.size() < opts_.max_eliminations) {
      auto [len, r, ver] = heap_.top();
      heap_.pop();
      if (ver != version_[r] || rels_[r].empty()) {
        continue;
      }
      try_eliminate(r);
    }
  }

  void dedupe() {
    std::vector<std::pair<Word, std::uint32_t>> keyed;
    for (std::uint32_t r = 0; r < rels_.size(); ++r) {
      if (!rels_[r].empty()) {
        keyed.emplace_back(canonical_cyclic(rels_[r]), r);
      }
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 1; i < keyed.size(); ++i) {
      if (keyed[i].first == keyed[i - 1].first) {
        set_relator(keyed[i].second, Word{});
      }
    }
  }

  // Replace, in every other relator, any cyclic occurrence of more than half
  // of a short relator by the inverse of the rest of it.
  bool substitution_phase() {
    bool changed = false;
    std::vector<std::uint32_t> order;
    for (std::uint32_t r = 0; r < rels_.size(); ++r) {
      if (!rels_[r].empty() && rels_[r].size() <= opts_.substitution_max_rule_length) {
        order.push_back(r);
      }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
      return rels_[x].size() < rels_[y].size();
    });
    for (std::uint32_t r : order) {
      Word const rule_rel = rels_[r];
      if (rule_rel.empty()) {
        continue;
      }
      std::size_t const L = rule_rel.size();
      std::size_t const k = L / 2 + 1;
      for (Word const& base : {rule_rel, rule_rel.inverse()}) {
        for (std::size_t rot = 0; rot < L; ++rot) {
          std::vector<Letter> lhs, rhs;
          for (std::size_t t = 0; t < L; ++t) {
            (t < k ? lhs : rhs).push_back(base[(rot + t) % L]);
          }
          Word replacement = Word(std::move(rhs)).inverse();
          for (std::uint32_t s = 0; s < rels_.size(); ++s) {
            if (s == r || rels_[s].size() < k) {
              continue;
            }
            Word w = rels_[s];
            bool hit = false;
            while (auto pos = find_cyclic(w, lhs)) {
              w = splice(w, *pos, k, replacement);
              hit = true;
              if (w.size() < k) {
                break;
              }
            }
            if (hit) {
              set_relator(s, std::move(w));
              changed = true;
            }
          }
        }
      }
    }
    return changed;
  }

  static std::optional<std::size_t> find_cyclic(Word const& w, std::vector<Letter> const& pat) {
    std::size_t const m = w.size();
    if (pat.size() > m) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (w[i] != pat[0]) {
        continue;
      }
      std::size_t t = 1;
      while (t < pat.size() && w[(i + t) % m] == pat[t]) {
        ++t;
      }
      if (t == pat.size()) {
        return i;
      }
    }
    return std::nullopt;
  }

  // Rotate w to start at pos, drop the first k letters, put `by` in front.
  static Word splice(Word const& w, std::size_t pos, std::size_t k, Word const& by) {
    std::size_t const m = w.size();
    Word out = by;
    for (std::size_t t = k; t < m; ++t) {
      out.push_back(w[(pos + t) % m]);
    }
    return cyclic_reduce(out);
  }

  SimplifyOptions opts_;
  std::size_t n_;
  Alphabet const* original_names_ = nullptr;
  std::vector<bool> alive_;
  std::vector<std::vector<std::uint32_t>> occ_;
  std::vector<std::int64_t> occ_count_;
  std::vector<Word> rels_;
  std::vector<std::uint32_t> version_;
  std::size_t total_ = 0;
  std::size_t length_limit_ = 0;
  std::vector<Elimination> eliminations_;
  using HeapEntry = std::tuple<std::size_t, std::uint32_t, std::uint32_t>;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;
};

}  // namespace

SimplifyTrace simplify_presentation_traced(Presentation const& p, SimplifyOptions const& opts) {
  Simplifier s(p, opts);
  s.set_names(p.generators());
  s.run();
  return s.finish();
}

Presentation simplify_presentation(Presentation const& p, SimplifyOptions const& opts) {
  return simplify_presentation_traced(p, opts).result;
}

Word SimplifyTrace::map_word(Word const& w) const {
  Word cur = free_reduce(w);
  for (auto const& e : eliminations) {
    cur = substitute_one(cur, e.gen, e.definition);
  }
  std::vector<Letter> out;
  out.reserve(cur.size());
  for (Letter x : cur) {
    out.push_back(Letter{static_cast<std::uint32_t>(kept.at(x.gen)), x.sign});
  }
  return Word(std::move(out));
}

ExponentVector SimplifyTrace::map_exponents(ExponentVector const& v) const {
  std::vector<std::int64_t> cur = v.entries;
  cur.resize(kept.size(), 0);
  for (auto const& e : eliminations) {
    std::int64_t c = cur[e.gen];
    if (c == 0) {
      continue;
    }
    cur[e.gen] = 0;
    for (Letter x : e.definition) {
      cur[x.gen] += c * x.sign;
    }
  }
  ExponentVector out{std::vector<std::int64_t>(result.generator_count(), 0)};
  for (std::size_t g = 0; g < kept.size(); ++g) {
    if (kept[g] >= 0) {
      out.entries[static_cast<std::size_t>(kept[g])] = cur[g];
    }
  }
  return out;
}

}  // namespace coindex
