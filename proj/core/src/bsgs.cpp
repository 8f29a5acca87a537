#include "coindex/bsgs.hpp"

#include <unordered_map>

#include "coindex/congruence.hpp"

namespace coindex {

namespace {

using Element = std::vector<MatFq2>;

class ChainBuilder {
 public:
  explicit ChainBuilder(ProductMatGroup const& g) : fields_(g.fields) {
    std::uint64_t offset = 0;
    for (auto const& f : fields_) {
      offsets_.push_back(offset);
      offset += f.size() * f.size();
    }
    for (auto const& gen : g.gens) {
      if (!is_identity(gen)) {
        input_.push_back(gen);
      }
    }
  }

  StabilizerChainStats run() {
    for (auto const& gen : input_) {
      std::size_t depth = 0;
      while (depth < levels_.size() && image(levels_[depth].base_point, gen) == levels_[depth].base_point) {
        ++depth;
      }
      std::uint32_t const id = add_strong(gen);
      if (depth == levels_.size()) {
        add_level(moved_point(gen));
      }
      for (std::size_t l = 0; l <= depth; ++l) {
        levels_[l].gens.push_back(id);
      }
    }
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      extend_orbit(l);
    }

    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      std::size_t const lvl = static_cast<std::size_t>(i);
      std::optional<std::size_t> jumped = check_level(lvl);
      i = jumped ? static_cast<std::ptrdiff_t>(*jumped) : i - 1;
    }

    StabilizerChainStats out;
    out.strong_generators = strong_.size();
    for (auto const& lv : levels_) {
      out.base.push_back(lv.base_point);
      out.orbit_lengths.push_back(lv.orbit.size());
      out.order *= static_cast<unsigned long>(lv.orbit.size());
    }
    return out;
  }

 private:
  struct Level {
    std::uint64_t base_point = 0;
    std::vector<std::uint32_t> gens;  // strong generators of this level
    std::vector<std::uint64_t> orbit;
    std::unordered_map<std::uint64_t, std::uint32_t> position;
    // Tree: orbit[i] = orbit[parent[i]] ^ (strong gen via[i])^{sign[i]}.
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> via;
    std::vector<std::int8_t> sign;
    std::vector<std::uint32_t> expanded;  // level gens applied to point i
    std::vector<std::uint32_t> checked;   // level gens whose Schreier gens at i are sifted
  };

  bool is_identity(Element const& x) const {
    for (std::size_t k = 0; k < fields_.size(); ++k) {
      if (!(x[k] == fq_identity(fields_[k]))) {
        return false;
      }
    }
    return true;
  }

  Element mul(Element const& x, Element const& y) const {
    Element z(fields_.size());
    for (std::size_t k = 0; k < fields_.size(); ++k) {
      z[k] = fq_mul(fields_[k], x[k], y[k]);
    }
    return z;
  }

  Element inv(Element const& x) const {
    Element z(fields_.size());
    for (std::size_t k = 0; k < fields_.size(); ++k) {
      z[k] = fq_inv(fields_[k], x[k]);
    }
    return z;
  }

  std::uint64_t encode(std::size_t k, FqElt v0, FqElt v1) const {
    FieldDesc const& f = fields_[k];
    return offsets_[k] + f.index(v0) + f.size() * f.index(v1);
  }

  std::size_t component_of(std::uint64_t point) const {
    std::size_t k = offsets_.size() - 1;
    while (offsets_[k] > point) {
      --k;
    }
    return k;
  }

  // Row vector times matrix.
  std::uint64_t image(std::uint64_t point, Element const& x) const {
    std::size_t const k = component_of(point);
    FieldDesc const& f = fields_[k];
    std::uint64_t const local = point - offsets_[k];
    FqElt const v0 = f.from_index(local % f.size());
    FqElt const v1 = f.from_index(local / f.size());
    MatFq2 const& m = x[k];
    FqElt const w0 = f.add(f.mul(v0, m.e[0]), f.mul(v1, m.e[2]));
    FqElt const w1 = f.add(f.mul(v0, m.e[1]), f.mul(v1, m.e[3]));
    return encode(k, w0, w1);
  }

  // A point (e1 or e2 of some component) moved by a non-identity element.
  std::uint64_t moved_point(Element const& x) const {
    for (std::size_t k = 0; k < fields_.size(); ++k) {
      FieldDesc const& f = fields_[k];
      std::uint64_t const e1 = encode(k, f.one(), f.zero());
      std::uint64_t const e2 = encode(k, f.zero(), f.one());
      if (image(e1, x) != e1) {
        return e1;
      }
      if (image(e2, x) != e2) {
        return e2;
      }
    }
    return 0;  // unreachable for non-identity input
  }

  std::uint32_t add_strong(Element const& x) {
    strong_.push_back(x);
    strong_inv_.push_back(inv(x));
    return static_cast<std::uint32_t>(strong_.size() - 1);
  }

  void add_level(std::uint64_t point) {
    Level lv;
    lv.base_point = point;
    lv.orbit.push_back(point);
    lv.position.emplace(point, 0);
    lv.parent.push_back(0);
    lv.via.push_back(0);
    lv.sign.push_back(1);
    lv.expanded.push_back(0);
    lv.checked.push_back(0);
    levels_.push_back(std::move(lv));
  }

  void extend_orbit(std::size_t l) {
    Level& lv = levels_[l];
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      for (std::uint32_t k = lv.expanded[i]; k < lv.gens.size(); ++k) {
        for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
          Element const& g = s > 0 ? strong_[lv.gens[k]] : strong_inv_[lv.gens[k]];
          std::uint64_t const y = image(lv.orbit[i], g);
          if (lv.position.emplace(y, static_cast<std::uint32_t>(lv.orbit.size())).second) {
            lv.orbit.push_back(y);
            lv.parent.push_back(static_cast<std::uint32_t>(i));
            lv.via.push_back(lv.gens[k]);
            lv.sign.push_back(s);
            lv.expanded.push_back(0);
            lv.checked.push_back(0);
          }
        }
      }
      lv.expanded[i] = static_cast<std::uint32_t>(lv.gens.size());
    }
  }

  // h · u_x^-1 where u_x maps the base point of level l to orbit[i].
  void strip(Element& h, std::size_t l, std::uint32_t i) const {
    Level const& lv = levels_[l];
    while (i != 0) {
      std::uint32_t const g = lv.via[i];
      // u_i = u_parent · g^sign, so u_i^-1 = g^-sign · u_parent^-1.
      h = mul(h, lv.sign[i] > 0 ? strong_inv_[g] : strong_[g]);
      i = lv.parent[i];
    }
  }

  Element transversal(std::size_t l, std::uint32_t i) const {
    Element u = inv_identity();
    strip(u, l, i);
    return inv(u);
  }

  Element inv_identity() const {
    Element e(fields_.size());
    for (std::size_t k = 0; k < fields_.size(); ++k) {
      e[k] = fq_identity(fields_[k]);
    }
    return e;
  }

  // Returns the first level at which h leaves the chain (levels_.size()
  // when it sifts through) and leaves the residue in h.
  std::size_t sift(Element& h, std::size_t from) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      Level const& lv = levels_[l];
      auto it = lv.position.find(image(lv.base_point, h));
      if (it == lv.position.end()) {
        return l;
      }
      strip(h, l, it->second);
    }
    return levels_.size();
  }

  // Sift the pending Schreier generators of level l. On a new strong
  // generator, returns the deepest level it was added to.
  std::optional<std::size_t> check_level(std::size_t l) {
    for (std::size_t i = 0; i < levels_[l].orbit.size(); ++i) {
      while (levels_[l].checked[i] < levels_[l].gens.size()) {
        Level& lv = levels_[l];
        std::uint32_t const k = lv.checked[i]++;
        Element const& s = strong_[lv.gens[k]];
        std::uint64_t const y = image(lv.orbit[i], s);
        Element h = mul(transversal(l, static_cast<std::uint32_t>(i)), s);
        strip(h, l, lv.position.at(y));
        std::size_t const j = sift(h, l + 1);
        if (j == levels_.size() && is_identity(h)) {
          continue;
        }
        std::uint32_t const id = add_strong(h);
        if (j == levels_.size()) {
          add_level(moved_point(h));
        }
        for (std::size_t m = l + 1; m <= j; ++m) {
          levels_[m].gens.push_back(id);
          extend_orbit(m);
        }
        return j;
      }
    }
    return std::nullopt;
  }

  std::vector<FieldDesc> fields_;
  std::vector<std::uint64_t> offsets_;
  std::vector<Element> input_;
  std::vector<Element> strong_;
  std::vector<Element> strong_inv_;
  std::vector<Level> levels_;
};

}  // namespace

StabilizerChainStats schreier_sims(ProductMatGroup const& g) { return ChainBuilder(g).run(); }

mpz_class bsgs_order(ProductMatGroup const& g) { return schreier_sims(g).order; }

mpz_class bsgs_order(FiniteMatGroup const& g) {
  ProductMatGroup pg;
  pg.fields = {g.field};
  for (auto const& m : g.gens) {
    pg.gens.push_back({m});
  }
  return bsgs_order(pg);
}

}  // namespace coindex
