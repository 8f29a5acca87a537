#include "oracles.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

namespace coindex::testing {

std::complex<double> to_complex(EisensteinInt const& x) {
  double const pi = std::acos(-1.0);
  std::complex<double> const zeta = std::polar(1.0, 2 * pi / 3);
  return x.a().get_d() + x.b().get_d() * zeta;
}

std::vector<std::uint32_t> cube_roots_of_unity_scan(std::uint32_t p) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t r = 0; r < p; ++r) {
    if ((r * r + r + 1) % p == 0) {
      out.push_back(static_cast<std::uint32_t>(r));
    }
  }
  return out;
}

mpz_class brute_det(std::vector<std::vector<mpz_class>> const& a) {
  std::size_t const n = a.size();
  if (n == 0) {
    return 1;
  }
  if (n == 1) {
    return a[0][0];
  }
  mpz_class det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) {
          row.push_back(a[i][c]);
        }
      }
      minor.push_back(std::move(row));
    }
    mpz_class const term = a[0][j] * brute_det(minor);
    det += (j % 2 == 0) ? term : mpz_class(-term);
  }
  return det;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Z[ζ]/(p) as pairs (c0, c1) meaning c0 + c1·ζ.
struct Residues {
  std::uint64_t p;
  bool split;        // ζ ↦ root in F_p
  std::uint64_t root;

  explicit Residues(std::uint32_t prime) : p(prime) {
    auto roots = cube_roots_of_unity_scan(prime);
    split = false;
    root = 0;
    for (auto r : roots) {
      if (r >= 2 || prime == 3) {
        split = true;
        root = r;
        break;
      }
    }
  }

  using Elt = std::array<std::uint64_t, 2>;

  Elt reduce(EisensteinInt const& x) const {
    auto m = [&](mpz_class const& v) {
      mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
      if (r < 0) {
        r += static_cast<unsigned long>(p);
      }
      return r.get_ui();
    };
    if (split) {
      return {(m(x.a()) + m(x.b()) * root) % p, 0};
    }
    return {m(x.a()), m(x.b())};
  }
  Elt mul(Elt x, Elt y) const {
    if (split) {
      return {x[0] * y[0] % p, 0};
    }
    // (a + bx)(c + dx) with x² = −1 − x.
    std::uint64_t const bd = x[1] * y[1] % p;
    return {(x[0] * y[0] + p - bd) % p, (x[0] * y[1] + x[1] * y[0] + p - bd) % p};
  }
  Elt add(Elt x, Elt y) const { return {(x[0] + y[0]) % p, (x[1] + y[1]) % p}; }
};

using Key = std::vector<std::uint64_t>;

Key reduce_matrix(Residues const& r, MatZ2 const& m) {
  Key k;
  for (std::size_t i = 0; i < 4; ++i) {
    auto e = r.reduce(m.entries()[i]);
    k.push_back(e[0]);
    k.push_back(e[1]);
  }
  return k;
}

// Key block of 8 residues at `at` times block of y.
void mul_block(Residues const& r, Key const& x, Key const& y, std::size_t at, Key& out) {
  auto get = [&](Key const& k, std::size_t i) { return Residues::Elt{k[at + 2 * i], k[at + 2 * i + 1]}; };
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      auto v = r.add(r.mul(get(x, 2 * i), get(y, j)), r.mul(get(x, 2 * i + 1), get(y, 2 + j)));
      out[at + 2 * (2 * i + j)] = v[0];
      out[at + 2 * (2 * i + j) + 1] = v[1];
    }
  }
}

std::uint64_t closure(std::vector<Residues> const& rs, std::vector<Key> const& gens) {
  Key id(8 * rs.size(), 0);
  for (std::size_t b = 0; b < rs.size(); ++b) {
    id[8 * b] = 1;
    id[8 * b + 6] = 1;
  }
  std::set<Key> seen{id};
  std::deque<Key> queue{id};
  while (!queue.empty()) {
    Key x = queue.front();
    queue.pop_front();
    for (auto const& g : gens) {
      Key y(x.size());
      for (std::size_t b = 0; b < rs.size(); ++b) {
        mul_block(rs[b], x, g, 8 * b, y);
      }
      if (seen.insert(y).second) {
        queue.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

}  // namespace

mpz_class gcd_of_minors(std::vector<std::vector<mpz_class>> const& a, std::size_t k) {
  std::size_t const rows = a.size();
  std::size_t const cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::vector<std::size_t>> rsets;
  std::vector<std::vector<std::size_t>> csets;
  std::vector<std::size_t> cur;
  subsets(rows, k, 0, cur, rsets);
  subsets(cols, k, 0, cur, csets);
  mpz_class g = 0;
  for (auto const& rset : rsets) {
    for (auto const& cset : csets) {
      std::vector<std::vector<mpz_class>> minor;
      for (auto r : rset) {
        std::vector<mpz_class> row;
        for (auto c : cset) {
          row.push_back(a[r][c]);
        }
        minor.push_back(std::move(row));
      }
      mpz_class const d = brute_det(minor);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

std::uint64_t naive_closure_order(std::vector<MatZ2> const& gens, std::uint32_t p) {
  return naive_product_order(gens, {p});
}

std::uint64_t naive_product_order(std::vector<MatZ2> const& gens, std::vector<std::uint32_t> const& primes) {
  std::vector<Residues> rs;
  for (auto p : primes) {
    rs.emplace_back(p);
  }
  std::vector<Key> keys;
  for (auto const& m : gens) {
    Key k;
    for (auto const& r : rs) {
      Key part = reduce_matrix(r, m);
      k.insert(k.end(), part.begin(), part.end());
    }
    keys.push_back(std::move(k));
  }
  return closure(rs, keys);
}

}  // namespace coindex::testing
