#include "coindex/ffq.hpp"

#include <algorithm>

#include <stdexcept>

#include "coindex/errors.hpp"

namespace coindex {

bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e != 0) {
    if (e & 1U) {
      r = r * b % m;
    }
    b = b * b % m;
    e >>= 1U;
  }
  return r;
}

// Tonelli–Shanks; a must be a nonzero square modulo the odd prime p < 2^32.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) {
    ++z;
  }
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t x = pow_mod(a, (q + 1) / 2, p);
  std::uint64_t t = pow_mod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    for (std::uint64_t u = t; u != 1; u = u * u % p) {
      ++i;
    }
    std::uint64_t b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) {
      b = b * b % p;
    }
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return x;
}

}  // namespace

FieldDesc make_reduction(std::uint32_t p) {
  if (p >= (1U << 31)) {
    throw NotPrime("modulus " + std::to_string(p) + " is too large");
  }
  if (!is_prime(p)) {
    throw NotPrime(std::to_string(p) + " is not prime");
  }
  FieldDesc f;
  f.p_ = p;
  if (p == 3) {
    f.degree_ = 1;
    f.zeta_ = {1, 0};
  } else if (p % 3 == 2) {
    f.degree_ = 2;
    f.zeta_ = {0, 1};
  } else {
    f.degree_ = 1;
    // Roots of r² + r + 1 are (−1 ± √−3)/2; they sum to p − 1.
    std::uint64_t const s = sqrt_mod(p - 3, p);
    std::uint64_t const half = (std::uint64_t{p} + 1) / 2;
    std::uint64_t const r = (s + p - 1) % p * half % p;
    f.zeta_ = {static_cast<std::uint32_t>(std::min(r, std::uint64_t{p} - 1 - r)), 0};
  }
  return f;
}

FqElt FieldDesc::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) {
    r += p_;
  }
  return {static_cast<std::uint32_t>(r), 0};
}

FqElt FieldDesc::add(FqElt x, FqElt y) const {
  return {mod(std::uint64_t{x.c0} + y.c0), mod(std::uint64_t{x.c1} + y.c1)};
}

FqElt FieldDesc::neg(FqElt x) const {
  return {x.c0 == 0 ? 0 : p_ - x.c0, x.c1 == 0 ? 0 : p_ - x.c1};
}

FqElt FieldDesc::sub(FqElt x, FqElt y) const { return add(x, neg(y)); }

FqElt FieldDesc::mul(FqElt x, FqElt y) const {
  if (degree_ == 1) {
    return {mod(std::uint64_t{x.c0} * y.c0), 0};
  }
  // x² = −1 − x, exactly the multiplication rule of Z[ζ].
  std::uint64_t const bd = std::uint64_t{x.c1} * y.c1 % p_;
  std::uint64_t const ac = std::uint64_t{x.c0} * y.c0 % p_;
  std::uint64_t const cross = (std::uint64_t{x.c0} * y.c1 + std::uint64_t{x.c1} * y.c0) % p_;
  return {mod(ac + p_ - bd), mod(cross + p_ - bd)};
}

FqElt FieldDesc::inv(FqElt x) const {
  if (x.is_zero()) {
    throw std::domain_error("inverse of zero in F_q");
  }
  auto pow_mod = [this](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= p_;
    while (e != 0) {
      if (e & 1U) {
        r = r * b % p_;
      }
      b = b * b % p_;
      e >>= 1U;
    }
    return r;
  };
  if (degree_ == 1) {
    return {static_cast<std::uint32_t>(pow_mod(x.c0, p_ - 2)), 0};
  }
  // (c0 + c1 x)^-1 = conj / norm with conj = (c0 − c1) − c1 x.
  FqElt conj{mod(std::uint64_t{x.c0} + p_ - x.c1), x.c1 == 0 ? 0 : p_ - x.c1};
  std::uint64_t const c0 = x.c0;
  std::uint64_t const c1 = x.c1;
  std::uint64_t const n = (c0 * c0 % p_ + c1 * c1 % p_ + (p_ - c0) * c1 % p_) % p_;
  FqElt const ninv{static_cast<std::uint32_t>(pow_mod(n, p_ - 2)), 0};
  return mul(conj, ninv);
}

std::size_t MatFq2Hash::operator()(MatFq2 const& m) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (FqElt x : m.e) {
    h = (h ^ x.c0) * 0x100000001b3ULL;
    h = (h ^ x.c1) * 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29U));
}

MatFq2 fq_identity(FieldDesc const& f) { return {{f.one(), f.zero(), f.zero(), f.one()}}; }

MatFq2 fq_mul(FieldDesc const& f, MatFq2 const& x, MatFq2 const& y) {
  auto dot = [&f](FqElt a, FqElt b, FqElt c, FqElt d) { return f.add(f.mul(a, b), f.mul(c, d)); };
  return {{dot(x.e[0], y.e[0], x.e[1], y.e[2]), dot(x.e[0], y.e[1], x.e[1], y.e[3]),
           dot(x.e[2], y.e[0], x.e[3], y.e[2]), dot(x.e[2], y.e[1], x.e[3], y.e[3])}};
}

FqElt fq_det(FieldDesc const& f, MatFq2 const& x) {
  return f.sub(f.mul(x.e[0], x.e[3]), f.mul(x.e[1], x.e[2]));
}

MatFq2 fq_inv(FieldDesc const& f, MatFq2 const& x) {
  FqElt const d = fq_det(f, x);
  if (d.is_zero()) {
    throw std::domain_error("singular matrix over F_q");
  }
  FqElt const di = f.inv(d);
  return {{f.mul(x.e[3], di), f.neg(f.mul(x.e[1], di)), f.neg(f.mul(x.e[2], di)),
           f.mul(x.e[0], di)}};
}

FqElt reduce_element(EisensteinInt const& x, FieldDesc const& f) {
  auto residue = [&f](mpz_class const& v) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), f.p());
    return FqElt{static_cast<std::uint32_t>(r.get_ui()), 0};
  };
  FqElt const a = residue(x.a());
  FqElt const b = residue(x.b());
  return f.add(a, f.mul(b, f.zeta_image()));
}

MatFq2 reduce_matrix(MatZ2 const& m, FieldDesc const& f) {
  MatFq2 out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.e[i] = reduce_element(m.entries()[i], f);
  }
  return out;
}

}  // namespace coindex
