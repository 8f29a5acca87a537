#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coindex/eisenstein.hpp"

namespace coindex {

// c0 + c1·x with residues in [0, p); c1 = 0 in prime fields.
struct FqElt {
  std::uint32_t c0 = 0;
  std::uint32_t c1 = 0;

  bool is_zero() const { return c0 == 0 && c1 == 0; }
  friend bool operator==(FqElt, FqElt) = default;
};

// F_p (degree 1) or F_p[x]/(x² + x + 1) (degree 2), together with the image
// of ζ under the reduction Z[ζ] → F_q.
class FieldDesc {
 public:
  std::uint32_t p() const noexcept { return p_; }
  int degree() const noexcept { return degree_; }
  std::uint64_t size() const noexcept { return degree_ == 1 ? p_ : std::uint64_t{p_} * p_; }
  FqElt zeta_image() const noexcept { return zeta_; }
  // p = 3, where ζ ↦ 1 and x² + x + 1 = (x − 1)².
  bool ramified() const noexcept { return p_ == 3; }

  FqElt zero() const { return {0, 0}; }
  FqElt one() const { return {1, 0}; }
  FqElt from_int(std::int64_t v) const;
  FqElt add(FqElt x, FqElt y) const;
  FqElt sub(FqElt x, FqElt y) const;
  FqElt neg(FqElt x) const;
  FqElt mul(FqElt x, FqElt y) const;
  // Throws std::domain_error on zero.
  FqElt inv(FqElt x) const;

  // Dense index in [0, size()).
  std::uint64_t index(FqElt x) const { return x.c0 + std::uint64_t{p_} * x.c1; }
  FqElt from_index(std::uint64_t i) const {
    return {static_cast<std::uint32_t>(i % p_), static_cast<std::uint32_t>(i / p_)};
  }

  friend bool operator==(FieldDesc const& x, FieldDesc const& y) {
    return x.p_ == y.p_ && x.degree_ == y.degree_ && x.zeta_ == y.zeta_;
  }

 private:
  friend FieldDesc make_reduction(std::uint32_t p);
  std::uint32_t mod(std::uint64_t v) const { return static_cast<std::uint32_t>(v % p_); }

  std::uint32_t p_ = 2;
  int degree_ = 2;
  FqElt zeta_{0, 1};
};

bool is_prime(std::uint64_t n);

// p ≡ 1 (mod 3): F_p with ζ ↦ least root r ≥ 2 of r² + r + 1.
// p ≡ 2 (mod 3): F_p[x]/(x² + x + 1) with ζ ↦ x.
// p = 3: F_3 with ζ ↦ 1.
// Throws NotPrime. Moduli must be below 2^31.
FieldDesc make_reduction(std::uint32_t p);

// A 2×2 matrix over some F_q; the field is carried by whoever owns it.
struct MatFq2 {
  std::array<FqElt, 4> e{};

  FqElt operator()(std::size_t r, std::size_t c) const { return e[2 * r + c]; }
  friend bool operator==(MatFq2 const&, MatFq2 const&) = default;
};

struct MatFq2Hash {
  std::size_t operator()(MatFq2 const& m) const noexcept;
};

MatFq2 fq_identity(FieldDesc const& f);
MatFq2 fq_mul(FieldDesc const& f, MatFq2 const& x, MatFq2 const& y);
FqElt fq_det(FieldDesc const& f, MatFq2 const& x);
// Throws std::domain_error for singular input.
MatFq2 fq_inv(FieldDesc const& f, MatFq2 const& x);

FqElt reduce_element(EisensteinInt const& x, FieldDesc const& f);
// Entrywise ring homomorphism a + bζ ↦ (a mod p) + (b mod p)·ζ̄.
MatFq2 reduce_matrix(MatZ2 const& m, FieldDesc const& f);

}  // namespace coindex
