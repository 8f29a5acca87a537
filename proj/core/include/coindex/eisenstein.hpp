#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coindex/words.hpp"

namespace coindex {

// An element a + b·ζ of Z[ζ], where ζ² + ζ + 1 = 0.
//
// The pair (a, b) is the unique coordinate vector in the basis {1, ζ}, so
// equality of values is equality of pairs.
class EisensteinInt {
 public:
  EisensteinInt() = default;
  EisensteinInt(long a) : a_(a), b_(0) {}  // NOLINT(runtime/explicit)
  EisensteinInt(mpz_class a, mpz_class b) : a_(std::move(a)), b_(std::move(b)) {}

  static EisensteinInt zeta() { return {0, 1}; }
  // ζ^k for any integer k.
  static EisensteinInt zeta_power(long k);
  // x·ζ + y·ζ², the form in which matrix entries are usually printed.
  static EisensteinInt from_zeta_zeta2(long x, long y);

  mpz_class const& a() const noexcept { return a_; }
  mpz_class const& b() const noexcept { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }

  // Complex conjugation, ζ ↦ ζ² = −1 − ζ.
  EisensteinInt conj() const { return {a_ - b_, -b_}; }
  mpz_class norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
  bool is_unit() const { return norm() == 1; }
  // Throws NotAUnit unless norm() == 1.
  EisensteinInt unit_inverse() const;

  EisensteinInt operator-() const { return {-a_, -b_}; }
  EisensteinInt& operator+=(EisensteinInt const& y);
  EisensteinInt& operator-=(EisensteinInt const& y);
  EisensteinInt& operator*=(EisensteinInt const& y);

  friend EisensteinInt operator+(EisensteinInt x, EisensteinInt const& y) { return x += y; }
  friend EisensteinInt operator-(EisensteinInt x, EisensteinInt const& y) { return x -= y; }
  friend EisensteinInt operator*(EisensteinInt const& x, EisensteinInt const& y);
  friend bool operator==(EisensteinInt const& x, EisensteinInt const& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string() const;

 private:
  mpz_class a_ = 0;
  mpz_class b_ = 0;
};

std::ostream& operator<<(std::ostream& os, EisensteinInt const& x);

// The six units ±1, ±ζ, ±ζ² in a fixed order.
std::array<EisensteinInt, 6> const& eisenstein_units();

// A 2×2 matrix over Z[ζ], stored row-major.
class MatZ2 {
 public:
  MatZ2() = default;
  MatZ2(EisensteinInt a00, EisensteinInt a01, EisensteinInt a10, EisensteinInt a11)
      : e_{std::move(a00), std::move(a01), std::move(a10), std::move(a11)} {}

  static MatZ2 identity() { return {1, 0, 0, 1}; }

  EisensteinInt const& operator()(std::size_t r, std::size_t c) const { return e_[2 * r + c]; }
  EisensteinInt& operator()(std::size_t r, std::size_t c) { return e_[2 * r + c]; }
  std::array<EisensteinInt, 4> const& entries() const noexcept { return e_; }

  EisensteinInt det() const;
  bool in_gl2() const { return det().is_unit(); }
  bool is_identity() const { return *this == identity(); }

  friend MatZ2 operator*(MatZ2 const& x, MatZ2 const& y);
  friend bool operator==(MatZ2 const&, MatZ2 const&) = default;

 private:
  std::array<EisensteinInt, 4> e_{};
};

std::ostream& operator<<(std::ostream& os, MatZ2 const& m);

inline MatZ2 mat_mul(MatZ2 const& x, MatZ2 const& y) { return x * y; }
inline EisensteinInt mat_det(MatZ2 const& x) { return x.det(); }
// Adjugate times the inverse of the unit determinant; throws NotAUnit.
MatZ2 mat_inv(MatZ2 const& x);
// x^k by repeated squaring, negative k through mat_inv.
MatZ2 mat_pow(MatZ2 const& x, long k);

// Product of the letters of `word` in order, letter (g, ±1) contributing
// images[g]^{±1}. Runs of equal letters are raised by mat_pow.
MatZ2 evaluate_matrix_word(Word const& word, std::span<MatZ2 const> images);

// Named variant: every symbol of `alphabet` used by `word` must have an
// image in `images`, otherwise UnknownSymbol.
struct NamedMatrix {
  std::string name;
  MatZ2 matrix;
};
MatZ2 evaluate_matrix_word(Word const& word, Alphabet const& alphabet,
                           std::span<NamedMatrix const> images);

}  // namespace coindex
