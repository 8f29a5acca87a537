#include "coindex/eisenstein.hpp"

#include <ostream>
#include <sstream>

#include "coindex/errors.hpp"

namespace coindex {

EisensteinInt EisensteinInt::zeta_power(long k) {
  switch (((k % 3) + 3) % 3) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    default:
      return {-1, -1};
  }
}

EisensteinInt EisensteinInt::from_zeta_zeta2(long x, long y) {
  // x·ζ + y·(−1 − ζ)
  return {mpz_class(-y), mpz_class(x) - y};
}

EisensteinInt EisensteinInt::unit_inverse() const {
  if (!is_unit()) {
    throw NotAUnit(to_string() + " is not a unit of Z[zeta]");
  }
  return conj();
}

EisensteinInt& EisensteinInt::operator+=(EisensteinInt const& y) {
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

EisensteinInt& EisensteinInt::operator-=(EisensteinInt const& y) {
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

EisensteinInt& EisensteinInt::operator*=(EisensteinInt const& y) {
  *this = *this * y;
  return *this;
}

EisensteinInt operator*(EisensteinInt const& x, EisensteinInt const& y) {
  // (a + bζ)(c + dζ) = (ac − bd) + (ad + bc − bd)ζ
  mpz_class bd = x.b_ * y.b_;
  return {x.a_ * y.a_ - bd, x.a_ * y.b_ + x.b_ * y.a_ - bd};
}

std::string EisensteinInt::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, EisensteinInt const& x) {
  return os << '(' << x.a() << ", " << x.b() << ')';
}

std::array<EisensteinInt, 6> const& eisenstein_units() {
  static std::array<EisensteinInt, 6> const units{
      EisensteinInt(1, 0),  EisensteinInt(-1, 0), EisensteinInt(0, 1),
      EisensteinInt(0, -1), EisensteinInt(-1, -1), EisensteinInt(1, 1)};
  return units;
}

EisensteinInt MatZ2::det() const {
  return e_[0] * e_[3] - e_[1] * e_[2];
}

MatZ2 operator*(MatZ2 const& x, MatZ2 const& y) {
  return {x.e_[0] * y.e_[0] + x.e_[1] * y.e_[2], x.e_[0] * y.e_[1] + x.e_[1] * y.e_[3],
          x.e_[2] * y.e_[0] + x.e_[3] * y.e_[2], x.e_[2] * y.e_[1] + x.e_[3] * y.e_[3]};
}

std::ostream& operator<<(std::ostream& os, MatZ2 const& m) {
  return os << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", " << m(1, 1)
            << "]]";
}

MatZ2 mat_inv(MatZ2 const& x) {
  EisensteinInt d = x.det();
  if (!d.is_unit()) {
    throw NotAUnit("determinant " + d.to_string() + " is not a unit; matrix is not in GL2");
  }
  EisensteinInt di = d.conj();
  return {x(1, 1) * di, -(x(0, 1) * di), -(x(1, 0) * di), x(0, 0) * di};
}

MatZ2 mat_pow(MatZ2 const& x, long k) {
  MatZ2 base = k < 0 ? mat_inv(x) : x;
  unsigned long e = k < 0 ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
  MatZ2 result = MatZ2::identity();
  while (e != 0) {
    if (e & 1U) {
      result = result * base;
    }
    e >>= 1U;
    if (e != 0) {
      base = base * base;
    }
  }
  return result;
}

MatZ2 evaluate_matrix_word(Word const& word, std::span<MatZ2 const> images) {
  MatZ2 result = MatZ2::identity();
  std::size_t i = 0;
  while (i < word.size()) {
    Letter x = word[i];
    if (x.gen >= images.size()) {
      throw UnknownSymbol("generator index " + std::to_string(x.gen) + " has no image");
    }
    std::size_t j = i;
    while (j < word.size() && word[j] == x) {
      ++j;
    }
    long run = static_cast<long>(j - i);
    result = result * mat_pow(images[x.gen], x.sign * run);
    i = j;
  }
  return result;
}

MatZ2 evaluate_matrix_word(Word const& word, Alphabet const& alphabet,
                           std::span<NamedMatrix const> images) {
  std::vector<MatZ2> by_index(alphabet.size());
  std::vector<bool> have(alphabet.size(), false);
  for (auto const& [name, m] : images) {
    if (auto i = alphabet.find(name)) {
      by_index[*i] = m;
      have[*i] = true;
    }
  }
  for (Letter x : word) {
    if (x.gen >= alphabet.size() || !have[x.gen]) {
      throw UnknownSymbol("no matrix given for symbol '" +
                          (x.gen < alphabet.size() ? alphabet.name(x.gen) : std::to_string(x.gen)) +
                          "'");
    }
  }
  return evaluate_matrix_word(word, by_index);
}

}  // namespace coindex
