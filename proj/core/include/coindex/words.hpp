#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coindex {

// Ordered set of generator names. Names are identifiers
// ([A-Za-z_][A-Za-z0-9_]*) and must be distinct.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<std::string> names)
      : Alphabet(std::vector<std::string>(names)) {}
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  std::string const& name(std::size_t i) const { return names_.at(i); }
  std::vector<std::string> const& names() const noexcept { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws UnknownSymbol.
  std::size_t index(std::string_view name) const;

  friend bool operator==(Alphabet const& x, Alphabet const& y) { return x.names_ == y.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

struct Letter {
  std::uint32_t gen = 0;
  std::int8_t sign = 1;  // +1 or -1

  Letter inverse() const { return {gen, static_cast<std::int8_t>(-sign)}; }
  friend bool operator==(Letter, Letter) = default;
  friend auto operator<=>(Letter, Letter) = default;
};

// A word in a free group: a sequence of signed generator indices. Words are
// not reduced unless a function says so.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  // g^k as a word; k may be negative or zero.
  static Word power(std::uint32_t gen, long k);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  std::vector<Letter> const& letters() const noexcept { return letters_; }

  void push_back(Letter x) { letters_.push_back(x); }
  Word& append(Word const& w);
  Word inverse() const;

  friend Word operator*(Word x, Word const& y) { return x.append(y); }
  friend bool operator==(Word const&, Word const&) = default;
  friend auto operator<=>(Word const&, Word const&) = default;

 private:
  std::vector<Letter> letters_;
};

// Number of occurrences of each generator counted with sign.
struct ExponentVector {
  std::vector<std::int64_t> entries;

  friend bool operator==(ExponentVector const&, ExponentVector const&) = default;
};

// Grammar:
//   expr   := term (('*' | '/')? term)*
//   term   := factor ('^' signed-int)?
//   factor := symbol | '1' | '(' expr ')'
// 'x/y' is x·y^-1 and juxtaposition is multiplication. An identifier that
// is not a generator name is split into single-character generators, so
// "(tawt)" reads as t·a·w·t. Exponents may be braced: "w^{-1}". Returns the
// letter sequence unreduced. Throws SyntaxError or UnknownSymbol.
Word parse_word(std::string_view text, Alphabet const& alphabet);

// Prints runs of a repeated letter as g^k, letters separated by '*'; the
// empty word prints as "1". Output is accepted by parse_word.
std::string format_word(Word const& w, Alphabet const& alphabet);

Word free_reduce(Word const& w);
// Free reduction followed by removal of inverse pairs at the two ends.
Word cyclic_reduce(Word const& w);
// Replace every letter g^{±1} by images[g]^{±1}, then freely reduce.
// Throws UnknownSymbol if some letter has no image.
Word substitute(Word const& w, std::span<Word const> images);
ExponentVector exponent_vector(Word const& w, std::size_t generator_count);
// Re-express a word over `from` as the same word over `to` by name.
Word translate(Word const& w, Alphabet const& from, Alphabet const& to);

// A finite presentation. Relators are held freely and cyclically reduced;
// relators that reduce to the empty word are dropped.
class Presentation {
 public:
  Presentation() = default;
  Presentation(Alphabet generators, std::vector<Word> relators);
  // Relators given as word strings in the parse_word grammar. A string of
  // the form "lhs = rhs" is read as the relator lhs·rhs^-1.
  static Presentation parse(Alphabet generators, std::span<std::string const> relators);

  Alphabet const& generators() const noexcept { return generators_; }
  std::vector<Word> const& relators() const noexcept { return relators_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  std::size_t relator_count() const noexcept { return relators_.size(); }
  std::size_t total_length() const;

 private:
  Alphabet generators_;
  std::vector<Word> relators_;
};

// Parse "lhs = rhs" or a plain relator into a relator word.
Word parse_relator(std::string_view text, Alphabet const& alphabet);

// Remove generator `gen` using gen = definition. Throws
// SelfReferentialDefinition if the definition mentions gen and
// UnknownSymbol if gen is not a generator.
Presentation tietze_eliminate(Presentation const& p, std::string_view gen, Word const& definition);

struct SimplifyOptions {
  // Stop after this many generator eliminations.
  std::size_t max_eliminations = static_cast<std::size_t>(-1);
  // Never eliminate through a definition longer than this.
  std::size_t max_definition_length = 100;
  // Refuse eliminations that would push total relator length above this
  // percentage of the input's total length; 0 disables the check.
  std::size_t expand_limit_percent = 0;
  // Rounds of length-reducing substring substitution between elimination
  // phases, and the longest relator used as a substitution rule.
  std::size_t substitution_rounds = 2;
  std::size_t substitution_max_rule_length = 12;
  // Substring substitution is skipped on presentations with more relators.
  std::size_t substitution_max_relators = 5000;
};

// An eliminated generator and the word it was replaced by, both in the
// input presentation's generator numbering. Each definition only involves
// generators that were still present when it was applied.
struct Elimination {
  std::uint32_t gen;
  Word definition;
};

struct SimplifyTrace {
  Presentation result;
  std::vector<Elimination> eliminations;
  // Input generator index → index in result, or -1 when eliminated.
  std::vector<std::int64_t> kept;

  // Image in result's generators of a word over the input generators.
  Word map_word(Word const& w) const;
  // Same map on exponent vectors (linear, so no word growth).
  ExponentVector map_exponents(ExponentVector const& v) const;
};

SimplifyTrace simplify_presentation_traced(Presentation const& p, SimplifyOptions const& opts = {});
Presentation simplify_presentation(Presentation const& p, SimplifyOptions const& opts = {});

}  // namespace coindex
