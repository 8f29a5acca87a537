#include "coindex/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "coindex/errors.hpp"

namespace coindex {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool valid_name(std::string const& s) {
  if (s.empty() || !is_ident_start(s[0])) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), is_ident_char);
}

class WordParser {
 public:
  WordParser(std::string_view text, Alphabet const& alphabet) : text_(text), alphabet_(alphabet) {}

  Word parse() {
    skip_space();
    if (at_end()) {
      return {};
    }
    Word w = expr();
    skip_space();
    if (!at_end()) {
      throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return w;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }

  bool starts_factor(char c) const { return c == '(' || is_ident_start(c) || c == '1'; }

  Word expr() {
    Word w = term();
    for (;;) {
      skip_space();
      char c = peek();
      if (c == '*') {
        ++pos_;
        w.append(term());
      } else if (c == '/') {
        ++pos_;
        w.append(term().inverse());
      } else if (starts_factor(c)) {
        w.append(term());
      } else {
        return w;
      }
    }
  }

  // A factor together with whether it came from splitting a run of
  // juxtaposed single-character symbols; an exponent then binds to the
  // last letter only.
  struct Factor {
    Word word;
    bool split = false;
  };

  Word term() {
    Factor f = factor();
    skip_space();
    if (peek() != '^') {
      return std::move(f.word);
    }
    ++pos_;
    long k = exponent();
    if (f.split && f.word.size() > 1) {
      Word head(std::vector<Letter>(f.word.begin(), f.word.end() - 1));
      Letter last = f.word[f.word.size() - 1];
      Word tail = Word::power(last.gen, k * last.sign);
      return head.append(tail);
    }
    return power(f.word, k);
  }

  static Word power(Word const& w, long k) {
    Word base = k < 0 ? w.inverse() : w;
    Word out;
    for (long i = 0; i < std::labs(k); ++i) {
      out.append(base);
    }
    return out;
  }

  long exponent() {
    skip_space();
    bool braced = false;
    if (peek() == '{') {
      braced = true;
      ++pos_;
      skip_space();
    }
    long sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      skip_space();
    }
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
    if (start == pos_) {
      throw SyntaxError("expected integer exponent", pos_);
    }
    if (pos_ - start > 9) {
      throw SyntaxError("exponent too large", start);
    }
    long k = std::stol(std::string(text_.substr(start, pos_ - start)));
    if (braced) {
      skip_space();
      if (peek() != '}') {
        throw SyntaxError("expected '}'", pos_);
      }
      ++pos_;
    }
    return sign * k;
  }

  Factor factor() {
    skip_space();
    char c = peek();
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      skip_space();
      Word w = peek() == ')' ? Word{} : expr();
      skip_space();
      if (peek() != ')') {
        throw SyntaxError("unbalanced '(' opened at " + std::to_string(open), pos_);
      }
      ++pos_;
      return {std::move(w), false};
    }
    if (c == '1') {
      ++pos_;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
        throw SyntaxError("integer literal other than 1", pos_);
      }
      return {};
    }
    if (!is_ident_start(c)) {
      if (at_end()) {
        throw SyntaxError("unexpected end of input", pos_);
      }
      throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    }
    std::size_t start = pos_;
    while (!at_end() && is_ident_char(text_[pos_])) {
      ++pos_;
    }
    std::string_view ident = text_.substr(start, pos_ - start);
    if (auto i = alphabet_.find(ident)) {
      return {Word{Letter{static_cast<std::uint32_t>(*i), 1}}, false};
    }
    Word w;
    for (std::size_t k = 0; k < ident.size(); ++k) {
      auto i = alphabet_.find(ident.substr(k, 1));
      if (!i) {
        throw UnknownSymbol("unknown symbol '" + std::string(ident) + "' at position " +
                            std::to_string(start));
      }
      w.push_back(Letter{static_cast<std::uint32_t>(*i), 1});
    }
    return {std::move(w), true};
  }

  std::string_view text_;
  Alphabet const& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_name(names_[i])) {
      throw SyntaxError("invalid generator name '" + names_[i] + "'", 0);
    }
    if (!lookup_.emplace(names_[i], i).second) {
      throw SyntaxError("duplicate generator name '" + names_[i] + "'", 0);
    }
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t Alphabet::index(std::string_view name) const {
  if (auto i = find(name)) {
    return *i;
  }
  throw UnknownSymbol("unknown symbol '" + std::string(name) + "'");
}

Word Word::power(std::uint32_t gen, long k) {
  Word w;
  Letter x{gen, static_cast<std::int8_t>(k < 0 ? -1 : 1)};
  for (long i = 0; i < std::labs(k); ++i) {
    w.push_back(x);
  }
  return w;
}

Word& Word::append(Word const& w) {
  letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  return *this;
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(std::move(out));
}

Word parse_word(std::string_view text, Alphabet const& alphabet) {
  return WordParser(text, alphabet).parse();
}

std::string format_word(Word const& w, Alphabet const& alphabet) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    Letter x = w[i];
    if (x.gen >= alphabet.size()) {
      throw UnknownSymbol("generator index " + std::to_string(x.gen) + " out of range");
    }
    std::size_t j = i;
    while (j < w.size() && w[j] == x) {
      ++j;
    }
    long k = static_cast<long>(j - i) * x.sign;
    if (!out.empty()) {
      out += '*';
    }
    out += alphabet.name(x.gen);
    if (k != 1) {
      out += '^';
      out += std::to_string(k);
    }
    i = j;
  }
  return out;
}

Word free_reduce(Word const& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter x : w) {
    if (!stack.empty() && stack.back() == x.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word(std::move(stack));
}

Word cyclic_reduce(Word const& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  if (lo == 0) {
    return r;
  }
  return Word(std::vector<Letter>(r.begin() + static_cast<std::ptrdiff_t>(lo),
                                  r.begin() + static_cast<std::ptrdiff_t>(hi)));
}

Word substitute(Word const& w, std::span<Word const> images) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  auto push = [&stack](Letter x) {
    if (!stack.empty() && stack.back() == x.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  };
  for (Letter x : w) {
    if (x.gen >= images.size()) {
      throw UnknownSymbol("no image for generator index " + std::to_string(x.gen));
    }
    Word const& img = images[x.gen];
    if (x.sign > 0) {
      for (Letter y : img) {
        push(y);
      }
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        push(it->inverse());
      }
    }
  }
  return Word(std::move(stack));
}

ExponentVector exponent_vector(Word const& w, std::size_t generator_count) {
  ExponentVector v{std::vector<std::int64_t>(generator_count, 0)};
  for (Letter x : w) {
    if (x.gen >= generator_count) {
      throw UnknownSymbol("generator index " + std::to_string(x.gen) + " out of range");
    }
    v.entries[x.gen] += x.sign;
  }
  return v;
}

Word translate(Word const& w, Alphabet const& from, Alphabet const& to) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter x : w) {
    auto j = to.index(from.name(x.gen));
    out.push_back(Letter{static_cast<std::uint32_t>(j), x.sign});
  }
  return Word(std::move(out));
}

Presentation::Presentation(Alphabet generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  relators_.reserve(relators.size());
  for (auto const& r : relators) {
    for (Letter x : r) {
      if (x.gen >= generators_.size()) {
        throw UnknownSymbol("relator uses generator index " + std::to_string(x.gen) +
                            " outside the alphabet");
      }
    }
    Word c = cyclic_reduce(r);
    if (!c.empty()) {
      relators_.push_back(std::move(c));
    }
  }
}

Word parse_relator(std::string_view text, Alphabet const& alphabet) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    return parse_word(text, alphabet);
  }
  Word lhs = parse_word(text.substr(0, eq), alphabet);
  std::string_view rest = text.substr(eq + 1);
  if (rest.find('=') != std::string_view::npos) {
    throw SyntaxError("more than one '=' in relation", eq + 1 + rest.find('='));
  }
  return lhs.append(parse_word(rest, alphabet).inverse());
}

Presentation Presentation::parse(Alphabet generators, std::span<std::string const> relators) {
  std::vector<Word> words;
  words.reserve(relators.size());
  for (auto const& s : relators) {
    words.push_back(parse_relator(s, generators));
  }
  return Presentation(std::move(generators), std::move(words));
}

std::size_t Presentation::total_length() const {
  std::size_t n = 0;
  for (auto const& r : relators_) {
    n += r.size();
  }
  return n;
}

Presentation tietze_eliminate(Presentation const& p, std::string_view gen, Word const& definition) {
  std::size_t const removed = p.generators().index(gen);
  std::size_t const n = p.generator_count();
  for (Letter x : definition) {
    if (x.gen >= n) {
      throw UnknownSymbol("definition uses generator index " + std::to_string(x.gen) +
                          " outside the alphabet");
    }
    if (x.gen == removed) {
      throw SelfReferentialDefinition("definition of '" + std::string(gen) +
                                      "' mentions '" + std::string(gen) + "'");
    }
  }
  std::vector<std::string> names;
  std::vector<std::uint32_t> renumber(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    if (g != removed) {
      renumber[g] = static_cast<std::uint32_t>(names.size());
      names.push_back(p.generators().name(g));
    }
  }
  std::vector<Word> images(n);
  for (std::size_t g = 0; g < n; ++g) {
    if (g != removed) {
      images[g] = Word{Letter{renumber[g], 1}};
    }
  }
  for (Letter x : definition) {
    images[removed].push_back(Letter{renumber[x.gen], x.sign});
  }
  std::vector<Word> relators;
  relators.reserve(p.relator_count());
  for (auto const& r : p.relators()) {
    relators.push_back(substitute(r, images));
  }
  return Presentation(Alphabet(std::move(names)), std::move(relators));
}

}  // namespace coindex
