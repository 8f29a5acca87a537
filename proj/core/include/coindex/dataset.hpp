#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coindex/eisenstein.hpp"
#include "coindex/ffq.hpp"
#include "coindex/words.hpp"

namespace coindex {

using json = nlohmann::ordered_json;

struct NamedWord {
  std::string name;
  std::string text;  // as given, in the parse_word grammar
  Word word;         // parsed over the ambient alphabet
};

// The ambient group Γ = GL2(Z[ζ]) given by named generator matrices and a
// presentation on them, plus a subgroup S given both by matrices and by
// words in Γ's generators.
struct Dataset {
  std::string name;
  std::vector<NamedMatrix> gamma_gens;
  std::vector<NamedMatrix> s_gens;
  Presentation presentation;
  // s_gens[i].name ↔ s_words[i].name, in the same order.
  std::vector<NamedWord> s_words;
  // Redundant generators of `presentation` with their defining words,
  // eliminated in this order to reach a smaller presentation.
  std::vector<NamedWord> eliminations;

  Alphabet gamma_alphabet() const { return presentation.generators(); }
  Alphabet s_alphabet() const;
};

inline constexpr char const* kBuiltinDatasetName = "baechle-gl2-eisenstein";

// Γ generators t, u, j, l, a, w with the 19 relators of Swan's presentation;
// S = ⟨m1, m2, m3, mi, mj, mt⟩; eliminations u, j, l.
Dataset const& builtin_dataset();

// "builtin" (or the builtin name) or a path to a dataset JSON file.
Dataset load_dataset(std::string const& source);
Dataset dataset_from_json(json const& j);
json dataset_to_json(Dataset const& d);

json to_json(EisensteinInt const& x);
json to_json(MatZ2 const& m);
EisensteinInt eisenstein_from_json(json const& j);
MatZ2 matz2_from_json(json const& j);
json to_json(FqElt x, FieldDesc const& f);
json to_json(MatFq2 const& m, FieldDesc const& f);
json presentation_to_json(Presentation const& p);
Presentation presentation_from_json(json const& j);

// The presentation obtained by applying d.eliminations in order, and a map
// taking words over the full alphabet to words over the reduced one.
struct ReducedPresentation {
  Presentation presentation;
  std::vector<Word> images;  // image of each full-alphabet generator
  Word map(Word const& w) const { return substitute(w, images); }
};
ReducedPresentation reduce_presentation(Dataset const& d);

struct DatasetCheck {
  bool determinants_ok = true;
  std::vector<std::string> word_mismatches;  // s-gens whose word does not evaluate to it
  std::vector<std::size_t> failing_relators;  // indices into presentation.relators()
  std::vector<std::size_t> failing_reduced_relators;
  std::size_t reduced_generator_count = 0;
  std::size_t reduced_relator_count = 0;

  bool ok() const {
    return determinants_ok && word_mismatches.empty() && failing_relators.empty() &&
           failing_reduced_relators.empty();
  }
};

// Evaluates every s-word and every relator (before and after elimination)
// over the Γ generator matrices.
DatasetCheck verify_dataset(Dataset const& d);

}  // namespace coindex
