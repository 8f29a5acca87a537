#include "coindex/dataset.hpp"

#include <fstream>

#include "coindex/errors.hpp"

namespace coindex {

namespace {

using Z = EisensteinInt;

Z zz(long x, long y) { return Z::from_zeta_zeta2(x, y); }

Dataset make_builtin() {
  Z const zeta = Z::zeta();
  Z const zeta2 = Z::zeta_power(2);

  Dataset d;
  d.name = kBuiltinDatasetName;
  d.gamma_gens = {
      {"t", MatZ2(1, 1, 0, 1)},
      {"u", MatZ2(1, zeta, 0, 1)},
      {"j", MatZ2(-1, 0, 0, -1)},
      {"l", MatZ2(zeta2, 0, 0, zeta)},
      {"a", MatZ2(0, -1, 1, 0)},
      {"w", MatZ2(-zeta, 0, 0, 1)},
  };
  d.s_gens = {
      {"m1", MatZ2(zz(0, 97), zz(-112, -56), zz(112, 56), zz(0, 97))},
      {"m2", MatZ2(zz(56, 41), zz(56, 112), zz(56, 112), zz(-56, 153))},
      {"m3", MatZ2(zz(56, 209), zz(-56, 56), zz(-56, 56), zz(-56, -15))},
      {"mi", MatZ2(0, 1, -1, 0)},
      {"mj", MatZ2(zeta, zeta2, zeta2, -zeta)},
      {"mt", MatZ2(zeta, 0, 0, zeta)},
  };

  Alphabet const gamma{"t", "u", "j", "l", "a", "w"};
  std::vector<std::string> const relations{
      "t*u = u*t",          "j^2",
      "t*j = j*t",          "u*j = j*u",
      "l*j = j*l",          "a*j = j*a",
      "l^3",                "l^-1*t*l = t^-1*u^-1",
      "l^-1*u*l = t",       "a^2 = j",
      "(a*l)^2 = j",        "(t*a)^3 = j",
      "(u*a*l)^3 = j",      "w*j = j*w",
      "w^6",                "w*t*w^-1 = u^-1",
      "w*u*w^-1 = t*u",     "w*a*w^-1 = j*l^2*a",
      "w*l = l*w",
  };
  d.presentation = Presentation::parse(gamma, relations);

  auto named = [&gamma](std::string name, std::string text) {
    Word w = parse_word(text, gamma);
    return NamedWord{std::move(name), std::move(text), std::move(w)};
  };
  d.s_words = {
      named("m1", "w*(tawt)^-8/w"),
      named("m2", "w^-1*a*w^-1*(t^-1*w^-1*t^-1*a^-1*t*w*t*a^-1)^3*t^-1*w^-1*t^-1*a^-1*t*w*t"),
      named("m3", "w^-1*a^-1*w^-1*(a^-1*t*w*t*a^-1*t^-1*w^-1*t^-1)^4*a^-1"),
      named("mi", "a^-1"),
      named("mj", "w^2*a^-1*t^-1*w^-1*a^-1*t^-1/w"),
      named("mt", "(w/a)^2"),
  };
  d.eliminations = {
      named("u", "w*t^-1*w^-1"),
      named("j", "a^2"),
      named("l", "w^-1*a^-1*w*a^-1"),
  };
  return d;
}

json integer_to_json(mpz_class const& v) {
  if (v.fits_slong_p()) {
    return v.get_si();
  }
  return v.get_str();
}

mpz_class integer_from_json(json const& j) {
  if (j.is_number_integer()) {
    return mpz_class(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0) {
      throw DatasetError("not an integer: " + j.dump());
    }
    return v;
  }
  throw DatasetError("expected integer, got " + j.dump());
}

std::vector<NamedMatrix> matrices_from_json(json const& j, char const* what) {
  if (!j.is_object()) {
    throw DatasetError(std::string("'") + what + "' must be an object of named matrices");
  }
  std::vector<NamedMatrix> out;
  for (auto const& [name, m] : j.items()) {
    out.push_back({name, matz2_from_json(m)});
  }
  return out;
}

json matrices_to_json(std::vector<NamedMatrix> const& ms) {
  json j = json::object();
  for (auto const& [name, m] : ms) {
    j[name] = to_json(m);
  }
  return j;
}

}  // namespace

Alphabet Dataset::s_alphabet() const {
  std::vector<std::string> names;
  names.reserve(s_gens.size());
  for (auto const& g : s_gens) {
    names.push_back(g.name);
  }
  return Alphabet(std::move(names));
}

Dataset const& builtin_dataset() {
  static Dataset const d = make_builtin();
  return d;
}

json to_json(EisensteinInt const& x) { return json::array({integer_to_json(x.a()), integer_to_json(x.b())}); }

json to_json(MatZ2 const& m) {
  return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                      json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

EisensteinInt eisenstein_from_json(json const& j) {
  if (!j.is_array() || j.size() != 2) {
    throw DatasetError("Eisenstein integer must be [a, b], got " + j.dump());
  }
  return {integer_from_json(j[0]), integer_from_json(j[1])};
}

MatZ2 matz2_from_json(json const& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2) {
    throw DatasetError("matrix must be a row-major 2x2 array, got " + j.dump());
  }
  return {eisenstein_from_json(j[0][0]), eisenstein_from_json(j[0][1]),
          eisenstein_from_json(j[1][0]), eisenstein_from_json(j[1][1])};
}

json to_json(FqElt x, FieldDesc const& f) {
  if (f.degree() == 1) {
    return json::array({x.c0});
  }
  return json::array({x.c0, x.c1});
}

json to_json(MatFq2 const& m, FieldDesc const& f) {
  return json::array({json::array({to_json(m.e[0], f), to_json(m.e[1], f)}),
                      json::array({to_json(m.e[2], f), to_json(m.e[3], f)})});
}

json presentation_to_json(Presentation const& p) {
  json rels = json::array();
  for (auto const& r : p.relators()) {
    rels.push_back(format_word(r, p.generators()));
  }
  return {{"generators", p.generators().names()}, {"relators", rels}};
}

Presentation presentation_from_json(json const& j) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("relators")) {
    throw DatasetError("presentation needs 'generators' and 'relators'");
  }
  Alphabet gens(j.at("generators").get<std::vector<std::string>>());
  auto rels = j.at("relators").get<std::vector<std::string>>();
  return Presentation::parse(std::move(gens), rels);
}

json dataset_to_json(Dataset const& d) {
  json words = json::object();
  for (auto const& w : d.s_words) {
    words[w.name] = w.text;
  }
  json elim = json::object();
  for (auto const& e : d.eliminations) {
    elim[e.name] = e.text;
  }
  return {{"name", d.name},
          {"gamma_gens", matrices_to_json(d.gamma_gens)},
          {"s_gens", matrices_to_json(d.s_gens)},
          {"presentation", presentation_to_json(d.presentation)},
          {"s_words", words},
          {"eliminations", elim}};
}

Dataset dataset_from_json(json const& j) {
  if (!j.is_object()) {
    throw DatasetError("dataset must be a JSON object");
  }
  for (char const* key : {"gamma_gens", "s_gens", "presentation", "s_words"}) {
    if (!j.contains(key)) {
      throw DatasetError(std::string("dataset is missing '") + key + "'");
    }
  }
  Dataset d;
  d.name = j.value("name", "unnamed");
  d.gamma_gens = matrices_from_json(j.at("gamma_gens"), "gamma_gens");
  d.s_gens = matrices_from_json(j.at("s_gens"), "s_gens");
  d.presentation = presentation_from_json(j.at("presentation"));
  Alphabet const gamma = d.presentation.generators();
  for (auto const& g : d.gamma_gens) {
    gamma.index(g.name);
  }
  if (d.gamma_gens.size() != gamma.size()) {
    throw DatasetError("gamma_gens must give one matrix per presentation generator");
  }
  for (auto const& [name, text] : j.at("s_words").items()) {
    std::string const t = text.get<std::string>();
    d.s_words.push_back({name, t, parse_word(t, gamma)});
  }
  if (j.contains("eliminations")) {
    for (auto const& [name, text] : j.at("eliminations").items()) {
      std::string const t = text.get<std::string>();
      d.eliminations.push_back({name, t, parse_word(t, gamma)});
    }
  }
  if (d.s_words.size() != d.s_gens.size()) {
    throw DatasetError("s_words and s_gens must name the same generators");
  }
  for (std::size_t i = 0; i < d.s_gens.size(); ++i) {
    if (d.s_words[i].name != d.s_gens[i].name) {
      throw DatasetError("s_words and s_gens must list the same names in the same order");
    }
  }
  d.s_alphabet();
  return d;
}

Dataset load_dataset(std::string const& source) {
  if (source.empty() || source == "builtin" || source == kBuiltinDatasetName) {
    return builtin_dataset();
  }
  std::ifstream in(source);
  if (!in) {
    throw DatasetError("cannot open dataset file '" + source + "'");
  }
  try {
    return dataset_from_json(json::parse(in));
  } catch (json::exception const& e) {
    throw DatasetError("malformed dataset '" + source + "': " + e.what());
  }
}

ReducedPresentation reduce_presentation(Dataset const& d) {
  Alphabet const full = d.presentation.generators();
  Presentation p = d.presentation;
  // images[g] is the current expression of full generator g over p's alphabet.
  std::vector<Word> images;
  for (std::uint32_t g = 0; g < full.size(); ++g) {
    images.push_back(Word{Letter{g, 1}});
  }
  for (auto const& e : d.eliminations) {
    Alphabet const before = p.generators();
    Word def = substitute(e.word, images);
    p = tietze_eliminate(p, e.name, def);
    Alphabet const& after = p.generators();
    std::size_t const removed = before.index(e.name);
    std::vector<Word> step(before.size());
    for (std::uint32_t g = 0; g < before.size(); ++g) {
      step[g] = g == removed ? translate(def, before, after)
                             : Word{Letter{static_cast<std::uint32_t>(after.index(before.name(g))), 1}};
    }
    for (auto& img : images) {
      img = substitute(img, step);
    }
  }
  return {std::move(p), std::move(images)};
}

DatasetCheck verify_dataset(Dataset const& d) {
  DatasetCheck c;
  Alphabet const gamma = d.gamma_alphabet();
  for (auto const& g : d.gamma_gens) {
    c.determinants_ok &= g.matrix.in_gl2();
  }
  for (auto const& g : d.s_gens) {
    c.determinants_ok &= g.matrix.in_gl2();
  }
  for (std::size_t i = 0; i < d.s_words.size(); ++i) {
    MatZ2 const m = evaluate_matrix_word(d.s_words[i].word, gamma, d.gamma_gens);
    if (!(m == d.s_gens[i].matrix)) {
      c.word_mismatches.push_back(d.s_words[i].name);
    }
  }
  for (std::size_t i = 0; i < d.presentation.relator_count(); ++i) {
    if (!evaluate_matrix_word(d.presentation.relators()[i], gamma, d.gamma_gens).is_identity()) {
      c.failing_relators.push_back(i);
    }
  }
  ReducedPresentation const r = reduce_presentation(d);
  c.reduced_generator_count = r.presentation.generator_count();
  c.reduced_relator_count = r.presentation.relator_count();
  for (std::size_t i = 0; i < r.presentation.relator_count(); ++i) {
    if (!evaluate_matrix_word(r.presentation.relators()[i], r.presentation.generators(),
                              d.gamma_gens)
             .is_identity()) {
      c.failing_reduced_relators.push_back(i);
    }
  }
  return c;
}

}  // namespace coindex
