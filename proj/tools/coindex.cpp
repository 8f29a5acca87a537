// coindex: command-line front end for the congruence and kernel-rank
// pipeline. Exit codes: 0 result produced, 2 usage error, 3 stage failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coindex/congruence.hpp"
#include "coindex/dataset.hpp"
#include "coindex/errors.hpp"
#include "coindex/pipeline.hpp"
#include "coindex/toddcoxeter.hpp"

namespace {

using namespace coindex;

constexpr int kUsageError = 2;
constexpr int kStageFailure = 3;

struct StageFailure : std::runtime_error {
  StageFailure(std::string const& stage, std::string const& what)
      : std::runtime_error("[" + stage + "] " + what) {}
};

enum class Format { json, text };

void emit(json const& j, std::string const& text, Format fmt, std::string const& path) {
  std::string const body = fmt == Format::json ? j.dump(2) + "\n" : text;
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw StageFailure("output", "cannot write " + path);
  }
  out << body;
}

template <class F>
auto staged(std::string const& stage, F&& body) {
  try {
    return body();
  } catch (std::exception const& e) {
    throw StageFailure(stage, e.what());
  }
}

std::string matrix_text(MatZ2 const& m) {
  std::ostringstream os;
  os << m << "\n";
  return os.str();
}

std::string fq_matrix_text(MatFq2 const& m, FieldDesc const& f) {
  std::ostringstream os;
  json j = to_json(m, f);
  os << j.dump() << "\n";
  return os.str();
}

MatZ2 lookup_matrix(Dataset const& d, std::string const& name) {
  for (auto const* list : {&d.gamma_gens, &d.s_gens}) {
    for (auto const& g : *list) {
      if (g.name == name) {
        return g.matrix;
      }
    }
  }
  throw UnknownSymbol("no generator named '" + name + "' in dataset " + d.name);
}

std::vector<std::string> split(std::string const& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) {
      out.push_back(cur);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruence images, coset enumeration and kernel abelianization for subgroups of GL2(Z[zeta3])"};
  app.require_subcommand(1);

  std::string dataset_src = "builtin";
  std::string format_name = "json";
  std::string output;
  unsigned threads = 1;
  app.add_option("--dataset", dataset_src, "Dataset JSON path, or 'builtin'")->capture_default_str();
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--report,-o", output, "Write output to this file instead of stdout");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Evaluate a word in the ambient generators as a matrix over Z[zeta]");
  std::string word_text;
  eval->add_option("--word", word_text, "Word, e.g. \"(w/a)^2\"")->required();

  auto* reduce = app.add_subcommand("reduce", "Reduce a named generator matrix modulo a prime");
  std::string gen_name;
  std::uint32_t reduce_p = 0;
  reduce->add_option("--gen", gen_name, "Generator name from the dataset")->required();
  reduce->add_option("--p", reduce_p, "Prime modulus")->required();

  auto* bound = app.add_subcommand("bound", "Congruence index bounds over a set of primes");
  std::string moduli_text = "2";
  bound->add_option("--moduli", moduli_text, "Comma-separated primes")->capture_default_str();

  auto* tc = app.add_subcommand("tc", "Bounded Todd-Coxeter enumeration");
  std::size_t tc_limit = 1'000'000;
  std::string tc_gens;
  std::string tc_rels;
  std::string tc_sub;
  tc->add_option("--tc-limit,--limit", tc_limit, "Maximum number of cosets")->capture_default_str();
  tc->add_option("--generators", tc_gens, "Comma-separated generator names (default: the dataset's reduced presentation)");
  tc->add_option("--relators", tc_rels, "Semicolon-separated relators over --generators");
  tc->add_option("--subgroup", tc_sub, "Semicolon-separated subgroup words (default: the dataset's S)");

  auto* certify = app.add_subcommand("certify", "Run the full infinite-index pipeline");
  CertifyConfig cfg;
  std::string probe_text = "2";
  bool quiet = false;
  bool no_timings = false;
  certify->add_option("--kernel-modulus", cfg.kernel_modulus, "Prime whose congruence kernel is used")->capture_default_str();
  certify->add_option("--moduli", probe_text, "Comma-separated probe primes (empty for none)")->capture_default_str();
  certify->add_option("--tc-limit", cfg.tc_limit, "Coset limit for enumeration of S (0 skips)")->capture_default_str();
  certify->add_flag("--skip-kernel", cfg.skip_kernel, "Only compute congruence bounds");
  certify->add_option("--simplify-threshold", cfg.simplify_threshold, "Simplify kernel presentations above this many generators")
      ->capture_default_str();
  certify->add_flag("--no-cross-check", [&](std::int64_t) { cfg.cross_check = false; }, "Skip the unsimplified rank check");
  certify->add_flag("--no-timings", no_timings, "Leave timings out of the report");
  certify->add_flag("--quiet,-q", quiet, "Do not log stages to stderr");

  auto* dump = app.add_subcommand("dataset", "Print the dataset as JSON");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  Format const fmt = format_name == "text" ? Format::text : Format::json;
  auto parse_primes = [](std::string const& text) {
    std::vector<std::uint32_t> out;
    for (auto const& part : split(text, ',')) {
      std::size_t used = 0;
      unsigned long v = std::stoul(part, &used);
      if (used != part.size()) {
        throw CLI::ValidationError("--moduli", "not an integer: " + part);
      }
      out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
  };

  try {
    Dataset const data = staged("dataset", [&] { return load_dataset(dataset_src); });

    if (*eval) {
      MatZ2 m = staged("eval", [&] {
        Word w = parse_word(word_text, data.gamma_alphabet());
        return evaluate_matrix_word(w, data.gamma_alphabet(), data.gamma_gens);
      });
      emit(json{{"word", word_text}, {"matrix", to_json(m)}}, matrix_text(m), fmt, output);
    } else if (*reduce) {
      auto [f, img] = staged("reduce", [&] {
        FieldDesc f = make_reduction(reduce_p);
        return std::pair{f, reduce_matrix(lookup_matrix(data, gen_name), f)};
      });
      emit(json{{"gen", gen_name}, {"p", reduce_p}, {"degree", f.degree()}, {"matrix", to_json(img, f)}},
           fq_matrix_text(img, f), fmt, output);
    } else if (*bound) {
      std::vector<std::uint32_t> primes;
      try {
        primes = parse_primes(moduli_text);
      } catch (std::exception const& e) {
        std::cerr << "error: --moduli: " << e.what() << "\n";
        return kUsageError;
      }
      MultiModulusBound b = staged("bounds", [&] {
        return multi_modulus_bound(primes, data.s_gens, data.gamma_gens, threads);
      });
      json rows = json::array();
      std::ostringstream text;
      text << "p\tdegree\t|phi(G)|\t|phi(S)|\tbound\n";
      for (auto const& m : b.per_modulus) {
        rows.push_back({{"p", m.field.p()},
                        {"degree", m.field.degree()},
                        {"order_gamma", mpz_to_json(m.order_gamma)},
                        {"order_s", mpz_to_json(m.order_s)},
                        {"bound", mpz_to_json(m.index_bound)}});
        text << m.field.p() << "\t" << m.field.degree() << "\t" << m.order_gamma << "\t" << m.order_s << "\t"
             << m.index_bound << "\n";
      }
      text << "combined\t\t" << b.order_gamma << "\t" << b.order_s << "\t" << b.index << "\n";
      emit(json{{"moduli", rows},
                {"combined", {{"order_gamma", mpz_to_json(b.order_gamma)},
                              {"order_s", mpz_to_json(b.order_s)},
                              {"bound", mpz_to_json(b.index)}}}},
           text.str(), fmt, output);
    } else if (*tc) {
      TCResult r = staged("todd-coxeter", [&] {
        Presentation p;
        std::vector<Word> sub;
        if (tc_gens.empty()) {
          ReducedPresentation red = reduce_presentation(data);
          p = red.presentation;
          if (tc_sub.empty()) {
            for (auto const& w : data.s_words) {
              sub.push_back(red.map(w.word));
            }
          }
        } else {
          std::vector<std::string> rels = split(tc_rels, ';');
          p = Presentation::parse(Alphabet(split(tc_gens, ',')), rels);
        }
        for (auto const& s : split(tc_sub, ';')) {
          sub.push_back(parse_word(s, p.generators()));
        }
        TCConfig c;
        c.max_cosets = tc_limit;
        return coset_enumerate(p, sub, c);
      });
      std::string const status = r.completed() ? "completed" : "exceeded";
      json j{{"status", status}, {"cosets", r.cosets_defined}, {"cosets_alive", r.cosets_alive}, {"limit", tc_limit}};
      if (r.completed()) {
        j["index"] = r.index;
      }
      std::ostringstream text;
      text << status;
      if (r.completed()) {
        text << " index " << r.index;
      }
      text << " (" << r.cosets_defined << " cosets defined, limit " << tc_limit << ")\n";
      emit(j, text.str(), fmt, output);
    } else if (*certify) {
      try {
        cfg.probe_moduli = parse_primes(probe_text);
      } catch (std::exception const& e) {
        std::cerr << "error: --moduli: " << e.what() << "\n";
        return kUsageError;
      }
      cfg.dataset = data;
      cfg.threads = threads;
      if (!quiet) {
        cfg.log = [](std::string_view line) { std::cerr << line << "\n"; };
      }
      CertificateReport r = certify_infinite_index(cfg);
      emit(report_to_json(r, !no_timings), report_to_text(r), fmt, output);
      if (!r.errors.empty()) {
        for (auto const& e : r.errors) {
          std::cerr << "error: [" << e.stage << "] " << e.message << "\n";
        }
        return kStageFailure;
      }
    } else if (*dump) {
      json j = dataset_to_json(data);
      emit(j, j.dump(2) + "\n", fmt, output);
    }
  } catch (StageFailure const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStageFailure;
  }
  return 0;
}
