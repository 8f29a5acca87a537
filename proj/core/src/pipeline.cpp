#include "coindex/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "coindex/abelian.hpp"
#include "coindex/errors.hpp"
#include "coindex/reidemeister.hpp"
#include "coindex/toddcoxeter.hpp"

namespace coindex {

namespace {

using Clock = std::chrono::steady_clock;

class Runner {
 public:
  Runner(CertifyConfig const& cfg, CertificateReport& report) : cfg_(cfg), report_(report) {}

  void log(std::string const& line) const {
    if (cfg_.log) {
      cfg_.log(line);
    }
  }

  // Runs body under the stage name; records its error and timing.
  template <class F>
  bool stage(std::string const& name, F&& body) {
    auto const start = Clock::now();
    log("[" + name + "] start");
    bool ok = true;
    try {
      body();
    } catch (std::exception const& e) {
      report_.errors.push_back({name, e.what()});
      log("[" + name + "] error: " + e.what());
      ok = false;
    }
    double const secs = std::chrono::duration<double>(Clock::now() - start).count();
    report_.timings.push_back({name, secs});
    return ok;
  }

 private:
  CertifyConfig const& cfg_;
  CertificateReport& report_;
};

std::string str(mpz_class const& v) { return v.get_str(); }

// Generator matrices in the order of `alphabet`, looked up by name.
std::vector<MatZ2> matrices_for(Alphabet const& alphabet, std::vector<NamedMatrix> const& gens) {
  std::vector<MatZ2> out;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    auto it = std::find_if(gens.begin(), gens.end(),
                           [&](NamedMatrix const& g) { return g.name == alphabet.name(i); });
    if (it == gens.end()) {
      throw DatasetError("no matrix for generator '" + alphabet.name(i) + "'");
    }
    out.push_back(it->matrix);
  }
  return out;
}

std::vector<NamedMatrix> named_for(Alphabet const& alphabet, std::vector<NamedMatrix> const& gens) {
  std::vector<MatZ2> mats = matrices_for(alphabet, gens);
  std::vector<NamedMatrix> out;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    out.push_back({alphabet.name(i), mats[i]});
  }
  return out;
}

std::string join(std::vector<std::string> const& xs) {
  std::string out;
  for (auto const& x : xs) {
    out += (out.empty() ? "" : ", ") + x;
  }
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::infinite:
      return "infinite";
    case Verdict::bounded_below:
      return "bounded_below";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

CertificateReport certify_infinite_index(CertifyConfig const& cfg) {
  CertificateReport report;
  Runner run(cfg, report);
  unsigned const threads = std::max(1U, cfg.threads);

  Dataset data;
  ReducedPresentation reduced;
  std::vector<Word> s_images;  // S generators as words over the reduced alphabet
  bool const have_dataset = run.stage("dataset", [&] {
    data = cfg.dataset ? *cfg.dataset : load_dataset(cfg.dataset_source);
    DatasetCheck check = verify_dataset(data);
    if (!check.determinants_ok) {
      throw DatasetError("a generator matrix has non-unit determinant");
    }
    if (!check.word_mismatches.empty()) {
      throw DatasetError("words do not evaluate to their matrices: " + join(check.word_mismatches));
    }
    if (!check.failing_relators.empty() || !check.failing_reduced_relators.empty()) {
      throw DatasetError(std::to_string(check.failing_relators.size() + check.failing_reduced_relators.size()) +
                         " relators do not evaluate to the identity");
    }
    reduced = reduce_presentation(data);
    for (auto const& w : data.s_words) {
      s_images.push_back(reduced.map(w.word));
    }
    DatasetSection sec;
    sec.name = data.name;
    sec.s_words_checked = data.s_words.size();
    sec.relators_checked = data.presentation.relator_count();
    sec.reduced_generators = reduced.presentation.generator_count();
    sec.reduced_relators = reduced.presentation.relator_count();
    for (std::size_t i = 0; i < reduced.presentation.generator_count(); ++i) {
      sec.reduced_generator_names.push_back(reduced.presentation.generators().name(i));
    }
    run.log("[dataset] " + sec.name + ": " + std::to_string(sec.s_words_checked) + " words and " +
            std::to_string(sec.relators_checked) + " relators verified; reduced to " +
            std::to_string(sec.reduced_generators) + " generators, " + std::to_string(sec.reduced_relators) +
            " relators");
    report.dataset = std::move(sec);
  });
  if (!have_dataset) {
    report.verdict = Verdict::inconclusive;
    return report;
  }

  if (!cfg.probe_moduli.empty()) {
    run.stage("bounds", [&] {
      MultiModulusBound b = multi_modulus_bound(cfg.probe_moduli, data.s_gens, data.gamma_gens, threads);
      BoundsSection sec;
      for (auto const& m : b.per_modulus) {
        sec.per_modulus.push_back(
            {m.field.p(), m.field.degree(), m.field.zeta_image(), m.order_gamma, m.order_s, m.index_bound});
        run.log("[bounds] p=" + std::to_string(m.field.p()) + " |phi(G)|=" + str(m.order_gamma) +
                " |phi(S)|=" + str(m.order_s) + " bound=" + str(m.index_bound));
      }
      sec.combined_order_gamma = b.order_gamma;
      sec.combined_order_s = b.order_s;
      sec.combined_index = b.index;
      run.log("[bounds] combined |phi(G)|=" + str(b.order_gamma) + " |phi(S)|=" + str(b.order_s) +
              " index=" + str(b.index));
      report.bounds = std::move(sec);
    });
  }

  if (cfg.tc_limit > 0) {
    run.stage("todd-coxeter", [&] {
      TCConfig tcc;
      tcc.max_cosets = cfg.tc_limit;
      TCResult r = coset_enumerate(reduced.presentation, s_images, tcc);
      TcSection sec;
      sec.status = r.completed() ? "completed" : "exceeded";
      sec.index = r.index;
      sec.cosets_defined = r.cosets_defined;
      sec.cosets_alive = r.cosets_alive;
      sec.limit = cfg.tc_limit;
      run.log("[todd-coxeter] " + sec.status + " after " + std::to_string(sec.cosets_defined) +
              " cosets (limit " + std::to_string(sec.limit) + ")");
      report.tc = std::move(sec);
    });
  }

  if (!cfg.skip_kernel) {
    FieldDesc field;
    CosetTable table;
    SchreierOrbit orbit;
    bool ok = run.stage("kernel", [&] {
      field = make_reduction(cfg.kernel_modulus);
      Alphabet const& gens = reduced.presentation.generators();
      FiniteMatGroup gamma = FiniteMatGroup::reduce(named_for(gens, data.gamma_gens), field);
      table = cayley_coset_table(gamma, cfg.closure_cap);
      FiniteMatGroup s = FiniteMatGroup::reduce(data.s_gens, field);
      std::optional<std::uint64_t> order_s = closure_order(s, cfg.closure_cap);
      if (!order_s) {
        throw Exceeded("image of S exceeds the closure cap of " + std::to_string(cfg.closure_cap));
      }
      orbit = orbit_stabilizer_schreier(field, s.gens, fq_identity(field));
      KernelSection sec;
      sec.modulus = cfg.kernel_modulus;
      sec.index_of_N = mpz_class(static_cast<unsigned long>(table.rows()));
      sec.order_phi_S = mpz_class(static_cast<unsigned long>(*order_s));
      sec.orbit_length = orbit.orbit_length();
      sec.schreier_count = orbit.schreier_gens.size();
      if (sec.orbit_length != *order_s) {
        throw Error("orbit of the identity has length " + std::to_string(sec.orbit_length) + " but |phi(S)| = " +
                    std::to_string(*order_s));
      }
      run.log("[kernel] p=" + std::to_string(sec.modulus) + " [G:N]=" + str(sec.index_of_N) + " |phi(S)|=" +
              str(sec.order_phi_S) + " orbit=" + std::to_string(sec.orbit_length) +
              " schreier generators=" + std::to_string(sec.schreier_count));
      report.kernel = std::move(sec);
    });

    std::optional<RSPresentation> rs;
    if (ok) {
      ok = run.stage("presentation", [&] {
        rs = subgroup_presentation(reduced.presentation, table, threads);
        auto& sec = *report.kernel;
        sec.n_generators = rs->presentation.generator_count();
        sec.n_relators = rs->presentation.relator_count();
        std::vector<MatZ2> mats = matrices_for(reduced.presentation.generators(), data.gamma_gens);
        std::size_t const total = sec.n_relators;
        std::size_t const sample = std::min(cfg.relator_sample, total);
        for (std::size_t k = 0; k < sample; ++k) {
          std::size_t const i = k * total / sample;
          Word w = rs->expand(rs->presentation.relators()[i], table);
          if (!evaluate_matrix_word(w, mats).is_identity()) {
            ++sec.relators_failed;
          }
        }
        sec.relators_sampled = sample;
        run.log("[presentation] " + std::to_string(sec.n_generators) + " generators, " +
                std::to_string(sec.n_relators) + " relators; " + std::to_string(sample) +
                " relators evaluated, " + std::to_string(sec.relators_failed) + " failed");
        if (sec.relators_failed != 0) {
          throw Error(std::to_string(sec.relators_failed) + " sampled kernel relators are not the identity");
        }
      });
    }

    std::vector<ExponentVector> subgroup_vectors;
    if (ok) {
      ok = run.stage("rewrite", [&] {
        std::size_t const n = rs->presentation.generator_count();
        for (Word const& g : orbit.schreier_gens) {
          Word w = substitute(g, s_images);
          subgroup_vectors.push_back(exponent_vector(rs_rewrite(w, table, rs->alphabet), n));
        }
        run.log("[rewrite] " + std::to_string(subgroup_vectors.size()) + " Schreier generators rewritten");
      });
    }

    if (ok) {
      run.stage("abelian", [&] {
        Presentation const& np = rs->presentation;
        AbelianSection sec;
        sec.n_generators = np.generator_count();
        std::optional<SimplifyTrace> trace;
        if (np.generator_count() > cfg.simplify_threshold) {
          trace = simplify_presentation_traced(np, cfg.simplify);
        }
        Presentation const& small = trace ? trace->result : np;
        sec.simplified_generators = small.generator_count();
        sec.simplified_relators = small.relator_count();
        AbelianQuotient q = abelian_invariants(small);
        sec.free_rank = q.free_rank;
        sec.torsion = q.torsion;

        std::vector<ExponentVector> rows;
        for (auto const& v : subgroup_vectors) {
          rows.push_back(trace ? trace->map_exponents(v) : v);
        }
        IntMat rel = relation_matrix(small);
        IntMat sub = IntMat::from_exponent_vectors(rows, small.generator_count());
        sec.subgroup_rank = subgroup_image_rank(rel, sub);
        run.log("[abelian] simplified to " + std::to_string(sec.simplified_generators) + " generators, " +
                std::to_string(sec.simplified_relators) + " relators; free rank " +
                std::to_string(sec.free_rank) + ", " + std::to_string(sec.torsion.size()) +
                " torsion divisors; subgroup image rank " + std::to_string(sec.subgroup_rank));
        for (auto const& d : sec.torsion) {
          report.warnings.push_back("torsion divisor " + str(d) + " in the kernel abelianization");
        }

        if (cfg.cross_check) {
          IntMat direct = relation_matrix(np);
          RankCertificate cert = certified_rank(direct, threads);
          IntMat direct_sub = IntMat::from_exponent_vectors(subgroup_vectors, np.generator_count());
          std::size_t const stacked = int_rank(IntMat::stack(direct, direct_sub));
          sec.direct_relation_rank = cert.rank;
          sec.direct_free_rank = np.generator_count() - cert.rank;
          sec.direct_subgroup_rank = stacked - cert.rank;
          sec.modular_ranks = cert.modular;
          run.log("[abelian] direct relation rank " + std::to_string(cert.rank) + ", free rank " +
                  std::to_string(*sec.direct_free_rank) + ", subgroup image rank " +
                  std::to_string(*sec.direct_subgroup_rank));
          if (!cert.modular_agrees) {
            report.warnings.push_back("modular rank differs from the exact rank of the kernel relation matrix");
          }
          if (*sec.direct_free_rank != sec.free_rank || *sec.direct_subgroup_rank != sec.subgroup_rank) {
            throw Error("simplified and direct rank computations disagree");
          }
        }
        report.abelian = std::move(sec);
      });
    }
  }

  mpz_class best = 1;
  bool have_bound = false;
  if (report.bounds) {
    best = std::max(best, report.bounds->combined_index);
    for (auto const& m : report.bounds->per_modulus) {
      best = std::max(best, m.index_bound);
    }
    have_bound = true;
  }
  if (report.kernel) {
    best = std::max(best, mpz_class(report.kernel->index_of_N / report.kernel->order_phi_S));
    have_bound = true;
  }
  report.bound = best;
  if (!report.errors.empty()) {
    report.verdict = Verdict::inconclusive;
  } else if (report.abelian && report.abelian->subgroup_rank < report.abelian->free_rank) {
    report.verdict = Verdict::infinite;
  } else if (have_bound) {
    report.verdict = Verdict::bounded_below;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  run.log("verdict: " + std::string(to_string(report.verdict)) +
          (report.verdict == Verdict::bounded_below ? " " + str(best) : ""));
  return report;
}

json mpz_to_json(mpz_class const& v) {
  if (v.fits_slong_p()) {
    return json(v.get_si());
  }
  return json(v.get_str());
}

json report_to_json(CertificateReport const& r, bool include_timings) {
  json out;
  out["schema"] = r.schema;
  if (r.dataset) {
    auto const& d = *r.dataset;
    out["dataset"] = {{"name", d.name},
                      {"s_words_checked", d.s_words_checked},
                      {"relators_checked", d.relators_checked},
                      {"reduced_generators", d.reduced_generator_names},
                      {"reduced_relators", d.reduced_relators}};
  }
  if (r.bounds) {
    json mods = json::array();
    for (auto const& m : r.bounds->per_modulus) {
      FieldDesc const f = make_reduction(m.p);
      mods.push_back({{"p", m.p},
                      {"degree", m.degree},
                      {"zeta_image", to_json(m.zeta_image, f)},
                      {"order_gamma", mpz_to_json(m.order_gamma)},
                      {"order_s", mpz_to_json(m.order_s)},
                      {"index_bound", mpz_to_json(m.index_bound)}});
    }
    out["bounds"] = {{"per_modulus", mods},
                     {"combined_order_gamma", mpz_to_json(r.bounds->combined_order_gamma)},
                     {"combined_order_s", mpz_to_json(r.bounds->combined_order_s)},
                     {"combined_index", mpz_to_json(r.bounds->combined_index)}};
  }
  if (r.tc) {
    out["tc"] = {{"status", r.tc->status},
                 {"index", r.tc->index},
                 {"cosets", r.tc->cosets_defined},
                 {"cosets_alive", r.tc->cosets_alive},
                 {"limit", r.tc->limit}};
  }
  if (r.kernel) {
    auto const& k = *r.kernel;
    out["kernel"] = {{"modulus", k.modulus},
                     {"index_of_N", mpz_to_json(k.index_of_N)},
                     {"order_phi_S", mpz_to_json(k.order_phi_S)},
                     {"orbit_length", k.orbit_length},
                     {"schreier_count", k.schreier_count},
                     {"n_generators", k.n_generators},
                     {"n_relators", k.n_relators},
                     {"relators_sampled", k.relators_sampled},
                     {"relators_failed", k.relators_failed}};
  }
  if (r.abelian) {
    auto const& a = *r.abelian;
    json torsion = json::array();
    for (auto const& d : a.torsion) {
      torsion.push_back(mpz_to_json(d));
    }
    json sec = {{"n_generators", a.n_generators},
                {"simplified_generators", a.simplified_generators},
                {"simplified_relators", a.simplified_relators},
                {"free_rank", a.free_rank},
                {"torsion", torsion},
                {"subgroup_rank", a.subgroup_rank}};
    if (a.direct_relation_rank) {
      json modular = json::array();
      for (auto const& [p, rank] : a.modular_ranks) {
        modular.push_back({{"p", p}, {"rank", rank}});
      }
      sec["cross_check"] = {{"relation_rank", *a.direct_relation_rank},
                            {"free_rank", *a.direct_free_rank},
                            {"subgroup_rank", *a.direct_subgroup_rank},
                            {"modular_ranks", modular}};
    }
    out["abelian"] = std::move(sec);
  }
  json verdict = {{"kind", std::string(to_string(r.verdict))}};
  if (r.verdict == Verdict::bounded_below) {
    verdict["bound"] = mpz_to_json(r.bound);
  }
  out["verdict"] = std::move(verdict);
  out["warnings"] = r.warnings;
  json errors = json::array();
  for (auto const& e : r.errors) {
    errors.push_back({{"stage", e.stage}, {"message", e.message}});
  }
  out["errors"] = std::move(errors);
  if (include_timings) {
    json timings = json::object();
    for (auto const& t : r.timings) {
      timings[t.stage] = t.seconds;
    }
    out["timings"] = std::move(timings);
  }
  return out;
}

std::string report_to_text(CertificateReport const& r) {
  std::ostringstream os;
  if (r.dataset) {
    os << "dataset        " << r.dataset->name << " (" << r.dataset->s_words_checked << " words, "
       << r.dataset->relators_checked << " relators verified; reduced to " << join(r.dataset->reduced_generator_names)
       << ")\n";
  }
  if (r.bounds) {
    for (auto const& m : r.bounds->per_modulus) {
      os << "mod " << m.p << (m.degree == 2 ? " (F_p^2)" : "") << "\t|phi(G)| = " << m.order_gamma
         << "  |phi(S)| = " << m.order_s << "  index >= " << m.index_bound << "\n";
    }
    if (r.bounds->per_modulus.size() > 1) {
      os << "combined\t|phi(G)| = " << r.bounds->combined_order_gamma << "  |phi(S)| = " << r.bounds->combined_order_s
         << "  index >= " << r.bounds->combined_index << "\n";
    }
  }
  if (r.tc) {
    os << "todd-coxeter   " << r.tc->status;
    if (r.tc->status == "completed") {
      os << " index " << r.tc->index;
    }
    os << " (" << r.tc->cosets_defined << " cosets, limit " << r.tc->limit << ")\n";
  }
  if (r.kernel) {
    auto const& k = *r.kernel;
    os << "kernel mod " << k.modulus << "   [G:N] = " << k.index_of_N << "  |phi(S)| = " << k.order_phi_S
       << "  orbit " << k.orbit_length << "  schreier generators " << k.schreier_count << "\n";
    if (k.n_generators != 0) {
      os << "presentation   " << k.n_generators << " generators, " << k.n_relators << " relators ("
         << k.relators_sampled << " sampled, " << k.relators_failed << " failed)\n";
    }
  }
  if (r.abelian) {
    auto const& a = *r.abelian;
    os << "abelian        free rank " << a.free_rank << ", torsion [";
    for (std::size_t i = 0; i < a.torsion.size(); ++i) {
      os << (i ? ", " : "") << a.torsion[i];
    }
    os << "] on " << a.simplified_generators << " generators; subgroup image rank " << a.subgroup_rank << "\n";
  }
  os << "verdict        " << to_string(r.verdict);
  if (r.verdict == Verdict::bounded_below) {
    os << " " << r.bound;
  }
  os << "\n";
  for (auto const& w : r.warnings) {
    os << "warning        " << w << "\n";
  }
  for (auto const& e : r.errors) {
    os << "error          [" << e.stage << "] " << e.message << "\n";
  }
  return os.str();
}

}  // namespace coindex
