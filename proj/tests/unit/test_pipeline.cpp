#include <doctest.h>

#include "coindex/pipeline.hpp"

using namespace coindex;

namespace {

CertificateReport const& default_report() {
  static CertificateReport const r = [] {
    CertifyConfig cfg;
    cfg.tc_limit = 20'000;
    return certify_infinite_index(cfg);
  }();
  return r;
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("default certification") {
    CertificateReport const& r = default_report();
    CHECK(r.errors.empty());
    CHECK(r.verdict == Verdict::infinite);
    REQUIRE(r.kernel);
    CHECK(r.kernel->index_of_N == 2016);
    CHECK(r.kernel->order_phi_S == 24);
    CHECK(r.kernel->orbit_length == 24);
    CHECK(r.kernel->schreier_count == 121);
    CHECK(r.kernel->schreier_count == 6 * r.kernel->orbit_length - (r.kernel->orbit_length - 1));
    CHECK(r.kernel->n_generators == 4033);
    CHECK(r.kernel->relators_failed == 0);
    REQUIRE(r.abelian);
    CHECK(r.abelian->free_rank == 8);
    CHECK(r.abelian->torsion.empty());
    CHECK(r.abelian->subgroup_rank == 3);
    CHECK(r.abelian->direct_free_rank == 8);
    CHECK(r.abelian->direct_subgroup_rank == 3);
    REQUIRE(r.bounds);
    CHECK(r.bounds->per_modulus.at(0).index_bound == 15);
    REQUIRE(r.tc);
    CHECK(r.tc->status == "exceeded");
    json const j = report_to_json(r);
    CHECK(j["schema"] == "coindex-report/1");
    CHECK(j["verdict"]["kind"] == "infinite");
    CHECK(j["abelian"]["free_rank"] == 8);
    CHECK(j.contains("timings"));
    CHECK(report_to_text(r).find("verdict        infinite") != std::string::npos);
  }

  TEST_CASE("reports are deterministic apart from timings") {
    CertifyConfig cfg;
    cfg.tc_limit = 20'000;
    cfg.threads = 2;
    CertificateReport const again = certify_infinite_index(cfg);
    CHECK(report_to_json(again, false).dump() == report_to_json(default_report(), false).dump());
  }

  TEST_CASE("probe only") {
    CertifyConfig cfg;
    cfg.skip_kernel = true;
    cfg.tc_limit = 0;
    CertificateReport const r = certify_infinite_index(cfg);
    CHECK(r.verdict == Verdict::bounded_below);
    CHECK(r.bound == 15);
    CHECK(!r.kernel);
    CHECK(!r.tc);
    CHECK(report_to_json(r)["verdict"]["bound"] == 15);

    cfg.probe_moduli = {2, 3};
    CertificateReport const more = certify_infinite_index(cfg);
    CHECK(more.bound >= r.bound);
  }

  TEST_CASE("S equal to the whole group") {
    CertifyConfig cfg;
    Dataset d = builtin_dataset();
    d.s_gens.clear();
    d.s_words.clear();
    for (auto const& name : {"t", "a", "w"}) {
      for (auto const& g : d.gamma_gens) {
        if (g.name == name) {
          std::string const sname = std::string("s") + name;
          d.s_gens.push_back({sname, g.matrix});
          d.s_words.push_back({sname, name, parse_word(name, d.gamma_alphabet())});
        }
      }
    }
    cfg.dataset = d;
    cfg.tc_limit = 1000;
    CertificateReport const r = certify_infinite_index(cfg);
    CHECK(r.errors.empty());
    REQUIRE(r.abelian);
    CHECK(r.abelian->subgroup_rank == r.abelian->free_rank);
    for (auto const& m : r.bounds->per_modulus) {
      CHECK(m.index_bound == 1);
    }
    CHECK(r.kernel->order_phi_S == 2016);
    REQUIRE(r.tc);
    CHECK(r.tc->status == "completed");
    CHECK(r.tc->index == 1);
    CHECK(r.verdict == Verdict::bounded_below);
    CHECK(r.bound == 1);
  }

  TEST_CASE("stage failures are reported") {
    CertifyConfig cfg;
    cfg.kernel_modulus = 9;
    cfg.tc_limit = 0;
    CertificateReport const r = certify_infinite_index(cfg);
    CHECK(r.verdict == Verdict::inconclusive);
    REQUIRE(!r.errors.empty());
    CHECK(r.errors[0].stage == "kernel");
    CHECK(r.bounds.has_value());

    CertifyConfig bad;
    bad.dataset_source = "/nonexistent.json";
    CertificateReport const b = certify_infinite_index(bad);
    CHECK(b.verdict == Verdict::inconclusive);
    REQUIRE(b.errors.size() == 1);
    CHECK(b.errors[0].stage == "dataset");

    CertifyConfig tight;
    tight.closure_cap = 100;
    tight.tc_limit = 0;
    tight.probe_moduli.clear();
    CertificateReport const t = certify_infinite_index(tight);
    CHECK(t.verdict == Verdict::inconclusive);
    CHECK(t.errors.at(0).stage == "kernel");
  }

  TEST_CASE("log lines") {
    std::vector<std::string> lines;
    CertifyConfig cfg;
    cfg.skip_kernel = true;
    cfg.tc_limit = 0;
    cfg.log = [&](std::string_view s) { lines.emplace_back(s); };
    certify_infinite_index(cfg);
    CHECK(!lines.empty());
    CHECK(lines.back() == "verdict: bounded_below 15");
  }

  TEST_CASE("integers in JSON") {
    CHECK(mpz_to_json(mpz_class(42)) == 42);
    mpz_class big("12320094566713638038196474967514063490194079744000");
    CHECK(mpz_to_json(big) == "12320094566713638038196474967514063490194079744000");
  }
}
