#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "coindex/congruence.hpp"
#include "coindex/dataset.hpp"
#include "coindex/words.hpp"

namespace coindex {

inline constexpr char const* kReportSchema = "coindex-report/1";

struct CertifyConfig {
  // "builtin" or a dataset JSON path; ignored when `dataset` is set.
  std::string dataset_source = "builtin";
  std::optional<Dataset> dataset;

  std::uint32_t kernel_modulus = 7;
  std::vector<std::uint32_t> probe_moduli{2};
  bool skip_kernel = false;

  // Coset enumeration of S in Γ; 0 skips the stage.
  std::size_t tc_limit = 1'000'000;

  std::uint64_t closure_cap = kDefaultClosureCap;
  // Simplify the kernel presentation above this many generators.
  std::size_t simplify_threshold = 512;
  SimplifyOptions simplify;
  // Also compute ranks on the unsimplified relation matrix, with modular
  // rank checks, and warn on any disagreement.
  bool cross_check = true;
  // Kernel relators expanded to ambient words and evaluated as matrices;
  // evenly spaced over all relators.
  std::size_t relator_sample = 128;

  unsigned threads = 1;
  // Receives one line per logged event.
  std::function<void(std::string_view)> log;
};

enum class Verdict { infinite, bounded_below, inconclusive };
std::string_view to_string(Verdict v);

struct DatasetSection {
  std::string name;
  std::size_t s_words_checked = 0;
  std::size_t relators_checked = 0;
  std::size_t reduced_generators = 0;
  std::size_t reduced_relators = 0;
  std::vector<std::string> reduced_generator_names;
};

struct ModulusSection {
  std::uint32_t p = 0;
  int degree = 1;
  FqElt zeta_image{};
  mpz_class order_gamma;
  mpz_class order_s;
  mpz_class index_bound;
};

struct BoundsSection {
  std::vector<ModulusSection> per_modulus;
  mpz_class combined_order_gamma = 1;
  mpz_class combined_order_s = 1;
  mpz_class combined_index = 1;
};

struct KernelSection {
  std::uint32_t modulus = 0;
  mpz_class index_of_N;
  mpz_class order_phi_S;
  std::size_t orbit_length = 0;
  std::size_t schreier_count = 0;
  std::size_t n_generators = 0;
  std::size_t n_relators = 0;
  std::size_t relators_sampled = 0;
  std::size_t relators_failed = 0;
};

struct AbelianSection {
  std::size_t n_generators = 0;  // of the kernel presentation
  std::size_t simplified_generators = 0;
  std::size_t simplified_relators = 0;
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;
  std::size_t subgroup_rank = 0;
  // Cross-check on the unsimplified relation matrix.
  std::optional<std::size_t> direct_relation_rank;
  std::optional<std::size_t> direct_free_rank;
  std::optional<std::size_t> direct_subgroup_rank;
  std::vector<std::pair<std::uint32_t, std::size_t>> modular_ranks;
};

struct TcSection {
  std::string status;  // "completed" or "exceeded"
  std::size_t index = 0;
  std::size_t cosets_defined = 0;
  std::size_t cosets_alive = 0;
  std::size_t limit = 0;
};

struct StageError {
  std::string stage;
  std::string message;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct CertificateReport {
  std::string schema = kReportSchema;
  std::optional<DatasetSection> dataset;
  std::optional<BoundsSection> bounds;
  std::optional<KernelSection> kernel;
  std::optional<AbelianSection> abelian;
  std::optional<TcSection> tc;
  Verdict verdict = Verdict::inconclusive;
  // Best congruence lower bound for the index; meaningful for bounded_below.
  mpz_class bound = 1;
  std::vector<std::string> warnings;
  std::vector<StageError> errors;
  std::vector<StageTiming> timings;
};

// Runs, in order: dataset checks, probe-moduli bounds, coset enumeration,
// kernel modulus (Cayley table, orbit, Schreier generators), kernel
// presentation, abelian invariants and the subgroup image rank. A stage
// error is recorded with its stage name; later stages that depend on it are
// skipped and the verdict becomes inconclusive.
CertificateReport certify_infinite_index(CertifyConfig const& cfg);

// Timings are left out when include_timings is false, so two runs with the
// same config serialize identically.
json report_to_json(CertificateReport const& r, bool include_timings = true);
std::string report_to_text(CertificateReport const& r);

// Integers as JSON numbers when they fit in 64 bits, strings otherwise.
json mpz_to_json(mpz_class const& v);

}  // namespace coindex
