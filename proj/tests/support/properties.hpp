#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace coindex::testing {

struct PropertyOutcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;  // description of the first failing case

  bool ok() const { return cases > 0 && failures == 0; }
};

inline constexpr std::size_t kDefaultCases = 1000;

PropertyOutcome norm_multiplicativity(std::size_t cases = kDefaultCases, std::uint64_t seed = 1);
PropertyOutcome reduction_homomorphism(std::size_t cases = kDefaultCases, std::uint64_t seed = 2);
PropertyOutcome orbit_lagrange(std::size_t cases = kDefaultCases, std::uint64_t seed = 3);
PropertyOutcome snf_minors(std::size_t cases = kDefaultCases, std::uint64_t seed = 4);
PropertyOutcome coset_table_audit(std::size_t cases = kDefaultCases, std::uint64_t seed = 5);
PropertyOutcome rewrite_homomorphism(std::size_t cases = kDefaultCases, std::uint64_t seed = 6);

std::vector<PropertyOutcome> all_properties(std::size_t cases = kDefaultCases);

}  // namespace coindex::testing
