#pragma once

#include "qpc/exec.hpp"
#include "qpc/quadric.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qpc {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

// Reference configurations of the checks.
QuadricSpec reference_r4(Family f);  // squares (4, 3, 2, 1)
QuadricSpec reference_r3(Family f);  // squares (4, 3, 1)

CriterionResult check_dual_oracle(std::uint64_t seed, Exec exec = Exec::Parallel);
CriterionResult check_chart_roundtrip(std::uint64_t seed, Exec exec = Exec::Parallel);
CriterionResult check_principal_chart(std::uint64_t seed);
CriterionResult check_sign_patterns(std::uint64_t seed);
CriterionResult check_locus_membership();
CriterionResult check_q2_principal_line();
CriterionResult check_torsion_zeros();
CriterionResult check_leaf_census(std::uint64_t seed, Exec exec = Exec::Parallel);
CriterionResult check_r3_suite(std::uint64_t seed);
CriterionResult check_r4_umbilic_free(std::uint64_t seed, Exec exec = Exec::Parallel);

const std::vector<std::string>& suite_names();  // oracle, roundtrip, locus, census, torsion, r3, all
bool is_suite(std::string_view name);
// Throws SpecError for an unknown suite.
SuiteReport run_suite(std::string_view suite, std::uint64_t seed, Exec exec = Exec::Parallel);

}  // namespace qpc
