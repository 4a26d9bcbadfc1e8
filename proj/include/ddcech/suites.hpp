#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddcech/bifiltered.hpp"
#include "ddcech/io.hpp"

namespace ddcech {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 100;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t failed_checks = 0;
  std::optional<double> worst_slack;  // suites with a numeric margin
  std::string witness;                // first failure
  std::string detail;                 // extra summary, e.g. tight simplices
};

// sandwich, duality, restriction, nerve, stability, lemma75, prop76.
const std::vector<std::string>& suite_names();

// Randomized suite, reproducible from the seed. Throws Error for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config);

// The suites that take a single metric measure space (sandwich, duality,
// restriction, nerve) run on a given dataset. For sandwich, `ambient`
// replaces the built ambient bifiltration, e.g. one read from a file.
SuiteResult run_suite_on(const std::string& name, const Dataset& data,
                         const std::optional<BifilteredComplex>& ambient = std::nullopt);

// One line: "<name>: PASS|FAIL instances=.. checks=.. [failed_checks=..] [worst_slack=..] [detail] [witness]".
std::string format_result(const SuiteResult& r);

}  // namespace ddcech
