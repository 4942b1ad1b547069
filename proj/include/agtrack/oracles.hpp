#pragma once

// Brute-force equivalence checks for the four strategies. Each check builds
// seeded random small instances, recomputes the optimum with an independent
// enumeration, and compares against the strategy output.

#include <cstdint>
#include <string>
#include <vector>

namespace agtrack {

struct OracleReport {
  std::string check;
  int trials = 0;
  int passed = 0;
  double max_deviation = 0.0;
  std::string failure;  // serialized offending instance, empty when all pass

  bool ok() const { return passed == trials; }
};

OracleReport oracle_mra(int trials, std::uint64_t seed);
OracleReport oracle_asrt(int trials, std::uint64_t seed);
OracleReport oracle_qoe(int trials, std::uint64_t seed);
OracleReport oracle_cacat(int trials, std::uint64_t seed);

OracleReport run_oracle(const std::string& check, int trials,
                        std::uint64_t seed);

}  // namespace agtrack
