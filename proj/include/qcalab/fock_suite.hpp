#pragma once

#include <cstdint>

#include <json.hpp>

#include "qcalab/types.hpp"

namespace qcalab {

struct FockSuiteConfig {
  std::size_t momenta = 2;
  Vec3 base = Vec3(0.3, 0.2, 0.1);  ///< centre of the momentum line; keeps n_{k/2} away from 0
  double step = 0.1;
  Chirality sign = Chirality::plus;
  std::uint64_t seed = 1;
  int random_pairs = 1000;  ///< orthogonal profile pairs for the cross-commutator bound
  int random_states = 200;  ///< random low-occupancy superpositions for the Schwartz bound
  int n_max = 3;
};

struct FockSuiteResult {
  nlohmann::json report;
  bool passed = true;
};

/// Runs every exact Fock-space check on the line of `momenta` momenta and
/// collects per-check pass flags, worst deviations and bound slacks.
FockSuiteResult run_fock_suite(const FockSuiteConfig& config);

}  // namespace qcalab
