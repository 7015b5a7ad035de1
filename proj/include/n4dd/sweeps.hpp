#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "n4dd/kernel.hpp"
#include "n4dd/search.hpp"

// Exhaustive semantic sweeps over enumerated models. Each sweep has a serial
// reference implementation and an OpenMP-parallel one; both produce the same
// report, with findings ordered by canonical model index.

namespace n4dd::sweeps {

using search::Bounds;
using syntax::Formula;

enum class RunMode { Serial, Parallel };

struct Report {
  std::uint64_t models = 0;
  std::uint64_t checks = 0;
  std::vector<std::string> findings;  // empty on success; capped
  static constexpr std::size_t kMaxFindings = 32;

  bool ok() const { return findings.empty(); }
};

// Nelsonian models: compares each formula with its translation on the paired
// intuitionistic model, at every world.
Report pairing_sweep(const Bounds& nelsonian_bounds, const std::vector<Formula>& corpus,
                     RunMode mode);

// Intuitionistic models over the primed extension: compares each source
// formula on the unpaired Nelsonian model with its translation, dually.
Report dual_pairing_sweep(const Bounds& int_bounds, const std::vector<Formula>& corpus,
                          RunMode mode);

// Truth persists along the accessibility relation for every corpus formula.
Report heredity_sweep(const Bounds& bounds, const std::vector<Formula>& corpus,
                      RunMode mode);

// Each description formula agrees with its quantifier unfolding everywhere.
Report unfolding_sweep(const Bounds& bounds, const std::vector<Formula>& descriptions,
                       RunMode mode);

// No enumerated model invalidates the sequent (truth-preservation at every
// world under every assignment to free variables).
Report soundness_sweep(const kernel::Sequent& s, int worlds, int objects,
                       int intensions, RunMode mode);

}  // namespace n4dd::sweeps
