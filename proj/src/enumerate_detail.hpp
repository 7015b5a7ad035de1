#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "n4dd/search.hpp"

// Internal: the enumeration is split into a skeleton prefix (frame, objects,
// intensions, domains, existents, constants) and per-component extension
// option lists. Sweeps partition work across prefixes.

namespace n4dd::search::detail {

using ExtOption = std::vector<std::set<std::vector<int>>>;  // [world] -> tuples

struct Component {
  enum Target { PosExt, NegExt, NegIdent };
  Target target;
  std::string pred;
  std::vector<ExtOption> options;
};

struct Prefix {
  semantics::KripkeModel base;  // extensions empty
  std::vector<Component> components;
  std::uint64_t count = 1;  // product of option sizes
};

std::vector<Prefix> enumerate_prefixes(const Bounds& b);

// Installs the choice encoded by `index` (odometer over component options,
// first component fastest) into `scratch`, which must start as a copy of
// prefix.base and is reused between calls.
void install_choice(const Prefix& p, std::uint64_t index,
                    semantics::KripkeModel& scratch);

}  // namespace n4dd::search::detail
