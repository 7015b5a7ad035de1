#pragma once

#include <map>
#include <string>
#include <vector>

#include "n4dd/kernel.hpp"

// The bundled corpus: proof scripts (.nd), sequents (.seq) and models (.km)
// embedded at build time from corpus/.

namespace n4dd::corpus {

struct UnknownCorpusEntry : std::runtime_error {
  explicit UnknownCorpusEntry(const std::string& name)
      : std::runtime_error("unknown corpus entry " + name) {}
};

// All embedded files, name -> contents.
const std::map<std::string, std::string>& files();

// Contents of one file; throws UnknownCorpusEntry.
const std::string& file(const std::string& name);

// Names of the bundled proof scripts, sorted (without the .nd suffix).
std::vector<std::string> proof_names();

// Parses the named bundled proof script ("n4-negI-unfold-1" or
// "n4-negI-unfold-1.nd").
kernel::ProofScript load_proof(const std::string& name);

}  // namespace n4dd::corpus
