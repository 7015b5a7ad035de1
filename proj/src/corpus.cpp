#include "n4dd/corpus.hpp"

#include <algorithm>

namespace n4dd::corpus_detail {
const std::map<std::string, std::string>& embedded_files();
}

namespace n4dd::corpus {

const std::map<std::string, std::string>& files() {
  return corpus_detail::embedded_files();
}

const std::string& file(const std::string& name) {
  const auto& all = files();
  auto it = all.find(name);
  if (it == all.end()) throw UnknownCorpusEntry(name);
  return it->second;
}

std::vector<std::string> proof_names() {
  std::vector<std::string> out;
  for (const auto& [name, contents] : files()) {
    if (name.size() > 3 && name.substr(name.size() - 3) == ".nd")
      out.push_back(name.substr(0, name.size() - 3));
  }
  std::sort(out.begin(), out.end());
  return out;
}

kernel::ProofScript load_proof(const std::string& name) {
  std::string key = name;
  if (key.size() <= 3 || key.substr(key.size() - 3) != ".nd") key += ".nd";
  return kernel::parse_proof_script(file(key));
}

}  // namespace n4dd::corpus
