#include <sstream>

#include "n4dd/semantics.hpp"

namespace n4dd::semantics {

namespace {

struct ModelParseError : EvalError {
  using EvalError::EvalError;
};

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw syntax::ParseError("model file line " + std::to_string(lineno) + ": " + msg,
                           0);
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// "(h0,h1)" -> object indices
std::vector<int> parse_tuple(const KripkeModel& m, const std::string& text,
                             int lineno) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    fail(lineno, "expected a tuple like (h0,h1), got " + text);
  std::vector<int> tuple;
  std::string inner = text.substr(1, text.size() - 2);
  std::istringstream in(inner);
  std::string name;
  while (std::getline(in, name, ',')) {
    int h = m.object_index(name);
    if (h < 0) fail(lineno, "unknown object " + name);
    tuple.push_back(h);
  }
  if (tuple.empty()) fail(lineno, "empty tuple");
  return tuple;
}

}  // namespace

KripkeModel parse_model(std::string_view text) {
  KripkeModel m;
  m.kind = StructureKind::Nelsonian;
  bool kind_seen = false;
  std::vector<std::pair<int, int>> rel_pairs;
  struct PendingMember {
    int world;
    std::string name;
    bool is_domain;
    int lineno;
  };
  std::vector<PendingMember> pending_members;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& head = words[0];

    if (head == "kind:") {
      if (words.size() != 2) fail(lineno, "kind: takes one value");
      if (words[1] == "nelsonian")
        m.kind = StructureKind::Nelsonian;
      else if (words[1] == "intuitionistic")
        m.kind = StructureKind::Intuitionistic;
      else
        fail(lineno, "unknown kind " + words[1]);
      kind_seen = true;
    } else if (head == "worlds:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (m.world_index(words[i]) >= 0) fail(lineno, "duplicate world " + words[i]);
        m.worlds.push_back(words[i]);
      }
    } else if (head == "rel:") {
      if ((words.size() - 1) % 2 != 0) fail(lineno, "rel: takes pairs of worlds");
      for (std::size_t i = 1; i + 1 < words.size(); i += 2) {
        int a = m.world_index(words[i]), b = m.world_index(words[i + 1]);
        if (a < 0 || b < 0) fail(lineno, "unknown world in rel:");
        rel_pairs.emplace_back(a, b);
      }
    } else if (head == "objects:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (m.object_index(words[i]) >= 0)
          fail(lineno, "duplicate object " + words[i]);
        m.objects.push_back(words[i]);
      }
    } else if (head == "intension") {
      // intension d = w0:h0 w1:h1
      if (words.size() < 3 || words[2] != "=") fail(lineno, "intension d = w:h ...");
      KripkeModel::Intension d;
      d.name = words[1];
      for (const auto& other : m.intensions)
        if (other.name == d.name) fail(lineno, "duplicate intension " + d.name);
      d.value.assign(m.worlds.size(), -1);
      for (std::size_t i = 3; i < words.size(); ++i) {
        auto colon = words[i].find(':');
        if (colon == std::string::npos) fail(lineno, "expected w:h, got " + words[i]);
        int w = m.world_index(words[i].substr(0, colon));
        int h = m.object_index(words[i].substr(colon + 1));
        if (w < 0 || h < 0) fail(lineno, "unknown world or object in " + words[i]);
        d.value[w] = h;
      }
      for (std::size_t w = 0; w < m.worlds.size(); ++w)
        if (d.value[w] < 0)
          fail(lineno, "intension " + d.name + " has no value at " + m.worlds[w]);
      m.intensions.push_back(std::move(d));
    } else if (head == "domain" || head == "exists") {
      // domain w: d ...   (resolved after all intensions are known)
      if (words.size() < 2 || words[1].empty() || words[1].back() != ':')
        fail(lineno, head + " w: d ...");
      int w = m.world_index(words[1].substr(0, words[1].size() - 1));
      if (w < 0) fail(lineno, "unknown world");
      for (std::size_t i = 2; i < words.size(); ++i)
        pending_members.push_back({w, words[i], head == "domain", lineno});
    } else if (head == "const") {
      if (words.size() != 4 || words[2] != "=") fail(lineno, "const a = d");
      if (syntax::is_reserved_constant_name(words[1]) ||
          syntax::is_variable_name(words[1]))
        fail(lineno, "constant name " + words[1] + " is reserved");
      int d = -1;
      for (std::size_t k = 0; k < m.intensions.size(); ++k)
        if (m.intensions[k].name == words[3]) d = static_cast<int>(k);
      if (d < 0) fail(lineno, "unknown intension " + words[3]);
      m.constants[words[1]] = d;
    } else if (head == "pos" || head == "neg" || head == "neg=") {
      int w;
      std::size_t first_tuple;
      std::string pred;
      if (head == "neg=") {
        if (words.size() < 2 || words[1].back() != ':') fail(lineno, "neg= w: (h,h)");
        w = m.world_index(words[1].substr(0, words[1].size() - 1));
        first_tuple = 2;
      } else {
        if (words.size() < 3 || words[2].back() != ':')
          fail(lineno, head + " P w: (h,...)");
        pred = words[1];
        w = m.world_index(words[2].substr(0, words[2].size() - 1));
        first_tuple = 3;
      }
      if (w < 0) fail(lineno, "unknown world");
      if (m.neg_identity.empty()) m.neg_identity.resize(m.worlds.size());
      for (std::size_t i = first_tuple; i < words.size(); ++i) {
        std::vector<int> tuple = parse_tuple(m, words[i], lineno);
        if (head == "neg=") {
          if (tuple.size() != 2) fail(lineno, "neg= takes pairs");
          m.neg_identity[w].insert({tuple[0], tuple[1]});
        } else {
          auto& ext = m.predicates[pred];
          if (ext.pos.empty()) {
            ext.arity = static_cast<int>(tuple.size());
            ext.pos.resize(m.worlds.size());
            ext.neg.resize(m.worlds.size());
          }
          if (static_cast<int>(tuple.size()) != ext.arity)
            fail(lineno, "arity mismatch for " + pred);
          (head == "pos" ? ext.pos : ext.neg)[w].insert(tuple);
        }
      }
      // a bare "pos P w:" line still declares the predicate
      if (head != "neg=" && !pred.empty() && !m.predicates.count(pred)) {
        auto& ext = m.predicates[pred];
        ext.arity = 1;
        ext.pos.resize(m.worlds.size());
        ext.neg.resize(m.worlds.size());
      }
    } else {
      fail(lineno, "unknown section " + head);
    }
  }

  if (!kind_seen) fail(0, "missing kind:");
  if (m.worlds.empty()) fail(0, "missing worlds:");
  if (m.objects.empty()) fail(0, "missing objects:");
  m.domain.assign(m.worlds.size(), std::vector<bool>(m.intensions.size(), false));
  m.existent.assign(m.worlds.size(), std::vector<bool>(m.intensions.size(), false));
  for (const auto& p : pending_members) {
    int d = -1;
    for (std::size_t k = 0; k < m.intensions.size(); ++k)
      if (m.intensions[k].name == p.name) d = static_cast<int>(k);
    if (d < 0) fail(p.lineno, "unknown intension " + p.name);
    (p.is_domain ? m.domain : m.existent)[p.world][d] = true;
  }
  if (m.neg_identity.empty()) m.neg_identity.resize(m.worlds.size());
  for (auto& [name, ext] : m.predicates) {
    if (ext.pos.empty()) ext.pos.resize(m.worlds.size());
    if (ext.neg.empty()) ext.neg.resize(m.worlds.size());
  }

  // reflexive-transitive closure of the listed pairs
  const int W = static_cast<int>(m.worlds.size());
  m.reach.assign(W, std::vector<bool>(W, false));
  for (int w = 0; w < W; ++w) m.reach[w][w] = true;
  for (auto [a, b] : rel_pairs) m.reach[a][b] = true;
  for (int k = 0; k < W; ++k)
    for (int i = 0; i < W; ++i)
      for (int j = 0; j < W; ++j)
        if (m.reach[i][k] && m.reach[k][j]) m.reach[i][j] = true;

  return m;
}

std::string print_model(const KripkeModel& m) {
  std::ostringstream out;
  out << "kind: "
      << (m.kind == StructureKind::Nelsonian ? "nelsonian" : "intuitionistic")
      << '\n';
  out << "worlds:";
  for (const auto& w : m.worlds) out << ' ' << w;
  out << '\n';
  const int W = static_cast<int>(m.worlds.size());
  bool any = false;
  for (int a = 0; a < W; ++a)
    for (int b = 0; b < W; ++b)
      if (m.reach[a][b] && a != b) {
        if (!any) out << "rel:";
        any = true;
        out << ' ' << m.worlds[a] << ' ' << m.worlds[b];
      }
  if (any) out << '\n';
  out << "objects:";
  for (const auto& h : m.objects) out << ' ' << h;
  out << '\n';
  for (const auto& d : m.intensions) {
    out << "intension " << d.name << " =";
    for (int w = 0; w < W; ++w)
      out << ' ' << m.worlds[w] << ':' << m.objects[d.value[w]];
    out << '\n';
  }
  for (int w = 0; w < W; ++w) {
    out << "domain " << m.worlds[w] << ':';
    for (std::size_t d = 0; d < m.intensions.size(); ++d)
      if (m.domain[w][d]) out << ' ' << m.intensions[d].name;
    out << '\n';
  }
  for (int w = 0; w < W; ++w) {
    out << "exists " << m.worlds[w] << ':';
    for (std::size_t d = 0; d < m.intensions.size(); ++d)
      if (m.existent[w][d]) out << ' ' << m.intensions[d].name;
    out << '\n';
  }
  for (const auto& [name, d] : m.constants)
    out << "const " << name << " = " << m.intensions[d].name << '\n';
  auto print_tuples = [&](const char* head, const std::string& pred, int w,
                          const std::set<std::vector<int>>& tuples) {
    if (tuples.empty()) return;
    out << head << ' ' << pred << ' ' << m.worlds[w] << ':';
    for (const auto& tuple : tuples) {
      out << " (";
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out << ',';
        out << m.objects[tuple[i]];
      }
      out << ')';
    }
    out << '\n';
  };
  for (const auto& [name, ext] : m.predicates) {
    bool declared = false;
    for (int w = 0; w < W; ++w) declared |= !ext.pos[w].empty() || !ext.neg[w].empty();
    if (!declared) out << "pos " << name << ' ' << m.worlds[0] << ":\n";
    for (int w = 0; w < W; ++w) print_tuples("pos", name, w, ext.pos[w]);
    for (int w = 0; w < W; ++w) print_tuples("neg", name, w, ext.neg[w]);
  }
  for (int w = 0; w < W; ++w) {
    if (m.neg_identity[w].empty()) continue;
    out << "neg= " << m.worlds[w] << ':';
    for (const auto& [h1, h2] : m.neg_identity[w])
      out << " (" << m.objects[h1] << ',' << m.objects[h2] << ')';
    out << '\n';
  }
  return out.str();
}

std::string KripkeModel::to_string() const { return print_model(*this); }

}  // namespace n4dd::semantics
