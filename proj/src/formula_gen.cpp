#include "n4dd/formula_gen.hpp"

#include <map>
#include <set>

namespace n4dd::formula_gen {

using syntax::Formula;
using syntax::Lang;
using syntax::Term;

// The corpus is generated size by size (size = connective count). Within a
// size, one candidate stream per connective is drained round-robin so every
// composition shape stays represented when the cap truncates the corpus.
// Candidate pools keep open formulas too: they feed the binder streams.
std::vector<Formula> closed_formulas(const Options& opt) {
  Term x = Term::variable(opt.variable);
  Term a = Term::constant(opt.constant);

  std::vector<Formula> out;
  std::set<std::string> seen;        // dedup by printed form, all formulas
  std::set<std::string> emitted;     // dedup of the closed output
  std::vector<std::vector<Formula>> pool(1);

  auto note = [&](std::vector<Formula>& level, Formula f) {
    if (seen.insert(syntax::print(f)).second) level.push_back(f);
  };

  // size 0: atoms
  note(pool[0], Formula::atom(opt.predicate, {a}));
  note(pool[0], Formula::atom(opt.predicate, {x}));
  note(pool[0], Formula::identity(a, a));
  note(pool[0], Formula::identity(a, x));
  note(pool[0], Formula::identity(x, a));
  note(pool[0], Formula::identity(x, x));
  if (opt.lang == Lang::Bot) note(pool[0], Formula::falsum());

  auto emit_closed = [&](Formula f) {
    if (!f.is_closed()) return;
    if (emitted.insert(syntax::print(f)).second) out.push_back(f);
  };
  for (Formula f : pool[0]) emit_closed(f);

  const std::size_t quota = opt.cap;  // per stream and size

  for (int size = 1; size <= opt.depth && out.size() < opt.cap; ++size) {
    std::vector<std::vector<Formula>> streams;

    if (opt.lang == Lang::Neg) {
      std::vector<Formula> neg;
      for (Formula f : pool[size - 1]) {
        if (neg.size() >= quota) break;
        neg.push_back(Formula::negation(f));
      }
      streams.push_back(std::move(neg));
    }

    for (bool universal : {true, false}) {
      std::vector<Formula> qs;
      for (Formula f : pool[size - 1]) {
        if (qs.size() >= quota) break;
        if (!f.has_free(x)) continue;  // skip vacuous binders
        qs.push_back(universal ? Formula::forall(x, f) : Formula::exists(x, f));
      }
      streams.push_back(std::move(qs));
    }

    for (int conn = 0; conn < 3; ++conn) {
      std::vector<Formula> bin;
      for (int left = 0; left < size && bin.size() < quota; ++left) {
        int right = size - 1 - left;
        for (Formula lhs : pool[left]) {
          if (bin.size() >= quota) break;
          for (Formula rhs : pool[right]) {
            if (bin.size() >= quota) break;
            switch (conn) {
              case 0: bin.push_back(Formula::conj(lhs, rhs)); break;
              case 1: bin.push_back(Formula::disj(lhs, rhs)); break;
              case 2: bin.push_back(Formula::implies(lhs, rhs)); break;
            }
          }
        }
      }
      streams.push_back(std::move(bin));
    }

    if (opt.with_descriptions) {
      std::vector<Formula> descrs;
      for (int left = 0; left < size && descrs.size() < quota; ++left) {
        int right = size - 1 - left;
        for (Formula lhs : pool[left]) {
          if (descrs.size() >= quota) break;
          for (Formula rhs : pool[right]) {
            if (descrs.size() >= quota) break;
            descrs.push_back(Formula::description(x, lhs, rhs));
          }
        }
      }
      streams.push_back(std::move(descrs));
    }

    pool.emplace_back();
    std::vector<std::size_t> cursor(streams.size(), 0);
    bool progress = true;
    while (progress && out.size() < opt.cap) {
      progress = false;
      for (std::size_t si = 0; si < streams.size(); ++si) {
        if (cursor[si] >= streams[si].size()) continue;
        Formula f = streams[si][cursor[si]++];
        progress = true;
        std::string p = syntax::print(f);
        if (seen.insert(p).second) {
          pool[size].push_back(f);
          emit_closed(f);
          if (out.size() >= opt.cap) break;
        }
      }
    }
  }
  return out;
}

}  // namespace n4dd::formula_gen
