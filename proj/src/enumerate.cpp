#include <algorithm>
#include <cassert>
#include <sstream>

#include "enumerate_detail.hpp"
#include "n4dd/search.hpp"

namespace n4dd::search {

using semantics::KripkeModel;

std::string Bounds::to_string() const {
  std::ostringstream out;
  out << "worlds<=" << max_worlds << " objects<=" << max_objects
      << " intensions<=" << max_intensions << " kind="
      << (kind == StructureKind::Nelsonian ? "nelsonian" : "intuitionistic")
      << (free_models ? " free" : " ordinary") << " intension-cap=" << intension_cap;
  return out.str();
}

namespace detail {

namespace {

// All reflexive-transitive relations over n worlds, in the binary counting
// order of their off-diagonal pair sets.
std::vector<std::vector<std::vector<bool>>> frames(int n) {
  std::vector<std::pair<int, int>> offdiag;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) offdiag.emplace_back(a, b);
  std::vector<std::vector<std::vector<bool>>> out;
  for (std::uint32_t bits = 0; bits < (1u << offdiag.size()); ++bits) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int w = 0; w < n; ++w) r[w][w] = true;
    for (std::size_t i = 0; i < offdiag.size(); ++i)
      if (bits & (1u << i)) r[offdiag[i].first][offdiag[i].second] = true;
    bool transitive = true;
    for (int a = 0; a < n && transitive; ++a)
      for (int b = 0; b < n && transitive; ++b)
        for (int c = 0; c < n; ++c)
          if (r[a][b] && r[b][c] && !r[a][c]) {
            transitive = false;
            break;
          }
    if (transitive) out.push_back(std::move(r));
  }
  return out;
}

// Tuples over the per-world value set, lexicographically.
std::vector<std::vector<int>> tuples_over(const std::vector<int>& values, int arity) {
  std::vector<std::vector<int>> out;
  if (values.empty()) return out;
  std::vector<int> idx(arity, 0);
  while (true) {
    std::vector<int> tuple(arity);
    for (int i = 0; i < arity; ++i) tuple[i] = values[idx[i]];
    out.push_back(std::move(tuple));
    int i = arity - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < static_cast<int>(values.size())) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

// Every monotone per-world subset assignment of the candidates, as a
// generate-then-filter over per-world bit-vectors.
std::vector<ExtOption> monotone_options(
    const std::vector<std::vector<std::vector<int>>>& candidates,
    const std::vector<std::vector<bool>>& reach) {
  const int W = static_cast<int>(candidates.size());
  std::vector<std::uint32_t> mask(W, 0);
  std::vector<ExtOption> out;
  while (true) {
    ExtOption option(W);
    for (int w = 0; w < W; ++w)
      for (std::size_t i = 0; i < candidates[w].size(); ++i)
        if (mask[w] & (1u << i)) option[w].insert(candidates[w][i]);
    bool monotone = true;
    for (int a = 0; a < W && monotone; ++a)
      for (int b = 0; b < W; ++b) {
        if (!reach[a][b] || a == b) continue;
        if (!std::includes(option[b].begin(), option[b].end(), option[a].begin(),
                           option[a].end())) {
          monotone = false;
          break;
        }
      }
    if (monotone) out.push_back(std::move(option));
    int w = 0;
    for (; w < W; ++w) {
      if (++mask[w] < (1u << candidates[w].size())) break;
      mask[w] = 0;
    }
    if (w == W) break;
  }
  return out;
}

}  // namespace

std::vector<Prefix> enumerate_prefixes(const Bounds& b) {
  std::vector<Prefix> out;
  const bool nelson = b.kind == StructureKind::Nelsonian;

  for (int nw = 1; nw <= b.max_worlds; ++nw) {
    auto frame_list = frames(nw);
    for (const auto& reach : frame_list) {
      for (int nh = 1; nh <= b.max_objects; ++nh) {
        // intension pool
        std::vector<std::vector<int>> pool;
        if (nw * nh <= b.intension_cap) {
          std::vector<int> value(nw, 0);
          while (true) {
            pool.push_back(value);
            int w = nw - 1;
            for (; w >= 0; --w) {
              if (++value[w] < nh) break;
              value[w] = 0;
            }
            if (w < 0) break;
          }
        } else {
          for (int h = 0; h < nh; ++h) pool.emplace_back(nw, h);
        }

        int max_d = std::min<int>(b.max_intensions, static_cast<int>(pool.size()));
        for (int nd = 1; nd <= max_d; ++nd) {
          // combinations of pool indices, lexicographic
          std::vector<int> combo(nd);
          for (int i = 0; i < nd; ++i) combo[i] = i;
          while (true) {
            // domain assignments: nonempty masks per world, monotone
            std::vector<std::uint32_t> dom(nw, 1);
            const std::uint32_t full = (1u << nd) - 1;
            while (true) {
              bool dom_ok = true;
              for (int a = 0; a < nw && dom_ok; ++a)
                for (int bw = 0; bw < nw; ++bw)
                  if (reach[a][bw] && a != bw && (dom[a] & ~dom[bw])) {
                    dom_ok = false;
                    break;
                  }
              if (dom_ok) {
                // existent assignments
                std::vector<std::uint32_t> ex(nw, 0);
                if (!b.free_models) ex = dom;
                while (true) {
                  bool ex_ok = true;
                  for (int w = 0; w < nw && ex_ok; ++w)
                    if (ex[w] & ~dom[w]) ex_ok = false;
                  for (int a = 0; a < nw && ex_ok; ++a)
                    for (int bw = 0; bw < nw; ++bw)
                      if (reach[a][bw] && a != bw && (ex[a] & ~ex[bw])) {
                        ex_ok = false;
                        break;
                      }
                  if (ex_ok) {
                    // constant assignments
                    std::vector<int> cassign(b.constants.size(), 0);
                    while (true) {
                      Prefix p;
                      KripkeModel& m = p.base;
                      m.kind = b.kind;
                      for (int w = 0; w < nw; ++w)
                        m.worlds.push_back("w" + std::to_string(w));
                      m.reach = reach;
                      for (int h = 0; h < nh; ++h)
                        m.objects.push_back("h" + std::to_string(h));
                      for (int i = 0; i < nd; ++i)
                        m.intensions.push_back(
                            {"d" + std::to_string(i), pool[combo[i]]});
                      m.domain.assign(nw, std::vector<bool>(nd, false));
                      m.existent.assign(nw, std::vector<bool>(nd, false));
                      for (int w = 0; w < nw; ++w)
                        for (int d = 0; d < nd; ++d) {
                          m.domain[w][d] = dom[w] & (1u << d);
                          m.existent[w][d] = ex[w] & (1u << d);
                        }
                      {
                        int i = 0;
                        for (const auto& name : b.constants)
                          m.constants[name] = cassign[i++];
                      }
                      m.neg_identity.resize(nw);
                      for (const auto& [name, pb] : b.predicates) {
                        auto& ext = m.predicates[name];
                        ext.arity = pb.arity;
                        ext.pos.resize(nw);
                        ext.neg.resize(nw);
                      }

                      // extension components over the value sets
                      std::vector<std::vector<int>> jvals(nw);
                      for (int w = 0; w < nw; ++w)
                        for (int d = 0; d < nd; ++d)
                          if (m.existent[w][d]) {
                            int h = m.intensions[d].value[w];
                            if (!std::count(jvals[w].begin(), jvals[w].end(), h))
                              jvals[w].push_back(h);
                          }
                      for (int w = 0; w < nw; ++w)
                        std::sort(jvals[w].begin(), jvals[w].end());

                      for (const auto& [name, pb] : b.predicates) {
                        std::vector<std::vector<std::vector<int>>> cand(nw);
                        for (int w = 0; w < nw; ++w)
                          cand[w] = tuples_over(jvals[w], pb.arity);
                        if (pb.with_pos) {
                          Component c;
                          c.target = Component::PosExt;
                          c.pred = name;
                          c.options = monotone_options(cand, reach);
                          p.components.push_back(std::move(c));
                        }
                        if (nelson && pb.with_neg) {
                          Component c;
                          c.target = Component::NegExt;
                          c.pred = name;
                          c.options = monotone_options(cand, reach);
                          p.components.push_back(std::move(c));
                        }
                      }
                      if (nelson && b.with_neg_identity) {
                        std::vector<std::vector<std::vector<int>>> cand(nw);
                        for (int w = 0; w < nw; ++w)
                          cand[w] = tuples_over(jvals[w], 2);
                        Component c;
                        c.target = Component::NegIdent;
                        c.options = monotone_options(cand, reach);
                        p.components.push_back(std::move(c));
                      }

                      p.count = 1;
                      for (const auto& c : p.components)
                        p.count *= static_cast<std::uint64_t>(c.options.size());
                      out.push_back(std::move(p));

                      std::size_t i = 0;
                      for (; i < cassign.size(); ++i) {
                        if (++cassign[i] < nd) break;
                        cassign[i] = 0;
                      }
                      if (i == cassign.size()) break;
                    }
                  }
                  if (!b.free_models) break;
                  int w = 0;
                  for (; w < nw; ++w) {
                    if (++ex[w] <= full) break;
                    ex[w] = 0;
                  }
                  if (w == nw) break;
                }
              }
              int w = 0;
              for (; w < nw; ++w) {
                if (++dom[w] <= full) break;
                dom[w] = 1;
              }
              if (w == nw) break;
            }
            // next combination
            int i = nd - 1;
            while (i >= 0 &&
                   combo[i] == static_cast<int>(pool.size()) - nd + i)
              --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < nd; ++j) combo[j] = combo[j - 1] + 1;
          }
        }
      }
    }
  }
  return out;
}

void install_choice(const Prefix& p, std::uint64_t index, KripkeModel& scratch) {
  for (const auto& c : p.components) {
    const ExtOption& option = c.options[index % c.options.size()];
    index /= c.options.size();
    switch (c.target) {
      case Component::PosExt:
        scratch.predicates[c.pred].pos = option;
        break;
      case Component::NegExt:
        scratch.predicates[c.pred].neg = option;
        break;
      case Component::NegIdent:
        for (std::size_t w = 0; w < option.size(); ++w) {
          scratch.neg_identity[w].clear();
          for (const auto& tuple : option[w])
            scratch.neg_identity[w].insert({tuple[0], tuple[1]});
        }
        break;
    }
  }
}

}  // namespace detail

void enumerate_models(
    const Bounds& b,
    const std::function<bool(const KripkeModel&, std::uint64_t)>& visit) {
  auto prefixes = detail::enumerate_prefixes(b);
  std::uint64_t index = 0;
  for (const auto& p : prefixes) {
    KripkeModel scratch = p.base;
    for (std::uint64_t i = 0; i < p.count; ++i, ++index) {
      detail::install_choice(p, i, scratch);
      if (!visit(scratch, index)) return;
    }
  }
}

std::vector<KripkeModel> all_models(const Bounds& b) {
  std::vector<KripkeModel> out;
  enumerate_models(b, [&](const KripkeModel& m, std::uint64_t) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::uint64_t count_models(const Bounds& b) {
  auto prefixes = detail::enumerate_prefixes(b);
  std::uint64_t n = 0;
  for (const auto& p : prefixes) n += p.count;
  return n;
}

}  // namespace n4dd::search
