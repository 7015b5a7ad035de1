#include "n4dd/sweeps.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "enumerate_detail.hpp"
#include "n4dd/embedding.hpp"

namespace n4dd::sweeps {

using search::detail::enumerate_prefixes;
using search::detail::install_choice;
using search::detail::Prefix;
using semantics::EvalPlan;
using semantics::Evaluator;
using semantics::KripkeModel;
using syntax::Term;

namespace {

struct Finding {
  std::uint64_t index;
  int world;
  std::string what;
};

struct LocalReport {
  std::uint64_t checks = 0;
  std::vector<Finding> findings;

  void add(std::uint64_t index, int world, std::string what) {
    if (findings.size() < 4 * Report::kMaxFindings)
      findings.push_back({index, world, std::move(what)});
  }
};

// Runs `worker(model, index, local)` over every model within bounds.
// make_worker() is called once per thread; workers may keep scratch state.
// Findings are merged in canonical model order, so both run modes produce
// identical reports.
template <typename MakeWorker>
Report run_sweep(const Bounds& b, RunMode mode, MakeWorker make_worker) {
  auto prefixes = enumerate_prefixes(b);
  std::vector<std::uint64_t> offset(prefixes.size() + 1, 0);
  for (std::size_t i = 0; i < prefixes.size(); ++i)
    offset[i + 1] = offset[i] + prefixes[i].count;

  std::vector<LocalReport> locals;

  if (mode == RunMode::Serial) {
    locals.emplace_back();
    auto worker = make_worker();
    for (std::size_t pi = 0; pi < prefixes.size(); ++pi) {
      KripkeModel scratch = prefixes[pi].base;
      for (std::uint64_t i = 0; i < prefixes[pi].count; ++i) {
        install_choice(prefixes[pi], i, scratch);
        worker(scratch, offset[pi] + i, locals[0]);
      }
    }
  } else {
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    locals.resize(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
    {
      auto worker = make_worker();
      LocalReport& local = locals[omp_get_thread_num()];
#pragma omp for schedule(dynamic)
      for (std::int64_t pi = 0; pi < static_cast<std::int64_t>(prefixes.size());
           ++pi) {
        KripkeModel scratch = prefixes[pi].base;
        for (std::uint64_t i = 0; i < prefixes[pi].count; ++i) {
          install_choice(prefixes[pi], i, scratch);
          worker(scratch, offset[pi] + i, local);
        }
      }
    }
#else
    auto worker = make_worker();
    for (std::size_t pi = 0; pi < prefixes.size(); ++pi) {
      KripkeModel scratch = prefixes[pi].base;
      for (std::uint64_t i = 0; i < prefixes[pi].count; ++i) {
        install_choice(prefixes[pi], i, scratch);
        worker(scratch, offset[pi] + i, locals[0]);
      }
    }
#endif
  }

  Report report;
  report.models = offset.back();
  std::vector<Finding> all;
  for (auto& local : locals) {
    report.checks += local.checks;
    all.insert(all.end(), local.findings.begin(), local.findings.end());
  }
  std::sort(all.begin(), all.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.index, a.world, a.what) < std::tie(b.index, b.world, b.what);
  });
  for (const auto& f : all) {
    if (report.findings.size() >= Report::kMaxFindings) break;
    std::ostringstream out;
    out << "model " << f.index << " world " << f.world << ": " << f.what;
    report.findings.push_back(out.str());
  }
  return report;
}

// Evaluator bound lazily to its first model.
struct LazyEval {
  const EvalPlan& plan;
  std::optional<Evaluator> ev;

  Evaluator& bind(const KripkeModel& m) {
    if (ev)
      ev->reset(m);
    else
      ev.emplace(m, plan);
    return *ev;
  }
};

}  // namespace

Report pairing_sweep(const Bounds& b, const std::vector<Formula>& corpus,
                     RunMode mode) {
  auto tau_corpus = std::make_shared<std::vector<Formula>>();
  for (Formula f : corpus) tau_corpus->push_back(embedding::tau(f));
  auto plan_n = std::make_shared<EvalPlan>(corpus, b.max_intensions);
  auto plan_i = std::make_shared<EvalPlan>(*tau_corpus, b.max_intensions);

  return run_sweep(b, mode, [&, plan_n, plan_i, tau_corpus]() {
    return [&corpus, tau_corpus, plan_n, plan_i, n = LazyEval{*plan_n},
            i = LazyEval{*plan_i}](const KripkeModel& m, std::uint64_t index,
                                   LocalReport& local) mutable {
      Evaluator& ev_n = n.bind(m);
      KripkeModel paired = embedding::pair_model(m);
      Evaluator& ev_i = i.bind(paired);
      const int W = static_cast<int>(m.worlds.size());
      for (std::size_t fi = 0; fi < corpus.size(); ++fi) {
        int node_n = plan_n->node_of(corpus[fi]);
        int node_i = plan_i->node_of((*tau_corpus)[fi]);
        for (int w = 0; w < W; ++w) {
          ++local.checks;
          bool lhs = ev_n.eval(node_n, w);
          bool rhs = ev_i.eval(node_i, w);
          if (lhs != rhs)
            local.add(index, w,
                      syntax::print(corpus[fi]) + " is " + (lhs ? "true" : "false") +
                          " but its translation is " + (rhs ? "true" : "false"));
        }
      }
    };
  });
}

Report dual_pairing_sweep(const Bounds& b, const std::vector<Formula>& corpus,
                          RunMode mode) {
  auto tau_corpus = std::make_shared<std::vector<Formula>>();
  for (Formula f : corpus) tau_corpus->push_back(embedding::tau(f));
  auto plan_n = std::make_shared<EvalPlan>(corpus, b.max_intensions);
  auto plan_i = std::make_shared<EvalPlan>(*tau_corpus, b.max_intensions);

  return run_sweep(b, mode, [&, plan_n, plan_i, tau_corpus]() {
    return [&corpus, tau_corpus, plan_n, plan_i, n = LazyEval{*plan_n},
            i = LazyEval{*plan_i}](const KripkeModel& m, std::uint64_t index,
                                   LocalReport& local) mutable {
      Evaluator& ev_i = i.bind(m);
      KripkeModel unpaired = embedding::unpair_model(m);
      Evaluator& ev_n = n.bind(unpaired);
      const int W = static_cast<int>(m.worlds.size());
      for (std::size_t fi = 0; fi < corpus.size(); ++fi) {
        int node_n = plan_n->node_of(corpus[fi]);
        int node_i = plan_i->node_of((*tau_corpus)[fi]);
        for (int w = 0; w < W; ++w) {
          ++local.checks;
          bool rhs = ev_i.eval(node_i, w);
          bool lhs = ev_n.eval(node_n, w);
          if (lhs != rhs)
            local.add(index, w,
                      "translation of " + syntax::print(corpus[fi]) + " is " +
                          (rhs ? "true" : "false") + " but the source is " +
                          (lhs ? "true" : "false") + " on the unpaired model");
        }
      }
    };
  });
}

Report heredity_sweep(const Bounds& b, const std::vector<Formula>& corpus,
                      RunMode mode) {
  auto plan = std::make_shared<EvalPlan>(corpus, b.max_intensions);
  return run_sweep(b, mode, [&, plan]() {
    return [&corpus, plan, e = LazyEval{*plan}](const KripkeModel& m,
                                                std::uint64_t index,
                                                LocalReport& local) mutable {
      Evaluator& ev = e.bind(m);
      const int W = static_cast<int>(m.worlds.size());
      for (Formula f : corpus) {
        int node = plan->node_of(f);
        for (int a = 0; a < W; ++a)
          for (int bw = 0; bw < W; ++bw) {
            if (!m.reach[a][bw] || a == bw) continue;
            ++local.checks;
            if (ev.eval(node, a) && !ev.eval(node, bw))
              local.add(index, a,
                        syntax::print(f) + " true at " + m.worlds[a] +
                            " but false at successor " + m.worlds[bw]);
          }
      }
    };
  });
}

Report unfolding_sweep(const Bounds& b, const std::vector<Formula>& descriptions,
                       RunMode mode) {
  auto unfolds = std::make_shared<std::vector<Formula>>();
  std::vector<Formula> roots = descriptions;
  for (Formula d : descriptions) {
    unfolds->push_back(semantics::description_unfolding(d));
    roots.push_back(unfolds->back());
  }
  auto plan = std::make_shared<EvalPlan>(roots, b.max_intensions);

  return run_sweep(b, mode, [&, plan, unfolds]() {
    return [&descriptions, unfolds, plan, e = LazyEval{*plan}](
               const KripkeModel& m, std::uint64_t index,
               LocalReport& local) mutable {
      Evaluator& ev = e.bind(m);
      const int W = static_cast<int>(m.worlds.size());
      for (std::size_t fi = 0; fi < descriptions.size(); ++fi) {
        int node_d = plan->node_of(descriptions[fi]);
        int node_u = plan->node_of((*unfolds)[fi]);
        for (int w = 0; w < W; ++w) {
          ++local.checks;
          bool lhs = ev.eval(node_d, w);
          bool rhs = ev.eval(node_u, w);
          if (lhs != rhs)
            local.add(index, w,
                      syntax::print(descriptions[fi]) + " is " +
                          (lhs ? "true" : "false") + " but its unfolding is " +
                          (rhs ? "true" : "false"));
        }
      }
    };
  });
}

Report soundness_sweep(const kernel::Sequent& s, int worlds, int objects,
                       int intensions, RunMode mode) {
  std::vector<Formula> formulas(s.assumptions.begin(), s.assumptions.end());
  formulas.push_back(s.conclusion);
  semantics::StructureKind kind = s.logic.is_n4()
                                      ? semantics::StructureKind::Nelsonian
                                      : semantics::StructureKind::Intuitionistic;
  Bounds b = search::bounds_for(formulas, kind, s.logic.free, worlds, objects,
                                intensions);

  // Instantiations of the free variables, per possible domain size.
  std::set<Term> fv;
  for (Formula f : formulas)
    for (Term v : f.free_vars()) fv.insert(v);
  std::vector<Term> vars(fv.begin(), fv.end());

  struct InstantiatedSequent {
    std::vector<Formula> premises;
    Formula conclusion;
  };
  auto by_domain_size =
      std::make_shared<std::vector<std::vector<InstantiatedSequent>>>();
  by_domain_size->resize(intensions + 1);
  std::vector<Formula> roots;
  for (int nd = 1; nd <= intensions; ++nd) {
    std::vector<int> assign(vars.size(), 0);
    while (true) {
      InstantiatedSequent inst;
      auto instantiate = [&](Formula f) {
        for (std::size_t i = 0; i < vars.size(); ++i)
          f = syntax::substitute(f, vars[i], Term::injected(assign[i]));
        return f;
      };
      for (Formula f : s.assumptions) inst.premises.push_back(instantiate(f));
      inst.conclusion = instantiate(s.conclusion);
      for (Formula f : inst.premises) roots.push_back(f);
      roots.push_back(inst.conclusion);
      (*by_domain_size)[nd].push_back(std::move(inst));
      std::size_t i = 0;
      for (; i < vars.size(); ++i) {
        if (++assign[i] < nd) break;
        assign[i] = 0;
      }
      if (i == vars.size()) break;
    }
  }

  auto plan = std::make_shared<EvalPlan>(roots, intensions);
  return run_sweep(b, mode, [plan, by_domain_size]() {
    return [plan, by_domain_size, e = LazyEval{*plan}](const KripkeModel& m,
                                                       std::uint64_t index,
                                                       LocalReport& local) mutable {
      Evaluator& ev = e.bind(m);
      const int W = static_cast<int>(m.worlds.size());
      const auto& insts = (*by_domain_size)[m.intensions.size()];
      for (const auto& inst : insts) {
        for (int w = 0; w < W; ++w) {
          ++local.checks;
          bool all = true;
          for (Formula f : inst.premises)
            if (!ev.eval(f, w)) {
              all = false;
              break;
            }
          if (all && !ev.eval(inst.conclusion, w))
            local.add(index, w, "sequent fails: premises hold, conclusion " +
                                    syntax::print(inst.conclusion) + " does not");
        }
      }
    };
  });
}

}  // namespace sweeps
