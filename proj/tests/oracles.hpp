// Test-only oracles: independent reimplementations used to cross-check the
// library. The CTL oracle works by explicit path unrolling with lasso
// detection and evaluates sugar operators directly (no normalization); the
// modal oracle is a direct recursion over successor lists. Neither shares
// code with the checked implementations.
#ifndef ABSREF_TESTS_ORACLES_HPP
#define ABSREF_TESTS_ORACLES_HPP

#include <random>
#include <set>
#include <vector>

#include "absref/ctl.hpp"
#include "absref/modal.hpp"
#include "absref/transition_system.hpp"

namespace oracle {

using absref::CtlFormula;
using absref::CtlOp;
using absref::KripkeFrame;
using absref::ModalFormula;
using absref::ModalOp;
using absref::TransitionSystem;
using absref::Valuation;

inline bool ctl_eval(const TransitionSystem& ts, const CtlFormula& f, int s);

// Exists a path from s whose states satisfy a until one satisfies b.
inline bool eu_path(const TransitionSystem& ts, const CtlFormula& a, const CtlFormula& b,
                    int s, std::set<int> on_path) {
  if (ctl_eval(ts, b, s)) return true;
  if (!ctl_eval(ts, a, s)) return false;
  if (on_path.count(s)) return false;  // cycling cannot create a new witness
  on_path.insert(s);
  for (int t : ts.succ[s])
    if (eu_path(ts, a, b, t, on_path)) return true;
  return false;
}

// All paths from s satisfy a-until-b; a lasso inside the a-and-not-b zone is
// a violating path.
inline bool au_path(const TransitionSystem& ts, const CtlFormula& a, const CtlFormula& b,
                    int s, std::set<int> on_path) {
  if (ctl_eval(ts, b, s)) return true;
  if (!ctl_eval(ts, a, s)) return false;
  if (on_path.count(s)) return false;
  on_path.insert(s);
  for (int t : ts.succ[s])
    if (!au_path(ts, a, b, t, on_path)) return false;
  return true;
}

// Exists a path staying in f forever (detected by an f-lasso).
inline bool eg_path(const TransitionSystem& ts, const CtlFormula& f, int s,
                    std::set<int> on_path) {
  if (!ctl_eval(ts, f, s)) return false;
  if (on_path.count(s)) return true;
  on_path.insert(s);
  for (int t : ts.succ[s])
    if (eg_path(ts, f, t, on_path)) return true;
  return false;
}

// All paths eventually hit f; a lasso avoiding f is a violation.
inline bool af_path(const TransitionSystem& ts, const CtlFormula& f, int s,
                    std::set<int> on_path) {
  if (ctl_eval(ts, f, s)) return true;
  if (on_path.count(s)) return false;
  on_path.insert(s);
  for (int t : ts.succ[s])
    if (!af_path(ts, f, t, on_path)) return false;
  return true;
}

inline bool ctl_eval(const TransitionSystem& ts, const CtlFormula& f, int s) {
  switch (f.op()) {
    case CtlOp::True: return true;
    case CtlOp::False: return false;
    case CtlOp::Atom: {
      for (const auto& a : ts.label_names(s))
        if (a == f.atom_name()) return true;
      return false;
    }
    case CtlOp::Not: return !ctl_eval(ts, f.left(), s);
    case CtlOp::And: return ctl_eval(ts, f.left(), s) && ctl_eval(ts, f.right(), s);
    case CtlOp::Or: return ctl_eval(ts, f.left(), s) || ctl_eval(ts, f.right(), s);
    case CtlOp::Implies: return !ctl_eval(ts, f.left(), s) || ctl_eval(ts, f.right(), s);
    case CtlOp::ExistsNext: {
      for (int t : ts.succ[s])
        if (ctl_eval(ts, f.left(), t)) return true;
      return false;
    }
    case CtlOp::ForallNext: {
      for (int t : ts.succ[s])
        if (!ctl_eval(ts, f.left(), t)) return false;
      return true;
    }
    case CtlOp::ExistsUntil: return eu_path(ts, f.left(), f.right(), s, {});
    case CtlOp::ForallUntil: return au_path(ts, f.left(), f.right(), s, {});
    case CtlOp::ExistsFinally: return eu_path(ts, CtlFormula::make_true(), f.left(), s, {});
    case CtlOp::ForallFinally: return af_path(ts, f.left(), s, {});
    case CtlOp::ExistsGlobally: return eg_path(ts, f.left(), s, {});
    case CtlOp::ForallGlobally: {
      // All reachable states satisfy f.
      std::set<int> seen{s};
      std::vector<int> work{s};
      while (!work.empty()) {
        int u = work.back();
        work.pop_back();
        if (!ctl_eval(ts, f.left(), u)) return false;
        for (int t : ts.succ[u])
          if (seen.insert(t).second) work.push_back(t);
      }
      return true;
    }
  }
  return false;
}

inline bool modal_eval(const KripkeFrame& fr, const Valuation& v, int w,
                       const ModalFormula& f) {
  switch (f.op()) {
    case ModalOp::True: return true;
    case ModalOp::False: return false;
    case ModalOp::Prop: return v.at(f.prop_name())[w];
    case ModalOp::Not: return !modal_eval(fr, v, w, f.left());
    case ModalOp::And: return modal_eval(fr, v, w, f.left()) && modal_eval(fr, v, w, f.right());
    case ModalOp::Or: return modal_eval(fr, v, w, f.left()) || modal_eval(fr, v, w, f.right());
    case ModalOp::Implies:
      return !modal_eval(fr, v, w, f.left()) || modal_eval(fr, v, w, f.right());
    case ModalOp::Diamond: {
      for (int u : fr.access[w])
        if (modal_eval(fr, v, u, f.left())) return true;
      return false;
    }
    case ModalOp::Box: {
      for (int u : fr.access[w])
        if (!modal_eval(fr, v, u, f.left())) return false;
      return true;
    }
  }
  return false;
}

// Every label-compatible surjection satisfying the exact-image conditions.
inline std::vector<std::vector<int>> all_witness_maps(const TransitionSystem& coarse,
                                                      const TransitionSystem& fine) {
  std::vector<std::vector<int>> found;
  std::vector<int> map(fine.num_states(), 0);
  const int nc = coarse.num_states();
  for (;;) {
    bool ok = true;
    for (int s = 0; s < fine.num_states() && ok; ++s)
      ok = fine.label_names(s) == coarse.label_names(map[s]);
    if (ok) {
      std::set<int> image(map.begin(), map.end());
      ok = static_cast<int>(image.size()) == nc;
    }
    if (ok) {
      std::set<std::pair<int, int>> img;
      for (const auto& [a, b] : fine.transitions) img.emplace(map[a], map[b]);
      ok = img == std::set<std::pair<int, int>>(coarse.transitions.begin(),
                                                coarse.transitions.end());
    }
    if (ok) {
      std::set<int> init;
      for (int s : fine.initial) init.insert(map[s]);
      ok = init == std::set<int>(coarse.initial.begin(), coarse.initial.end());
    }
    if (ok) found.push_back(map);
    int i = 0;
    while (i < fine.num_states() && ++map[i] == nc) map[i++] = 0;
    if (i == fine.num_states()) break;
  }
  return found;
}

// Deterministic random generators for property tests.
struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin() { return pick(0, 1) == 1; }

  TransitionSystem system(int max_states, const std::vector<std::string>& ap) {
    int n = pick(1, max_states);
    std::vector<std::string> states;
    std::vector<std::pair<std::string, std::vector<std::string>>> labels;
    for (int s = 0; s < n; ++s) {
      states.push_back("q" + std::to_string(s));
      std::vector<std::string> props;
      for (const auto& a : ap)
        if (coin()) props.push_back(a);
      labels.push_back({states.back(), props});
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int s = 0; s < n; ++s) {
      int out = pick(1, std::min(n, 3));
      std::set<int> targets;
      while (static_cast<int>(targets.size()) < out) targets.insert(pick(0, n - 1));
      for (int t : targets) edges.push_back({states[s], states[t]});
    }
    std::vector<std::string> initial;
    for (int s = 0; s < n; ++s)
      if (coin()) initial.push_back(states[s]);
    if (initial.empty()) initial.push_back(states[pick(0, n - 1)]);
    return absref::make_ts(states, ap, labels, initial, edges);
  }

  CtlFormula ctl(int depth, const std::vector<std::string>& ap) {
    int top = depth > 0 ? 12 : 5;
    switch (pick(0, top)) {
      case 0: return CtlFormula::make_true();
      case 1: return CtlFormula::make_false();
      case 2: case 3:
        return CtlFormula::atom(ap[pick(0, static_cast<int>(ap.size()) - 1)]);
      case 4: return CtlFormula::negation(ctl(depth, ap));
      case 5:
        return pick(0, 1) ? CtlFormula::conj(ctl(depth, ap), ctl(depth, ap))
                          : CtlFormula::disj(ctl(depth, ap), ctl(depth, ap));
      case 6: return CtlFormula::implies(ctl(depth, ap), ctl(depth, ap));
      case 7: return CtlFormula::unary(CtlOp::ExistsNext, ctl(depth - 1, ap));
      case 8: return CtlFormula::unary(CtlOp::ForallNext, ctl(depth - 1, ap));
      case 9: return CtlFormula::until(CtlOp::ExistsUntil, ctl(depth - 1, ap), ctl(depth - 1, ap));
      case 10: return CtlFormula::until(CtlOp::ForallUntil, ctl(depth - 1, ap), ctl(depth - 1, ap));
      case 11:
        return CtlFormula::unary(pick(0, 1) ? CtlOp::ExistsFinally : CtlOp::ForallFinally,
                                 ctl(depth - 1, ap));
      default:
        return CtlFormula::unary(pick(0, 1) ? CtlOp::ExistsGlobally : CtlOp::ForallGlobally,
                                 ctl(depth - 1, ap));
    }
  }

  KripkeFrame frame(int max_worlds) {
    KripkeFrame f;
    int n = pick(1, max_worlds);
    for (int w = 0; w < n; ++w) f.worlds.push_back("v" + std::to_string(w));
    f.access.resize(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (coin()) f.access[a].push_back(b);
    return f;
  }

  ModalFormula modal(int depth, const std::vector<std::string>& props) {
    int top = depth > 0 ? 8 : 5;
    switch (pick(0, top)) {
      case 0: return ModalFormula::make_true();
      case 1: return ModalFormula::make_false();
      case 2: case 3:
        return ModalFormula::prop(props[pick(0, static_cast<int>(props.size()) - 1)]);
      case 4: return ModalFormula::negation(modal(depth, props));
      case 5:
        return pick(0, 1) ? ModalFormula::conj(modal(depth, props), modal(depth, props))
                          : ModalFormula::disj(modal(depth, props), modal(depth, props));
      case 6: return ModalFormula::implies(modal(depth, props), modal(depth, props));
      case 7: return ModalFormula::diamond(modal(depth - 1, props));
      default: return ModalFormula::box(modal(depth - 1, props));
    }
  }
};

}  // namespace oracle

#endif
