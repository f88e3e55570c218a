#include "absref/labeling.hpp"

#include <algorithm>

#include "absref/ctl_check.hpp"
#include "absref/error.hpp"
#include "absref/frame_gen.hpp"

namespace absref {

namespace {

bool in_domain(const WorldRestriction& domain, int w) {
  return !domain || (*domain)[w];
}

}  // namespace

LabelingCheck verify_labeling(const Labeling& l, const GeneralFrame& target, int anchor,
                              const WorldRestriction& domain) {
  if (l.root < 0 || l.root >= l.frame.num_worlds()) throw Error("labeling root out of range");
  if (l.phi.size() != l.frame.worlds.size()) throw Error("labeling must cover every node");
  if (anchor < 0 || anchor >= target.num_worlds()) throw Error("anchor out of range");
  const int nodes = l.frame.num_worlds();
  // truth[v][d]: target world d satisfies phi_v.
  std::vector<std::vector<bool>> truth(nodes);
  for (int v = 0; v < nodes; ++v) {
    truth[v].resize(target.num_worlds());
    for (int d = 0; d < target.num_worlds(); ++d)
      truth[v][d] = holds(target.worlds[d].system, l.phi[v]);
  }
  auto node_of = [&](int d) {
    int found = -1;
    for (int v = 0; v < nodes; ++v)
      if (truth[v][d]) {
        if (found >= 0) return -2;  // more than one
        found = v;
      }
    return found;
  };
  for (int d = 0; d < target.num_worlds(); ++d) {
    if (!target.edge(anchor, d) || !in_domain(domain, d)) continue;
    int w = node_of(d);
    if (w == -1) return {false, 1, "no phi holds at " + target.worlds[d].name};
    if (w == -2) return {false, 1, "several phi hold at " + target.worlds[d].name};
    for (int v = 0; v < nodes; ++v) {
      bool reachable = false;
      for (int e = 0; e < target.num_worlds() && !reachable; ++e)
        reachable = target.edge(d, e) && truth[v][e];
      bool expected = l.frame.edge(w, v);
      if (reachable != expected)
        return {false, 2, "from " + target.worlds[d].name + " (node " + l.frame.worlds[w] +
                              ") node " + l.frame.worlds[v] +
                              (expected ? " should be reachable" : " should be unreachable")};
    }
  }
  if (node_of(anchor) != l.root)
    return {false, 3, "anchor " + target.worlds[anchor].name + " does not satisfy phi of root " +
                          l.frame.worlds[l.root]};
  return {};
}

TransferResult transfer_countermodel(const Labeling& l, const GeneralFrame& target, int anchor,
                                     const FiniteCountermodel& cm,
                                     const WorldRestriction& domain) {
  if (auto check = verify_labeling(l, target, anchor, domain); !check)
    throw Error("transfer: labeling invalid (condition " + std::to_string(check.condition) +
                "): " + check.detail);
  if (cm.frame.worlds != l.frame.worlds)
    throw Error("transfer: countermodel frame differs from labeling frame");
  for (int a = 0; a < cm.frame.num_worlds(); ++a)
    if (cm.frame.access[a] != l.frame.access[a])
      throw Error("transfer: countermodel frame differs from labeling frame");
  if (eval_modal(cm.frame, cm.valuation, cm.root, cm.formula))
    throw Error("transfer: countermodel does not falsify its formula");

  TransferResult out;
  for (const auto& p : cm.formula.props()) {
    auto it = cm.valuation.find(p);
    if (it == cm.valuation.end()) throw Error("transfer: countermodel misses prop " + p);
    // phi-disjunction over the nodes where p holds; empty disjunction = false.
    CtlFormula acc;
    for (int v = 0; v < l.frame.num_worlds(); ++v) {
      if (!it->second[v]) continue;
      CtlFormula part = l.phi[v];
      acc = acc.valid_handle() ? CtlFormula::disj(std::move(acc), std::move(part)) : part;
    }
    if (!acc.valid_handle()) acc = CtlFormula::make_false();
    std::vector<int> set;
    for (int d = 0; d < target.num_worlds(); ++d)
      if (holds(target.worlds[d].system, acc)) set.push_back(d);
    // Block view; the set is block-closed because it is a CTL extension.
    std::vector<bool> member(target.num_worlds(), false);
    for (int d : set) member[d] = true;
    std::vector<int> blocks;
    for (int b = 0; b < target.num_blocks(); ++b) {
      bool any = false, all = true;
      for (int d : target.blocks[b]) {
        any = any || member[d];
        all = all && member[d];
      }
      if (any && !all) throw InternalError("transferred valuation is not block-closed");
      if (any) blocks.push_back(b);
    }
    out.valuation.blocks_of.emplace(p, std::move(blocks));
    out.world_sets.emplace(p, std::move(set));
    out.prop_formulas.emplace(p, std::move(acc));
  }
  // Postcondition: the lifted valuation falsifies the formula at the anchor.
  Valuation expanded;
  for (const auto& [p, set] : out.world_sets) {
    std::vector<bool> ws(target.num_worlds(), false);
    for (int d : set) ws[d] = true;
    expanded.emplace(p, std::move(ws));
  }
  if (eval_modal(target.as_kripke(), expanded, anchor, cm.formula))
    throw InternalError("transferred countermodel fails to falsify at the anchor");
  return out;
}

namespace {

CtlFormula conjoin(CtlFormula acc, CtlFormula next) {
  return acc.valid_handle() ? CtlFormula::conj(std::move(acc), std::move(next)) : next;
}

CtlFormula family_conjunction(const std::vector<CtlFormula>& family, unsigned positive) {
  CtlFormula acc;
  for (std::size_t i = 0; i < family.size(); ++i) {
    CtlFormula f = family[i];
    acc = conjoin(std::move(acc), positive >> i & 1 ? f : CtlFormula::negation(f));
  }
  return acc;
}

}  // namespace

Labeling build_preboolean_labeling(const std::vector<CtlFormula>& buttons,
                                   const std::vector<CtlFormula>& switches) {
  const int n = static_cast<int>(buttons.size());
  const int m = static_cast<int>(switches.size());
  Labeling l;
  l.frame = gen_preboolean(n, 1 << m);
  // Worlds of gen_preboolean(n, 2^m) come as (I, i) with i counting cluster
  // members; member i encodes the switch set J = bits of i.
  for (unsigned I = 0; I < (1u << n); ++I)
    for (unsigned J = 0; J < (1u << m); ++J) {
      CtlFormula f = conjoin(family_conjunction(buttons, I), family_conjunction(switches, J));
      if (!f.valid_handle()) f = CtlFormula::make_true();
      l.phi.push_back(std::move(f));
    }
  l.root = 0;  // (empty set, all switches off)
  return l;
}

Labeling build_lollipop_labeling(const std::vector<CtlFormula>& buttons,
                                 const CtlFormula& button_b,
                                 const std::vector<CtlFormula>& rswitches) {
  const int n = static_cast<int>(buttons.size());
  const int m = static_cast<int>(rswitches.size());
  Labeling l;
  l.frame = gen_lollipop(n, m);
  for (const auto& [I, J] : lollipop_nodes(n, m)) {
    CtlFormula f = conjoin(family_conjunction(buttons, I), family_conjunction(rswitches, J));
    f = conjoin(std::move(f), CtlFormula::negation(button_b));
    l.phi.push_back(std::move(f));
  }
  l.phi.push_back(button_b);  // the top element
  l.root = 0;
  return l;
}

Labeling build_fpf_labeling(const std::vector<std::pair<CtlFormula, CtlFormula>>& decisions) {
  const int n = static_cast<int>(decisions.size());
  Labeling l;
  l.frame = gen_fpf(n);
  auto fns = fpf_functions(n);
  for (std::size_t w = 0; w < fns.size(); ++w) {
    CtlFormula f;
    for (int i = 0; i < n; ++i) {
      const auto& [lambda, delta] = decisions[i];
      switch (fns[w][i]) {
        case 0: f = conjoin(std::move(f), lambda); break;
        case 1: f = conjoin(std::move(f), delta); break;
        default:
          f = conjoin(std::move(f), CtlFormula::negation(lambda));
          f = conjoin(std::move(f), CtlFormula::negation(delta));
      }
    }
    if (!f.valid_handle()) f = CtlFormula::make_true();
    l.phi.push_back(std::move(f));
    if (std::all_of(fns[w].begin(), fns[w].end(), [](int v) { return v < 0; }))
      l.root = static_cast<int>(w);
  }
  return l;
}

}  // namespace absref
