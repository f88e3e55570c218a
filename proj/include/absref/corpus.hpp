#ifndef ABSREF_CORPUS_HPP
#define ABSREF_CORPUS_HPP

#include <string>
#include <vector>

#include "absref/control.hpp"
#include "absref/ctl.hpp"
#include "absref/general_frame.hpp"
#include "absref/transition_system.hpp"

namespace absref {
namespace corpus {

// Counter abstractions: the three-state sign abstraction, the five-state
// refinement, and the clamped counter itself (depth >= 2).
TransitionSystem fig1_t1();
TransitionSystem fig1_t2();
TransitionSystem fig1_s(int depth = 2);

// The four-state branching system whose abstraction lattice has worlds
// S, T1, T2, T3.
TransitionSystem fig2_s();

/// Button gadget: n pairs a<i>_1 -> a<i>_2 between s and f; collapsing a
/// pair unpushes the button formula, splitting it pushes it.
TransitionSystem gen_buttons(int n);
CtlFormula button_formula(int i);  // EX (a<i> & EX (a<i> & AX f))

/// Switch gadget truncation: K groups of L length-3 paths; per-path marker
/// atoms keep the desk-scale lattice from merging across paths. L >= 2.
TransitionSystem gen_switch(int paths, int groups);
CtlFormula switch_formula();  // EX (ph & AX (x -> AX !ph)), ph = AX (b -> AX (b & AX f))

/// Restricted-switch gadget truncation: n button pairs, m switch families of
/// K collapsible triples hanging off a t-chain closed by a self-loop.
TransitionSystem gen_rswitch(int n, int m, int K);
CtlFormula rswitch_button_b();       // EX (t & EG (t & !EX EX f))
CtlFormula rswitch_formula(int j);   // the triple-split detector for family j

/// Decision chain truncated to n levels plus a self-loop sink labelled f.
TransitionSystem gen_decision_chain(int n);
CtlFormula lambda_formula(int i);  // AG !a<i>
CtlFormula delta_formula(int i);   // AG !b<i>

struct ButtonLattice {
  GeneralFrame frame;
  int bottom = -1;  // fully collapsed world
  std::vector<CtlFormula> buttons;
};
ButtonLattice button_lattice(int n, RelationMode relation = RelationMode::Search);

struct SwitchFrame {
  GeneralFrame frame;
  int bottom = -1;
  CtlFormula sigma;
  // Budgeted sub-frame on which the switch pattern is claimed: worlds
  // retaining a fully collapsed group. breaking lists the worlds where the
  // unrestricted pattern fails.
  std::vector<bool> budget_domain;
  std::vector<int> breaking;
};
SwitchFrame switch_frame(int paths, int groups, long long max_worlds = 40);

struct RswitchFrame {
  GeneralFrame frame;
  int bottom = -1;
  std::vector<CtlFormula> buttons;   // adjoined button pair formulas
  CtlFormula button_b;
  std::vector<CtlFormula> switches;  // one per family
  // Budgeted sub-frame: worlds where B holds or every family is on or keeps
  // a fresh fully collapsed triple below the chain end.
  std::vector<bool> budget_domain;
  std::vector<int> breaking;  // worlds where the unrestricted pattern fails
};
RswitchFrame rswitch_frame(int n, int m, int K, long long max_worlds = 64);

struct DecisionFrame {
  GeneralFrame frame;
  int root = -1;  // the unpruned world
  std::vector<std::pair<CtlFormula, CtlFormula>> decisions;
};
/// Pruned-refinement sub-frame of the decision chain: one world per disjoint
/// (A, B) pair of pruned indices, built by predecessor duplication and
/// validated by is_abstraction; access by witness search.
DecisionFrame pruned_subframe(int n);

/// Built-in name resolution for the CLI: fig1_t1, fig1_t2, fig1_s[:depth],
/// fig2_s, buttons:n, switch:L,K, rswitch:n,m,K, decision_chain:n.
TransitionSystem by_name(const std::string& name);
bool is_builtin(const std::string& name);

}  // namespace corpus
}  // namespace absref

#endif
