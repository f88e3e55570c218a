#ifndef ABSREF_ABSTRACTION_HPP
#define ABSREF_ABSTRACTION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absref/transition_system.hpp"

namespace absref {

/// Surjective abstraction function certifying coarse ⤳ fine:
/// map sends every fine state to a coarse state, preserves labels, the
/// coarse transition relation is exactly the image of the fine one, and the
/// coarse initial set is exactly the image of the fine one.
struct AbstractionWitness {
  TransitionSystem fine;
  TransitionSystem coarse;
  std::vector<int> map;  // fine state index -> coarse state index
};

struct WitnessCheck {
  bool ok = true;
  // 1 = label preservation, 2 = transition image, 3 = initial image,
  // 0 = map not total/surjective.
  int condition = -1;
  std::string detail;
};

WitnessCheck is_abstraction(const AbstractionWitness& w);

AbstractionWitness identity_witness(const TransitionSystem& ts);

// Witness for a ⤳ c from witnesses a ⤳ b and b ⤳ c (map composition).
AbstractionWitness compose(const AbstractionWitness& coarse_to_mid,
                           const AbstractionWitness& mid_to_fine);

/// Quotient of ts by a label-uniform partition. Quotient state names are the
/// '+'-joined member names; the returned witness maps each state to its
/// block and passes is_abstraction by construction.
std::pair<TransitionSystem, AbstractionWitness> quotient(const TransitionSystem& ts,
                                                         const Partition& p);

enum class SearchOutcome { Found, NoWitness, Inconclusive };

struct AbstractionSearch {
  SearchOutcome outcome = SearchOutcome::NoWitness;
  std::optional<AbstractionWitness> witness;
  long long nodes = 0;  // backtracking nodes visited
};

inline constexpr long long kDefaultSearchBudget = 1'000'000;

/// Backtracking search for a witness that `fine` refines `coarse`. States are
/// assigned in declared order; candidates tried in coarse state order, pruned
/// by label equality, transition-image consistency and surjectivity counts.
/// Exceeding the node budget yields Inconclusive, never a wrong answer.
AbstractionSearch find_abstraction(const TransitionSystem& coarse,
                                   const TransitionSystem& fine,
                                   long long node_budget = kDefaultSearchBudget);

/// Product construction from the directedness proof: given witnesses from a
/// common fine system t onto two coarse systems, builds the common refinement
/// on { (f1(s), f2(s)) } and returns it with the two projection witnesses.
struct CommonRefinement {
  TransitionSystem product;
  AbstractionWitness to_first;
  AbstractionWitness to_second;
  AbstractionWitness from_base;  // t ⤳-style witness: product is an abstraction of t
};

CommonRefinement common_refinement(const TransitionSystem& t,
                                   const AbstractionWitness& w1,
                                   const AbstractionWitness& w2);

/// Finite lasso path: states[i] -> states[i+1] must be transitions, plus a
/// closing edge from the last state back to states[loop_start].
struct Lasso {
  std::vector<int> states;
  int loop_start = 0;
};

/// Refinement that isolates one lasso per initial state: disjoint union of a
/// non-initial copy of t and one chain-shaped component per initial state.
/// Every initial state of the result has exactly one outgoing transition.
/// The lasso map must cover exactly t's initial states.
std::pair<TransitionSystem, AbstractionWitness> path_isolating_refinement(
    const TransitionSystem& t, const std::map<int, Lasso>& lassos);

}  // namespace absref

#endif
