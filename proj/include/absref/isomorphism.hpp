#ifndef ABSREF_ISOMORPHISM_HPP
#define ABSREF_ISOMORPHISM_HPP

#include <optional>
#include <string>
#include <vector>

#include "absref/transition_system.hpp"

namespace absref {

/// Canonical form of a system: a string key equal for exactly the isomorphic
/// systems (same label sets, transitions, initial set up to renaming), plus
/// the state order realizing it (canonical position -> state index).
struct CanonicalForm {
  std::string key;
  std::vector<int> order;
};

CanonicalForm canonical_form(const TransitionSystem& ts);

/// Label-, transition- and initial-set-preserving bijection a -> b, or
/// nullopt. Decided by comparing canonical forms.
std::optional<std::vector<int>> iso_check(const TransitionSystem& a,
                                          const TransitionSystem& b);

}  // namespace absref

#endif
