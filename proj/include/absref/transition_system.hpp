#ifndef ABSREF_TRANSITION_SYSTEM_HPP
#define ABSREF_TRANSITION_SYSTEM_HPP

#include <string>
#include <utility>
#include <vector>

namespace absref {

/// Finite labelled transition system with initial states. States are kept in
/// their declared order; atomic propositions are kept sorted by name so label
/// sets of different systems over the same AP set are directly comparable.
/// Values are immutable after finalize(); every operation on them is pure.
struct TransitionSystem {
  std::vector<std::string> states;               // declared order, unique
  std::vector<std::string> ap;                   // sorted, unique
  std::vector<std::vector<int>> labels;          // per state, sorted ap indices
  std::vector<int> initial;                      // sorted state indices
  std::vector<std::pair<int, int>> transitions;  // sorted, unique
  std::vector<std::vector<int>> succ;            // per state, sorted

  int num_states() const { return static_cast<int>(states.size()); }
  int state_index(const std::string& name) const;  // -1 if unknown
  int ap_index(const std::string& name) const;     // -1 if unknown
  bool has_edge(int from, int to) const;
  bool is_initial(int s) const;
  std::vector<std::vector<int>> predecessors() const;
  // Label of a state as sorted AP names (comparable across systems).
  std::vector<std::string> label_names(int s) const;
  bool same_ap(const TransitionSystem& other) const { return ap == other.ap; }

  // Sorts ap (remapping labels), initial and transitions, and builds succ.
  // Throws Error on duplicate state/ap names or out-of-range references.
  void finalize();
};

// Convenience builder working on names. Label map entries and transitions
// reference states and APs by name; missing or unknown names throw.
TransitionSystem make_ts(std::vector<std::string> states,
                         std::vector<std::string> ap,
                         const std::vector<std::pair<std::string, std::vector<std::string>>>& labels,
                         const std::vector<std::string>& initial,
                         const std::vector<std::pair<std::string, std::string>>& transitions);

/// Invariant diagnostics; empty result iff the system is valid. Each entry
/// starts with a stable phrase ("terminal state", "empty initial set", ...).
std::vector<std::string> validate(const TransitionSystem& ts);

/// Partition of a system's states. Blocks are canonical: each block sorted,
/// blocks ordered by smallest member.
struct Partition {
  std::vector<int> block_of;             // state -> block id
  std::vector<std::vector<int>> blocks;  // canonical form

  static Partition from_block_of(std::vector<int> block_of);
  static Partition singletons(int n);
  int num_blocks() const { return static_cast<int>(blocks.size()); }
  // True iff every block of this partition is contained in a block of
  // `coarser` (i.e. this partition is finer or equal).
  bool refines(const Partition& coarser) const;
  bool operator==(const Partition& other) const { return block_of == other.block_of; }
};

// First block whose members do not all carry the same label set, or -1.
int non_uniform_block(const TransitionSystem& ts, const Partition& p);

}  // namespace absref

#endif
