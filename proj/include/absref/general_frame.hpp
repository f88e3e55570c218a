#ifndef ABSREF_GENERAL_FRAME_HPP
#define ABSREF_GENERAL_FRAME_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absref/abstraction.hpp"
#include "absref/bisimulation.hpp"
#include "absref/ctl.hpp"
#include "absref/modal.hpp"
#include "absref/transition_system.hpp"

namespace absref {

/// A world of a refinement general frame: a finite system, optionally with
/// the seed partitions it arose from (lattice mode keeps every partition
/// mapping to the world, iso-merge collapses them onto one world).
struct World {
  int id = -1;
  std::string name;
  TransitionSystem system;
  std::vector<Partition> partitions;  // provenance; empty outside lattice mode
};

enum class LatticeMode { IsoMerge, PartitionDistinct };

struct EnumOptions {
  LatticeMode mode = LatticeMode::IsoMerge;
  int max_states = 14;       // cap on the seed size
  long long max_worlds = 40; // cap on emitted worlds
};

struct EnumResult {
  std::vector<World> worlds;
  bool complete = true;  // false when a cap cut the enumeration short
};

/// All label-uniform partitions of the seed (restricted growth strings,
/// finest first), quotiented; iso-merge mode deduplicates by canonical form.
EnumResult enumerate_abstractions(const TransitionSystem& seed, const EnumOptions& opts = {});

enum class RelationMode { Search, Coarsen };

struct GeneralFrame {
  std::vector<World> worlds;
  std::vector<std::vector<bool>> access;   // reflexive-transitive ⤳ matrix
  std::vector<int> block_of;               // world -> CTL-equivalence block
  std::vector<std::vector<int>> blocks;    // block -> sorted world ids
  std::vector<CtlFormula> block_formulas;  // optional; empty when not built
  bool access_complete = true;
  std::vector<std::pair<int, int>> inconclusive_edges;

  int num_worlds() const { return static_cast<int>(worlds.size()); }
  int num_blocks() const { return static_cast<int>(blocks.size()); }
  bool edge(int a, int b) const { return access[a][b]; }
  KripkeFrame as_kripke() const;
  int world_by_name(const std::string& name) const;  // -1 if unknown
  /// World accessing every world (the coarsest one), or -1.
  int root_world() const;
  bool has_block_formulas() const { return !block_formulas.empty(); }
};

struct BuildOptions {
  RelationMode relation = RelationMode::Search;
  long long search_budget = 1'000'000;
  // Build CTL block indicator formulas: 0 = never, 1 = always,
  // -1 = only for frames with at most 16 worlds.
  int block_formulas = -1;
};

/// Assembles the general frame: access by pairwise witness search or by
/// provenance-partition coarsening closed under iso; CTL-equivalence blocks
/// from the bisimulation of the disjoint union (worlds equivalent iff their
/// initial-state block sets agree); block indicator formulas from pairwise
/// distinguishing formulas, re-verified by check_ctl.
GeneralFrame build_general_frame(std::vector<World> worlds, const BuildOptions& opts = {});

// Builds the indicator formulas on demand (no-op if already present).
void ensure_block_formulas(GeneralFrame& g);

/// Admissible valuation: per prop, a set of CTL-equivalence blocks.
struct AdmissibleValuation {
  std::map<std::string, std::vector<int>> blocks_of;

  std::vector<bool> world_set(const GeneralFrame& g, const std::string& prop) const;
};

bool eval_general(const GeneralFrame& g, const AdmissibleValuation& v, int world,
                  const ModalFormula& f);

struct GeneralCountermodel {
  AdmissibleValuation valuation;
  int world = -1;
  std::map<std::string, CtlFormula> prop_formulas;       // when block formulas exist
  std::map<std::string, std::vector<int>> world_sets;    // expansion of the valuation
};

struct GeneralValidity {
  Verdict verdict = Verdict::Valid;
  std::optional<GeneralCountermodel> countermodel;
  unsigned long long required = 0;
};

/// Quantifies over all block-closed valuations (largest sets first) and all
/// worlds (or only `at`). On falsification emits the valuation plus, when
/// block formulas exist, one CTL formula per prop whose extension equals the
/// falsifying set (re-verified by check_ctl before returning).
GeneralValidity valid_on_general(const GeneralFrame& g, const ModalFormula& f,
                                 std::optional<int> at = std::nullopt,
                                 unsigned long long budget = kDefaultValuationBudget);

}  // namespace absref

#endif
