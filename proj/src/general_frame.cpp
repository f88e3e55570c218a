#include "absref/general_frame.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "absref/ctl_check.hpp"
#include "absref/error.hpp"
#include "absref/isomorphism.hpp"

namespace absref {

namespace {

// Label-uniform partitions as restricted growth strings, finest first.
// Block ids are constrained so that states can only join blocks whose
// members carry the same label set.
void enumerate_partitions(const TransitionSystem& seed,
                          const std::function<bool(const Partition&)>& emit) {
  const int n = seed.num_states();
  std::vector<int> assign(n, 0);
  std::vector<int> block_label(n, -1);  // block -> representative state
  // Recursive finest-first order: at each state prefer opening a new block
  // before joining existing ones in decreasing id order.
  std::function<bool(int, int)> rec = [&](int s, int used) -> bool {
    if (s == n) return emit(Partition::from_block_of(assign));
    // New block first (keeps the all-singletons partition first overall).
    block_label[used] = s;
    assign[s] = used;
    if (!rec(s + 1, used + 1)) return false;
    for (int b = used - 1; b >= 0; --b) {
      if (seed.labels[block_label[b]] != seed.labels[s]) continue;
      assign[s] = b;
      if (!rec(s + 1, used)) return false;
    }
    return true;
  };
  rec(0, 0);
}

}  // namespace

EnumResult enumerate_abstractions(const TransitionSystem& seed, const EnumOptions& opts) {
  if (seed.num_states() > opts.max_states)
    throw Error("enumerate_abstractions: seed exceeds max_states cap");
  if (!validate(seed).empty()) throw Error("enumerate_abstractions: seed is not a valid system");
  EnumResult result;
  std::map<std::string, int> canon_index;
  auto handle = [&](const Partition& p) -> bool {
    auto [q, w] = quotient(seed, p);
    if (opts.mode == LatticeMode::IsoMerge) {
      auto key = canonical_form(q).key;
      auto it = canon_index.find(key);
      if (it != canon_index.end()) {
        result.worlds[it->second].partitions.push_back(p);
        return true;
      }
      if (static_cast<long long>(result.worlds.size()) >= opts.max_worlds) {
        result.complete = false;
        return false;
      }
      canon_index.emplace(key, static_cast<int>(result.worlds.size()));
    } else if (static_cast<long long>(result.worlds.size()) >= opts.max_worlds) {
      result.complete = false;
      return false;
    }
    World world;
    world.id = static_cast<int>(result.worlds.size());
    world.name = "w" + std::to_string(world.id);
    world.system = std::move(q);
    world.partitions.push_back(p);
    result.worlds.push_back(std::move(world));
    return true;
  };
  enumerate_partitions(seed, handle);
  return result;
}

KripkeFrame GeneralFrame::as_kripke() const {
  KripkeFrame f;
  for (const auto& w : worlds) f.worlds.push_back(w.name);
  f.access.resize(worlds.size());
  for (int a = 0; a < num_worlds(); ++a)
    for (int b = 0; b < num_worlds(); ++b)
      if (access[a][b]) f.access[a].push_back(b);
  return f;
}

int GeneralFrame::world_by_name(const std::string& name) const {
  for (const auto& w : worlds)
    if (w.name == name) return w.id;
  return -1;
}

int GeneralFrame::root_world() const {
  for (int a = 0; a < num_worlds(); ++a) {
    bool all = true;
    for (int b = 0; b < num_worlds() && all; ++b) all = access[a][b];
    if (all) return a;
  }
  return -1;
}

namespace {

std::vector<std::vector<bool>> access_by_search(const std::vector<World>& worlds,
                                                long long budget,
                                                std::vector<std::pair<int, int>>& inconclusive) {
  const int n = static_cast<int>(worlds.size());
  std::vector<std::vector<bool>> access(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) {
        access[a][b] = true;
        continue;
      }
      auto search = find_abstraction(worlds[a].system, worlds[b].system, budget);
      if (search.outcome == SearchOutcome::Found) access[a][b] = true;
      else if (search.outcome == SearchOutcome::Inconclusive) inconclusive.emplace_back(a, b);
    }
  return access;
}

std::vector<std::vector<bool>> access_by_coarsening(const std::vector<World>& worlds) {
  const int n = static_cast<int>(worlds.size());
  for (const auto& w : worlds)
    if (w.partitions.empty())
      throw Error("relation mode 'coarsen' needs partition provenance on every world");
  std::vector<std::vector<bool>> access(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) {
        access[a][b] = true;
        continue;
      }
      bool found = false;
      for (const auto& pa : worlds[a].partitions) {
        for (const auto& pb : worlds[b].partitions)
          if (pb.refines(pa)) {
            found = true;
            break;
          }
        if (found) break;
      }
      access[a][b] = found;
    }
  return access;
}

}  // namespace

void ensure_block_formulas(GeneralFrame& g) {
  if (g.has_block_formulas() || g.num_blocks() == 0) return;
  std::vector<TransitionSystem> systems;
  for (const auto& w : g.worlds) systems.push_back(w.system);
  auto bp = bisim_classes(systems);
  // Initial-state bisimulation class per world. Indicator formulas are built
  // for worlds with one initial class each (all lattice worlds qualify since
  // quotients of a single-initial seed have a single initial state).
  std::vector<int> init_class(g.num_worlds());
  for (int i = 0; i < g.num_worlds(); ++i) {
    std::set<int> classes;
    for (int s : g.worlds[i].system.initial)
      classes.insert(bp.partition.block_of[bp.subject.index(i, s)]);
    if (classes.size() != 1)
      throw Error("block indicator formulas need worlds with a single initial class");
    init_class[i] = *classes.begin();
  }
  g.block_formulas.resize(g.num_blocks());
  for (int blk = 0; blk < g.num_blocks(); ++blk) {
    int rep = g.blocks[blk].front();
    CtlFormula acc;
    for (int other = 0; other < g.num_blocks(); ++other) {
      if (other == blk) continue;
      int sa = bp.partition.blocks[init_class[rep]].front();
      int sb = bp.partition.blocks[init_class[g.blocks[other].front()]].front();
      CtlFormula sep = distinguishing_formula(bp, sa, sb);
      acc = acc.valid_handle() ? CtlFormula::conj(std::move(acc), std::move(sep)) : sep;
    }
    if (!acc.valid_handle()) acc = CtlFormula::make_true();
    // Block soundness: the indicator must hold exactly on the block.
    for (int w = 0; w < g.num_worlds(); ++w)
      if (holds(g.worlds[w].system, acc) != (g.block_of[w] == blk))
        throw InternalError("block formula fails re-verification");
    g.block_formulas[blk] = std::move(acc);
  }
}

GeneralFrame build_general_frame(std::vector<World> worlds, const BuildOptions& opts) {
  if (worlds.empty()) throw Error("build_general_frame: no worlds");
  for (auto& w : worlds)
    if (!w.system.same_ap(worlds.front().system))
      throw Error("build_general_frame: worlds must share one ap set");
  for (int i = 0; i < static_cast<int>(worlds.size()); ++i) {
    worlds[i].id = i;
    if (worlds[i].name.empty()) worlds[i].name = "w" + std::to_string(i);
  }
  GeneralFrame g;
  g.worlds = std::move(worlds);
  if (opts.relation == RelationMode::Search)
    g.access = access_by_search(g.worlds, opts.search_budget, g.inconclusive_edges);
  else
    g.access = access_by_coarsening(g.worlds);
  g.access_complete = g.inconclusive_edges.empty();

  // CTL-equivalence blocks from the bisimulation of the disjoint union.
  std::vector<TransitionSystem> systems;
  for (const auto& w : g.worlds) systems.push_back(w.system);
  auto bp = bisim_classes(systems);
  std::map<std::set<int>, int> by_init_blocks;
  g.block_of.assign(g.num_worlds(), -1);
  for (int i = 0; i < g.num_worlds(); ++i) {
    std::set<int> key;
    for (int s : g.worlds[i].system.initial) key.insert(bp.partition.block_of[bp.subject.index(i, s)]);
    auto it = by_init_blocks.find(key);
    if (it == by_init_blocks.end()) {
      it = by_init_blocks.emplace(std::move(key), static_cast<int>(g.blocks.size())).first;
      g.blocks.emplace_back();
    }
    g.block_of[i] = it->second;
    g.blocks[it->second].push_back(i);
  }
  // Canonical block order: by smallest member world.
  {
    std::vector<int> order(g.num_blocks());
    for (int b = 0; b < g.num_blocks(); ++b) order[b] = b;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return g.blocks[x].front() < g.blocks[y].front(); });
    std::vector<std::vector<int>> blocks;
    std::vector<int> renumber(g.num_blocks());
    for (int i = 0; i < g.num_blocks(); ++i) {
      renumber[order[i]] = i;
      blocks.push_back(g.blocks[order[i]]);
    }
    g.blocks = std::move(blocks);
    for (int w = 0; w < g.num_worlds(); ++w) g.block_of[w] = renumber[g.block_of[w]];
  }
  if (opts.block_formulas == 1 || (opts.block_formulas < 0 && g.num_worlds() <= 16))
    ensure_block_formulas(g);
  return g;
}

std::vector<bool> AdmissibleValuation::world_set(const GeneralFrame& g,
                                                 const std::string& prop) const {
  auto it = blocks_of.find(prop);
  if (it == blocks_of.end()) throw Error("missing prop in admissible valuation: " + prop);
  std::vector<bool> set(g.num_worlds(), false);
  for (int b : it->second) {
    if (b < 0 || b >= g.num_blocks()) throw Error("admissible valuation references unknown block");
    for (int w : g.blocks[b]) set[w] = true;
  }
  return set;
}

bool eval_general(const GeneralFrame& g, const AdmissibleValuation& v, int world,
                  const ModalFormula& f) {
  Valuation expanded;
  for (const auto& p : f.props()) expanded.emplace(p, v.world_set(g, p));
  return eval_modal(g.as_kripke(), expanded, world, f);
}

GeneralValidity valid_on_general(const GeneralFrame& g, const ModalFormula& f,
                                 std::optional<int> at, unsigned long long budget) {
  GeneralValidity result;
  auto props = f.props();
  const std::size_t k = props.size();
  const int nb = g.num_blocks();
  if (k > 0) {
    if (static_cast<unsigned long long>(nb) * k >= 63) {
      result.verdict = Verdict::Inconclusive;
      result.required = ~0ull;
      return result;
    }
    result.required = 1ull << (static_cast<unsigned long long>(nb) * k);
    if (result.required > budget) {
      result.verdict = Verdict::Inconclusive;
      return result;
    }
  } else {
    result.required = 1;
  }
  KripkeFrame frame = g.as_kripke();
  ModalFormula norm = f.normalized();
  const unsigned long long limit = 1ull << nb;
  // Largest admissible sets first: masks count down from all-blocks.
  std::vector<unsigned long long> masks(k, limit - 1);
  for (;;) {
    Valuation v;
    AdmissibleValuation av;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<int> blocks;
      for (int b = 0; b < nb; ++b)
        if (masks[i] >> b & 1) blocks.push_back(b);
      av.blocks_of.emplace(props[i], std::move(blocks));
      v.emplace(props[i], av.world_set(g, props[i]));
    }
    int falsified = -1;
    if (at) {
      if (!eval_modal(frame, v, *at, norm)) falsified = *at;
    } else {
      for (int w = 0; w < g.num_worlds(); ++w)
        if (!eval_modal(frame, v, w, norm)) {
          falsified = w;
          break;
        }
    }
    if (falsified >= 0) {
      GeneralCountermodel cm;
      cm.world = falsified;
      cm.valuation = av;
      for (const auto& p : props) {
        std::vector<int> set;
        auto ws = av.world_set(g, p);
        for (int w = 0; w < g.num_worlds(); ++w)
          if (ws[w]) set.push_back(w);
        cm.world_sets.emplace(p, std::move(set));
      }
      if (g.has_block_formulas()) {
        for (const auto& p : props) {
          CtlFormula acc;
          for (int b : av.blocks_of.at(p)) {
            CtlFormula part = g.block_formulas[b];
            acc = acc.valid_handle() ? CtlFormula::disj(std::move(acc), std::move(part)) : part;
          }
          if (!acc.valid_handle()) acc = CtlFormula::make_false();
          // Witness integrity: the emitted formula's extension must equal
          // the falsifying set.
          const auto& claimed = cm.world_sets.at(p);
          std::vector<int> actual;
          for (int w = 0; w < g.num_worlds(); ++w)
            if (holds(g.worlds[w].system, acc)) actual.push_back(w);
          if (actual != claimed) throw InternalError("witness formula extension mismatch");
          cm.prop_formulas.emplace(p, std::move(acc));
        }
      }
      result.verdict = Verdict::Falsified;
      result.countermodel = std::move(cm);
      return result;
    }
    if (k == 0) break;
    std::size_t i = 0;
    while (i < k && masks[i]-- == 0) masks[i++] = limit - 1;
    if (i == k) break;
  }
  return result;
}

}  // namespace absref
