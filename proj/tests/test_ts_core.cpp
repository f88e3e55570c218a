#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "absref/abstraction.hpp"
#include "absref/bisimulation.hpp"
#include "absref/corpus.hpp"
#include "absref/ctl_check.hpp"
#include "absref/error.hpp"
#include "absref/general_frame.hpp"
#include "absref/isomorphism.hpp"
#include "absref/transition_system.hpp"
#include "oracles.hpp"

using namespace absref;

namespace {

Partition merge(const TransitionSystem& ts, const std::vector<std::vector<std::string>>& groups) {
  std::vector<int> block_of(ts.num_states(), -1);
  int id = 0;
  for (const auto& group : groups) {
    for (const auto& name : group) block_of[ts.state_index(name)] = id;
    ++id;
  }
  for (auto& b : block_of)
    if (b < 0) b = id++;
  return Partition::from_block_of(block_of);
}

}  // namespace

TEST_CASE("validate accepts the corpus systems and reports violations") {
  CHECK(validate(corpus::fig1_t1()).empty());
  CHECK(validate(corpus::fig2_s()).empty());

  TransitionSystem ts = make_ts({"only"}, {}, {{"only", {}}}, {"only"}, {});
  auto diags = validate(ts);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].rfind("terminal state", 0) == 0);

  TransitionSystem no_init = make_ts({"a"}, {}, {{"a", {}}}, {}, {{"a", "a"}});
  diags = validate(no_init);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0] == "empty initial set");
}

TEST_CASE("quotient of fig2_s reproduces the named abstractions") {
  auto s = corpus::fig2_s();

  auto [t2, w2] = quotient(s, merge(s, {{"a1", "a2"}}));
  CHECK(is_abstraction(w2).ok);
  // T2: a0 -> a12 -> b with a self-loop on b.
  auto expected_t2 = make_ts({"x", "y", "z"}, {"a", "b"},
                             {{"x", {"a"}}, {"y", {"a"}}, {"z", {"b"}}}, {"x"},
                             {{"x", "y"}, {"y", "z"}, {"z", "z"}});
  CHECK(iso_check(t2, expected_t2).has_value());

  auto [t3, w3] = quotient(s, merge(s, {{"a0", "a1", "a2"}}));
  CHECK(is_abstraction(w3).ok);
  auto expected_t3 = make_ts({"x", "z"}, {"a", "b"}, {{"x", {"a"}}, {"z", {"b"}}}, {"x"},
                             {{"x", "x"}, {"x", "z"}, {"z", "z"}});
  CHECK(iso_check(t3, expected_t3).has_value());

  auto [id, wid] = quotient(s, Partition::singletons(s.num_states()));
  CHECK(is_abstraction(wid).ok);
  CHECK(iso_check(id, s).has_value());

  // Non-label-uniform merge is rejected with the offending block.
  CHECK_THROWS_WITH_AS(quotient(s, merge(s, {{"a0", "b"}})),
                       doctest::Contains("offending block"), Error);
}

TEST_CASE("is_abstraction checks the fig1 grouping map and each condition") {
  auto s = corpus::fig1_s(2);
  auto t2 = corpus::fig1_t2();
  // Grouping x<=-2, x=-1, x=0, x=1, x>=2.
  std::map<std::string, std::string> grouping{
      {"xm2", "xlo"}, {"xm1", "xm1"}, {"x0", "x0"}, {"xp1", "xp1"}, {"xp2", "xhi"}};
  AbstractionWitness w{s, t2, {}};
  w.map.resize(s.num_states());
  for (const auto& [from, to] : grouping) w.map[s.state_index(from)] = t2.state_index(to);
  CHECK(is_abstraction(w).ok);

  // Deleting a coarse transition breaks exact-image equality (condition 2).
  auto broken = t2;
  broken.transitions.erase(
      std::find(broken.transitions.begin(), broken.transitions.end(),
                std::pair{broken.state_index("xlo"), broken.state_index("xlo")}));
  broken.finalize();
  AbstractionWitness wb{s, broken, w.map};
  auto check = is_abstraction(wb);
  CHECK_FALSE(check.ok);
  CHECK(check.condition == 2);
}

TEST_CASE("find_abstraction agrees with exhaustive surjection search on fig2 pairs") {
  auto s = corpus::fig2_s();
  auto [t1, w1_] = quotient(s, merge(s, {{"a0", "a2"}}));
  auto [t2, w2_] = quotient(s, merge(s, {{"a1", "a2"}}));

  // T2 has a refinement witness from S collapsing a1, a2; it is unique.
  auto oracle_maps = oracle::all_witness_maps(t2, s);
  REQUIRE(oracle_maps.size() == 1);
  auto search = find_abstraction(t2, s);
  REQUIRE(search.outcome == SearchOutcome::Found);
  CHECK(search.witness->map == oracle_maps[0]);
  CHECK(search.witness->map[s.state_index("a1")] == search.witness->map[s.state_index("a2")]);
  CHECK(is_abstraction(*search.witness).ok);

  // T1 and T2 are incomparable; the oracle confirms no surjection exists.
  CHECK(oracle::all_witness_maps(t1, t2).empty());
  CHECK(find_abstraction(t1, t2).outcome == SearchOutcome::NoWitness);
  CHECK(oracle::all_witness_maps(t2, t1).empty());
  CHECK(find_abstraction(t2, t1).outcome == SearchOutcome::NoWitness);

  // Reflexivity.
  auto self = find_abstraction(s, s);
  REQUIRE(self.outcome == SearchOutcome::Found);
  CHECK(is_abstraction(*self.witness).ok);

  // fig1: T1 is an abstraction of T2.
  auto fig1 = find_abstraction(corpus::fig1_t1(), corpus::fig1_t2());
  REQUIRE(fig1.outcome == SearchOutcome::Found);
  CHECK(is_abstraction(*fig1.witness).ok);
}

TEST_CASE("find_abstraction reports inconclusive on an exhausted budget") {
  auto s = corpus::gen_rswitch(1, 1, 2);
  auto [q, w] = quotient(s, Partition::singletons(s.num_states()));
  auto search = find_abstraction(q, s, 3);
  CHECK(search.outcome == SearchOutcome::Inconclusive);
  CHECK(search.nodes > 3);
}

TEST_CASE("witness composition certifies transitivity") {
  auto s = corpus::fig2_s();
  auto [t2, w_s_t2] = quotient(s, merge(s, {{"a1", "a2"}}));
  auto [t3, w_s_t3] = quotient(s, merge(s, {{"a0", "a1", "a2"}}));
  auto t3_from_t2 = find_abstraction(t3, t2);
  REQUIRE(t3_from_t2.outcome == SearchOutcome::Found);
  auto composed = compose(t3_from_t2.witness.value(), w_s_t2);
  CHECK(is_abstraction(composed).ok);
  CHECK(composed.map == w_s_t3.map);
}

TEST_CASE("common_refinement refines both inputs") {
  auto s = corpus::fig2_s();
  auto [t1, w1] = quotient(s, merge(s, {{"a0", "a1"}}));
  auto [t2, w2] = quotient(s, merge(s, {{"a1", "a2"}}));
  auto cr = common_refinement(s, w1, w2);
  CHECK(is_abstraction(cr.to_first).ok);
  CHECK(is_abstraction(cr.to_second).ok);
  CHECK(is_abstraction(cr.from_base).ok);
  // S itself is already the common refinement here.
  CHECK(iso_check(cr.product, s).has_value());

  auto idcr = common_refinement(s, identity_witness(s), identity_witness(s));
  CHECK(iso_check(idcr.product, s).has_value());

  // T1 already refines T3, so their product is (isomorphic to) T1.
  auto [t3, w3] = quotient(s, merge(s, {{"a0", "a1", "a2"}}));
  auto cr2 = common_refinement(s, w3, w1);
  CHECK(is_abstraction(cr2.to_first).ok);
  CHECK(is_abstraction(cr2.to_second).ok);
  CHECK(iso_check(cr2.product, t1).has_value());
}

TEST_CASE("path_isolating_refinement isolates one lasso per initial state") {
  auto s = corpus::fig2_s();
  std::map<int, Lasso> lassos;
  lassos[s.state_index("a0")] =
      Lasso{{s.state_index("a0"), s.state_index("a1"), s.state_index("b"), s.state_index("b")}, 3};
  auto [r, w] = path_isolating_refinement(s, lassos);
  CHECK(r.num_states() == 8);  // 4-state chain component plus the 4-state copy
  CHECK(is_abstraction(w).ok);
  REQUIRE(r.initial.size() == 1);
  CHECK(r.succ[r.initial[0]].size() == 1);

  // Degenerate case: a single-state self-loop splits into two copies.
  auto loop = make_ts({"u"}, {"a"}, {{"u", {"a"}}}, {"u"}, {{"u", "u"}});
  std::map<int, Lasso> single{{0, Lasso{{0}, 0}}};
  auto [r2, w2] = path_isolating_refinement(loop, single);
  CHECK(r2.num_states() == 2);
  CHECK(r2.initial.size() == 1);
  CHECK(is_abstraction(w2).ok);

  // A lasso that is not a path in t is rejected with the failing step.
  std::map<int, Lasso> bad;
  bad[s.state_index("a0")] = Lasso{{s.state_index("a0"), s.state_index("b")}, 1};
  CHECK_THROWS_WITH_AS(path_isolating_refinement(s, bad), doctest::Contains("step 0"), Error);
}

TEST_CASE("path isolation freezes CTL truth under sampled refinements") {
  auto s = corpus::fig2_s();
  std::map<int, Lasso> lassos;
  lassos[s.state_index("a0")] =
      Lasso{{s.state_index("a0"), s.state_index("a1"), s.state_index("b")}, 2};
  auto [frozen, w] = path_isolating_refinement(s, lassos);

  oracle::Gen gen(20240811);
  std::vector<std::string> ap{"a", "b"};
  int refinements_checked = 0;
  for (int round = 0; round < 24 && refinements_checked < 10; ++round) {
    // Random state-splitting refinement: duplicate one state, distribute
    // incoming edges, keep all outgoing edges on both copies.
    const auto& base = frozen;
    int victim = gen.pick(0, base.num_states() - 1);
    TransitionSystem fine;
    fine.ap = base.ap;
    std::vector<int> map;
    for (int st = 0; st < base.num_states(); ++st) {
      fine.states.push_back("c" + std::to_string(st));
      fine.labels.push_back(base.labels[st]);
      map.push_back(st);
    }
    fine.states.push_back("c" + std::to_string(victim) + "b");
    fine.labels.push_back(base.labels[victim]);
    map.push_back(victim);
    const int twin = base.num_states();
    for (const auto& [u, v] : base.transitions) {
      std::vector<int> sources{u}, targets{v};
      if (u == victim) sources.push_back(twin);
      if (v == victim && gen.coin()) targets.push_back(twin);
      for (int us : sources)
        for (int vt : targets) fine.transitions.emplace_back(us, vt);
    }
    for (int init : base.initial) {
      fine.initial.push_back(init);
      if (init == victim && gen.coin()) fine.initial.push_back(twin);
    }
    fine.finalize();
    if (!validate(fine).empty()) continue;
    AbstractionWitness wit{fine, base, map};
    if (!is_abstraction(wit).ok) continue;  // twin may end up unreachable-only
    ++refinements_checked;
    for (int i = 0; i < 20; ++i) {
      auto f = gen.ctl(4, ap);
      if (holds(base, f)) CHECK(holds(fine, f));
    }
  }
  CHECK(refinements_checked >= 5);
}

TEST_CASE("trace prefixes of the fine system embed into the coarse system") {
  auto s = corpus::fig2_s();
  auto [t2, w] = quotient(s, merge(s, {{"a1", "a2"}}));
  auto prefixes = [](const TransitionSystem& ts) {
    std::set<std::vector<std::string>> out;
    std::vector<std::pair<int, std::vector<std::string>>> work;
    for (int i : ts.initial) work.push_back({i, {}});
    while (!work.empty()) {
      auto [st, trace] = work.back();
      work.pop_back();
      std::string step;
      for (const auto& a : ts.label_names(st)) step += a + ",";
      trace.push_back(step);
      out.insert(trace);
      if (trace.size() >= 8) continue;
      for (int t : ts.succ[st]) work.push_back({t, trace});
    }
    return out;
  };
  auto fine = prefixes(w.fine);
  auto coarse = prefixes(w.coarse);
  for (const auto& p : fine) CHECK(coarse.count(p) == 1);
}

TEST_CASE("bisim_classes matches the CTL view of fig2 families") {
  auto s = corpus::fig2_s();
  auto [t1, w1] = quotient(s, merge(s, {{"a0", "a1"}}));
  auto [t2, w2] = quotient(s, merge(s, {{"a1", "a2"}}));

  auto bp = bisim_classes({s, t2});
  int root_s = bp.subject.index(0, s.state_index("a0"));
  int root_t2 = bp.subject.index(1, t2.state_index("a0"));
  CHECK(bisimilar(bp, root_s, root_t2));
  int b_s = bp.subject.index(0, s.state_index("b"));
  int b_t2 = bp.subject.index(1, t2.state_index("b"));
  CHECK(bisimilar(bp, b_s, b_t2));

  auto bp2 = bisim_classes({s, t1});
  CHECK_FALSE(bisimilar(bp2, bp2.subject.index(0, s.state_index("a0")),
                        bp2.subject.index(1, t1.state_index("a0+a1"))));

  // All labels distinct: everything is a singleton block.
  auto distinct = make_ts({"u", "v"}, {"a", "b"}, {{"u", {"a"}}, {"v", {"b"}}}, {"u"},
                          {{"u", "v"}, {"v", "u"}});
  auto bp3 = bisim_classes({distinct});
  CHECK(bp3.partition.num_blocks() == 2);
}

TEST_CASE("iso_check distinguishes the fig2 abstractions and accepts renamings") {
  auto s = corpus::fig2_s();
  auto [t1a, wa_] = quotient(s, merge(s, {{"a0", "a1"}}));
  auto [t1b, wb_] = quotient(s, merge(s, {{"a0", "a2"}}));
  auto [t2, wc_] = quotient(s, merge(s, {{"a1", "a2"}}));

  // The two partitions behind T1 are isomorphic quotients.
  auto map = iso_check(t1a, t1b);
  REQUIRE(map.has_value());
  for (int st = 0; st < t1a.num_states(); ++st) {
    CHECK(t1a.label_names(st) == t1b.label_names((*map)[st]));
    CHECK(t1a.is_initial(st) == t1b.is_initial((*map)[st]));
  }
  for (const auto& [u, v] : t1a.transitions) CHECK(t1b.has_edge((*map)[u], (*map)[v]));

  CHECK_FALSE(iso_check(t1a, t2).has_value());
  CHECK(canonical_form(t1a).key != canonical_form(t2).key);
  CHECK(canonical_form(t1a).key == canonical_form(t1b).key);

  auto renamed = make_ts({"z2", "z1", "z0"}, {"x0"},
                         {{"z2", {}}, {"z1", {}}, {"z0", {"x0"}}}, {"z0"},
                         {{"z0", "z1"}, {"z0", "z2"}, {"z1", "z1"}, {"z1", "z0"},
                          {"z2", "z2"}, {"z2", "z0"}});
  CHECK(iso_check(corpus::fig1_t1(), renamed).has_value());
}

TEST_CASE("every label-uniform partition quotient passes is_abstraction") {
  auto seed = corpus::fig2_s();
  EnumOptions opts;
  opts.mode = LatticeMode::PartitionDistinct;
  auto lattice = enumerate_abstractions(seed, opts);
  REQUIRE(lattice.complete);
  CHECK(lattice.worlds.size() == 5);
  for (const auto& world : lattice.worlds) {
    auto [q, w] = quotient(seed, world.partitions.front());
    CHECK(is_abstraction(w).ok);
  }
}
