#include "doctest.h"

#include <functional>
#include <map>
#include <set>

#include "absref/abstraction.hpp"
#include "absref/bisimulation.hpp"
#include "absref/corpus.hpp"
#include "absref/ctl.hpp"
#include "absref/ctl_check.hpp"
#include "absref/error.hpp"
#include "absref/general_frame.hpp"
#include "oracles.hpp"

using namespace absref;

TEST_CASE("parse_ctl handles the grammar and round-trips") {
  auto f = parse_ctl("EX EX EX x0");
  CHECK(f.op() == CtlOp::ExistsNext);
  CHECK(f.left().op() == CtlOp::ExistsNext);
  CHECK(f.left().left().left().atom_name() == "x0");

  CHECK(parse_ctl("true").op() == CtlOp::True);

  auto g = parse_ctl("A[a U b] -> !EG a");
  CHECK(g.op() == CtlOp::Implies);
  CHECK(g.left().op() == CtlOp::ForallUntil);
  CHECK(g.right().op() == CtlOp::Not);
  CHECK(g.right().left().op() == CtlOp::ExistsGlobally);

  // Precedence: ! > & > | > -> with right-associative ->.
  auto h = parse_ctl("a -> b -> !c & d | e");
  CHECK(h.op() == CtlOp::Implies);
  CHECK(h.right().op() == CtlOp::Implies);
  CHECK(h.right().right().op() == CtlOp::Or);
  CHECK(h.right().right().left().op() == CtlOp::And);
  CHECK(h.right().right().left().left().op() == CtlOp::Not);

  CHECK_THROWS_AS(parse_ctl("E[a U"), ParseError);
  CHECK_THROWS_AS(parse_ctl("a &"), ParseError);
  CHECK_THROWS_AS(parse_ctl("(a"), ParseError);
  CHECK_THROWS_AS(parse_ctl("true true"), ParseError);
  CHECK_THROWS_AS(parse_ctl("U"), ParseError);
  try {
    parse_ctl("a & % b");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }

  oracle::Gen gen(7);
  std::vector<std::string> ap{"a", "b"};
  for (int i = 0; i < 300; ++i) {
    auto r = gen.ctl(3, ap);
    CHECK(parse_ctl(r.str()) == r);
  }
}

TEST_CASE("normalization reaches the core grammar and is idempotent") {
  oracle::Gen gen(11);
  std::vector<std::string> ap{"a", "b"};
  std::set<CtlOp> core{CtlOp::True, CtlOp::Atom, CtlOp::Not, CtlOp::And,
                       CtlOp::ExistsNext, CtlOp::ForallNext, CtlOp::ExistsUntil,
                       CtlOp::ForallUntil};
  std::function<void(const CtlFormula&)> assert_core = [&](const CtlFormula& f) {
    CHECK(core.count(f.op()) == 1);
    switch (f.op()) {
      case CtlOp::True:
      case CtlOp::Atom: break;
      case CtlOp::And:
      case CtlOp::ExistsUntil:
      case CtlOp::ForallUntil:
        assert_core(f.left());
        assert_core(f.right());
        break;
      default: assert_core(f.left());
    }
  };
  for (int i = 0; i < 200; ++i) {
    auto f = gen.ctl(3, ap);
    auto n = f.normalized();
    assert_core(n);
    CHECK(n.normalized() == n);
  }
}

TEST_CASE("check_ctl reproduces the counter example from the intro") {
  auto phi = parse_ctl("EX EX EX x0");
  CHECK(holds(corpus::fig1_t1(), phi));
  CHECK_FALSE(holds(corpus::fig1_t2(), phi));
  CHECK_FALSE(holds(corpus::fig1_s(2), phi));
  CHECK_FALSE(holds(corpus::fig1_s(3), phi));

  auto s = corpus::fig2_s();
  auto top = check_ctl(s, parse_ctl("true"));
  for (int st = 0; st < s.num_states(); ++st) CHECK(top.sat[st]);

  // Example 1: EX b holds at T1 but not at S.
  auto exb = parse_ctl("EX b");
  CHECK_FALSE(holds(s, exb));
  auto [t1, w1] = quotient(s, Partition::from_block_of({0, 0, 1, 2}));
  CHECK(holds(t1, exb));

  CHECK_THROWS_WITH_AS(check_ctl(s, parse_ctl("nosuch")), doctest::Contains("nosuch"), Error);
}

TEST_CASE("check_ctl agrees with the path-enumeration oracle") {
  oracle::Gen gen(20240810);
  std::vector<std::string> ap{"a", "b"};
  for (int round = 0; round < 200; ++round) {
    auto ts = gen.system(6, ap);
    auto f = gen.ctl(3, ap);
    auto sat = check_ctl(ts, f);
    for (int s = 0; s < ts.num_states(); ++s)
      REQUIRE(sat.sat[s] == oracle::ctl_eval(ts, f, s));
  }
}

TEST_CASE("temporal dualities hold on random systems") {
  oracle::Gen gen(99);
  std::vector<std::string> ap{"a", "b"};
  for (int round = 0; round < 60; ++round) {
    auto ts = gen.system(6, ap);
    auto f = gen.ctl(2, ap);
    auto lhs = check_ctl(ts, CtlFormula::unary(CtlOp::ForallNext, f));
    auto rhs = check_ctl(ts, CtlFormula::negation(CtlFormula::unary(
                                 CtlOp::ExistsNext, CtlFormula::negation(f))));
    CHECK(lhs.sat == rhs.sat);
    auto eg = check_ctl(ts, CtlFormula::unary(CtlOp::ExistsGlobally, f));
    auto nafn = check_ctl(ts, CtlFormula::negation(CtlFormula::unary(
                                  CtlOp::ForallFinally, CtlFormula::negation(f))));
    CHECK(eg.sat == nafn.sat);
    auto ag = check_ctl(ts, CtlFormula::unary(CtlOp::ForallGlobally, f));
    auto nefn = check_ctl(ts, CtlFormula::negation(CtlFormula::unary(
                                  CtlOp::ExistsFinally, CtlFormula::negation(f))));
    CHECK(ag.sat == nefn.sat);
  }
}

TEST_CASE("CTL cannot separate bisimilar states up to depth 4") {
  auto s = corpus::fig2_s();
  auto [t1, w1] = quotient(s, Partition::from_block_of({0, 0, 1, 2}));
  auto [t2, w2] = quotient(s, Partition::from_block_of({0, 1, 1, 2}));
  std::vector<TransitionSystem> systems{s, t1, t2};
  auto bp = bisim_classes(systems);
  const auto& u = bp.subject.ts;

  // Semantic enumeration: every satisfaction set reachable by formulas of
  // temporal depth <= 4 over {a, b} (boolean-closed per layer) must be a
  // union of bisimulation blocks; otherwise some such formula would separate
  // a bisimilar pair. Deduplication by extension keeps this exhaustive.
  auto block_closed = [&](const std::vector<bool>& set) {
    for (const auto& block : bp.partition.blocks) {
      bool first = set[block.front()];
      for (int st : block)
        if (set[st] != first) return false;
    }
    return true;
  };
  std::set<std::vector<bool>> seen;
  auto add = [&](const std::vector<bool>& set) {
    REQUIRE(block_closed(set));
    return seen.insert(set).second;
  };
  add(check_ctl(u, parse_ctl("true")).sat);
  for (const auto& a : u.ap) add(check_ctl(u, CtlFormula::atom(a)).sat);
  auto boolean_closure = [&]() {
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<std::vector<bool>> snapshot(seen.begin(), seen.end());
      for (const auto& x : snapshot) {
        std::vector<bool> neg(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) neg[i] = !x[i];
        changed = add(neg) || changed;
        for (const auto& y : snapshot) {
          std::vector<bool> both(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) both[i] = x[i] && y[i];
          changed = add(both) || changed;
        }
      }
    }
  };
  boolean_closure();
  const int n = u.num_states();
  auto apply_temporal = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
    std::vector<std::vector<bool>> out;
    std::vector<bool> ex(n), ax(n);
    for (int st = 0; st < n; ++st) {
      bool some = false, all = true;
      for (int t : u.succ[st]) {
        some = some || b[t];
        all = all && b[t];
      }
      ex[st] = some;
      ax[st] = all;
    }
    out.push_back(ex);
    out.push_back(ax);
    std::vector<bool> eu = b;  // textbook least fixpoints over raw sets
    for (bool changed = true; changed;) {
      changed = false;
      for (int st = 0; st < n; ++st) {
        if (eu[st] || !a[st]) continue;
        for (int t : u.succ[st])
          if (eu[t]) {
            eu[st] = changed = true;
            break;
          }
      }
    }
    out.push_back(eu);
    std::vector<bool> au = b;
    for (bool changed = true; changed;) {
      changed = false;
      for (int st = 0; st < n; ++st) {
        if (au[st] || !a[st]) continue;
        bool all = true;
        for (int t : u.succ[st]) all = all && au[t];
        if (all) au[st] = changed = true;
      }
    }
    out.push_back(au);
    return out;
  };
  for (int depth = 1; depth <= 4; ++depth) {
    std::vector<std::vector<bool>> layer(seen.begin(), seen.end());
    for (const auto& a : layer)
      for (const auto& b : layer)
        for (const auto& t : apply_temporal(a, b)) add(t);
    boolean_closure();
  }
  CHECK(seen.size() <= (1u << bp.partition.num_blocks()));
}

TEST_CASE("distinguishing_formula separates split pairs and rejects bisimilar ones") {
  auto s = corpus::fig2_s();
  auto [t1, w1] = quotient(s, Partition::from_block_of({0, 0, 1, 2}));
  auto [t2, w2] = quotient(s, Partition::from_block_of({0, 1, 1, 2}));
  auto bp = bisim_classes({s, t1, t2});
  const auto& u = bp.subject.ts;
  for (int x = 0; x < u.num_states(); ++x)
    for (int y = x + 1; y < u.num_states(); ++y) {
      if (bisimilar(bp, x, y)) continue;
      auto d = distinguishing_formula(bp, x, y);
      auto sat = check_ctl(u, d);
      CHECK(sat.sat[x]);
      CHECK_FALSE(sat.sat[y]);
    }
  int root_s = bp.subject.index(0, s.state_index("a0"));
  int root_t1 = bp.subject.index(1, t1.state_index("a0+a1"));
  CHECK_THROWS_WITH_AS(distinguishing_formula(bp, root_s, root_s),
                       doctest::Contains("bisimilar"), Error);
  REQUIRE_FALSE(bisimilar(bp, root_s, root_t1));
  auto d = distinguishing_formula(bp, root_s, root_t1);
  CHECK(check_ctl(u, d).sat[root_s]);
  CHECK_FALSE(check_ctl(u, d).sat[root_t1]);

  // Label splits yield a plain literal.
  auto lab = make_ts({"u", "v"}, {"a"}, {{"u", {"a"}}, {"v", {}}}, {"u"},
                     {{"u", "v"}, {"v", "u"}});
  auto bpl = bisim_classes({lab});
  auto lit = distinguishing_formula(bpl, 0, 1);
  CHECK((lit == CtlFormula::atom("a") || lit == CtlFormula::negation(CtlFormula::atom("a"))));
}

TEST_CASE("ACTL truth is preserved from coarse to fine") {
  auto s = corpus::fig2_s();
  auto lattice = enumerate_abstractions(s, {});
  oracle::Gen gen(4242);
  std::vector<std::string> ap{"a", "b"};
  // Universally quantified formulas over atoms, &, |, AX, AU, AG.
  std::function<CtlFormula(int)> actl = [&](int depth) -> CtlFormula {
    switch (gen.pick(0, depth > 0 ? 5 : 0)) {
      case 0: return CtlFormula::atom(ap[gen.pick(0, 1)]);
      case 1: return CtlFormula::conj(actl(depth), actl(depth));
      case 2: return CtlFormula::disj(actl(depth), actl(depth));
      case 3: return CtlFormula::unary(CtlOp::ForallNext, actl(depth - 1));
      case 4: return CtlFormula::until(CtlOp::ForallUntil, actl(depth - 1), actl(depth - 1));
      default: return CtlFormula::unary(CtlOp::ForallGlobally, actl(depth - 1));
    }
  };
  for (const auto& world : lattice.worlds) {
    auto [coarse, witness] = quotient(s, world.partitions.front());
    for (int i = 0; i < 40; ++i) {
      auto f = actl(2);
      if (holds(coarse, f)) CHECK(holds(s, f));
    }
  }
}
