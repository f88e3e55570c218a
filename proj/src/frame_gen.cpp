#include "absref/frame_gen.hpp"

#include <algorithm>
#include <string>

#include "absref/error.hpp"

namespace absref {

namespace {

std::string subset_name(unsigned mask, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (mask >> i & 1) ? std::to_string(i) : "";
  return s.empty() ? "e" : s;
}

void finalize_access(KripkeFrame& f) {
  for (auto& row : f.access) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

}  // namespace

KripkeFrame gen_preboolean(int n, int cluster_size) {
  if (n < 0 || cluster_size < 1) throw Error("gen_preboolean: need n >= 0, cluster_size >= 1");
  KripkeFrame f;
  const unsigned subsets = 1u << n;
  for (unsigned I = 0; I < subsets; ++I)
    for (int i = 0; i < cluster_size; ++i)
      f.worlds.push_back("c" + subset_name(I, n) + "_" + std::to_string(i));
  f.access.resize(f.worlds.size());
  auto id = [&](unsigned I, int i) { return static_cast<int>(I) * cluster_size + i; };
  for (unsigned I = 0; I < subsets; ++I)
    for (unsigned J = 0; J < subsets; ++J) {
      if ((I & J) != I) continue;  // I subset of J
      for (int i = 0; i < cluster_size; ++i)
        for (int j = 0; j < cluster_size; ++j) f.access[id(I, i)].push_back(id(J, j));
    }
  finalize_access(f);
  return f;
}

std::vector<std::pair<unsigned, unsigned>> lollipop_nodes(int n, int m) {
  std::vector<std::pair<unsigned, unsigned>> nodes;
  for (unsigned I = 0; I < (1u << n); ++I)
    for (unsigned J = 0; J < (1u << m); ++J) nodes.emplace_back(I, J);
  return nodes;
}

KripkeFrame gen_lollipop(int n, int m) {
  if (n < 0 || m < 0) throw Error("gen_lollipop: need n, m >= 0");
  KripkeFrame f;
  auto nodes = lollipop_nodes(n, m);
  for (const auto& [I, J] : nodes)
    f.worlds.push_back("l" + subset_name(I, n) + "_" + subset_name(J, m));
  f.worlds.push_back("star");
  const int star = static_cast<int>(nodes.size());
  f.access.resize(f.worlds.size());
  for (int a = 0; a < static_cast<int>(nodes.size()); ++a) {
    for (int b = 0; b < static_cast<int>(nodes.size()); ++b)
      if ((nodes[a].first & nodes[b].first) == nodes[a].first) f.access[a].push_back(b);
    f.access[a].push_back(star);
  }
  f.access[star].push_back(star);
  finalize_access(f);
  return f;
}

std::vector<std::vector<int>> fpf_functions(int n) {
  std::vector<std::vector<int>> fns;
  std::vector<int> cur(n, -1);
  // Ternary counting, first coordinate fastest; -1 < 0 < 1 per digit.
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (long long t = 0; t < total; ++t) {
    fns.push_back(cur);
    int i = 0;
    while (i < n && cur[i] == 1) cur[i++] = -1;
    if (i < n) ++cur[i];
  }
  return fns;
}

KripkeFrame gen_fpf(int n) {
  if (n < 0) throw Error("gen_fpf: need n >= 0");
  KripkeFrame f;
  auto fns = fpf_functions(n);
  for (const auto& fn : fns) {
    std::string name = "f";
    for (int v : fn) name += v < 0 ? '_' : static_cast<char>('0' + v);
    f.worlds.push_back(std::move(name));
  }
  f.access.resize(fns.size());
  auto extends = [&](const std::vector<int>& g, const std::vector<int>& h) {
    for (int i = 0; i < n; ++i)
      if (g[i] >= 0 && h[i] != g[i]) return false;
    return true;
  };
  for (std::size_t a = 0; a < fns.size(); ++a)
    for (std::size_t b = 0; b < fns.size(); ++b)
      if (extends(fns[a], fns[b])) f.access[a].push_back(static_cast<int>(b));
  finalize_access(f);
  return f;
}

namespace {

struct OrderIsoSearch {
  const KripkeFrame& a;
  const KripkeFrame& b;
  std::vector<std::vector<int>> b_pred;
  std::vector<int> map;      // a world -> b world
  std::vector<bool> used;    // of b

  OrderIsoSearch(const KripkeFrame& fa, const KripkeFrame& fb)
      : a(fa), b(fb), map(fa.num_worlds(), -1), used(fb.num_worlds(), false) {
    b_pred.resize(b.num_worlds());
    for (int w = 0; w < b.num_worlds(); ++w)
      for (int u : b.access[w]) b_pred[u].push_back(w);
  }

  bool compatible(int wa, int wb) const {
    int in_a = 0;
    for (int w = 0; w < a.num_worlds(); ++w)
      if (a.edge(w, wa)) ++in_a;
    if (a.access[wa].size() != b.access[wb].size()) return false;
    if (in_a != static_cast<int>(b_pred[wb].size())) return false;
    for (int w = 0; w < a.num_worlds(); ++w) {
      if (map[w] < 0) continue;
      if (a.edge(wa, w) != b.edge(wb, map[w])) return false;
      if (a.edge(w, wa) != b.edge(map[w], wb)) return false;
    }
    return a.edge(wa, wa) == b.edge(wb, wb);
  }

  bool search(int wa) {
    if (wa == a.num_worlds()) return true;
    for (int wb = 0; wb < b.num_worlds(); ++wb) {
      if (used[wb] || !compatible(wa, wb)) continue;
      map[wa] = wb;
      used[wb] = true;
      if (search(wa + 1)) return true;
      used[wb] = false;
      map[wa] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> order_iso(const KripkeFrame& a, const KripkeFrame& b) {
  if (a.num_worlds() != b.num_worlds()) return std::nullopt;
  if (a.edges().size() != b.edges().size()) return std::nullopt;
  OrderIsoSearch s(a, b);
  if (s.search(0)) return s.map;
  return std::nullopt;
}

}  // namespace absref
