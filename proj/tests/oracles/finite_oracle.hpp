#pragma once

// Brute-force vertex-level oracles used by the tests. Everything here works
// on explicit finite graphs only and is written independently of the library
// code paths it checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Vertex = std::string;
using VSet = std::set<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

struct Graph {
  VSet verts;
  std::map<Vertex, VSet> adj;

  void add_edge(const Vertex& a, const Vertex& b) {
    verts.insert(a);
    verts.insert(b);
    adj[a].insert(b);
    adj[b].insert(a);
  }
  void add_vertex(const Vertex& a) { verts.insert(a); }
};

// Connected components of g - x, each with its exact neighbourhood in x.
struct Component {
  VSet verts;
  VSet nbhd;
};

inline std::vector<Component> components_minus(const Graph& g, const VSet& x) {
  std::vector<Component> out;
  VSet seen;
  for (const auto& s : g.verts) {
    if (x.count(s) || seen.count(s)) continue;
    Component c;
    std::vector<Vertex> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      c.verts.insert(v);
      auto it = g.adj.find(v);
      if (it == g.adj.end()) continue;
      for (const auto& w : it->second) {
        if (x.count(w)) {
          c.nbhd.insert(w);
        } else if (!seen.count(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Oriented separation as explicit vertex sets.
struct Sep {
  VSet a, b;
  bool operator==(const Sep& o) const { return a == o.a && b == o.b; }
  bool operator<(const Sep& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
};

inline Sep invert(const Sep& s) { return {s.b, s.a}; }

inline bool le(const Sep& s, const Sep& t) {
  return std::includes(t.a.begin(), t.a.end(), s.a.begin(), s.a.end()) &&
         std::includes(s.b.begin(), s.b.end(), t.b.begin(), t.b.end());
}

// All oriented separations of a finite graph with separator x: one per subset
// of the components of g - x.
inline std::vector<Sep> separations_at(const Graph& g, const VSet& x) {
  auto comps = components_minus(g, x);
  std::vector<Sep> out;
  const std::size_t n = comps.size();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Sep s;
    s.a = g.verts;
    s.b = x;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1ull << i))) continue;
      for (const auto& v : comps[i].verts) {
        s.b.insert(v);
        s.a.erase(v);
      }
    }
    // a must keep the separator.
    for (const auto& v : x) s.a.insert(v);
    out.push_back(std::move(s));
  }
  return out;
}

// Max flow (unit edge capacities) between two vertices; equals the least
// size of an edge cut separating them.
inline int max_flow(const Graph& g, const Vertex& s, const Vertex& t) {
  if (s == t) return -1;
  std::vector<Vertex> idx(g.verts.begin(), g.verts.end());
  std::map<Vertex, int> num;
  for (std::size_t i = 0; i < idx.size(); ++i) num[idx[i]] = static_cast<int>(i);
  const int n = static_cast<int>(idx.size());
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (const auto& [v, ws] : g.adj)
    for (const auto& w : ws) cap[num[v]][num[w]] = 1;
  if (!num.count(s) || !num.count(t)) return 0;
  const int src = num[s], dst = num[t];
  int flow = 0;
  while (true) {
    std::vector<int> parent(n, -1);
    parent[src] = src;
    std::vector<int> queue{src};
    for (std::size_t q = 0; q < queue.size() && parent[dst] < 0; ++q) {
      const int v = queue[q];
      for (int w = 0; w < n; ++w)
        if (parent[w] < 0 && cap[v][w] > 0) {
          parent[w] = v;
          queue.push_back(w);
        }
    }
    if (parent[dst] < 0) return flow;
    for (int v = dst; v != src; v = parent[v]) {
      cap[parent[v]][v] -= 1;
      cap[v][parent[v]] += 1;
    }
    ++flow;
  }
}

}  // namespace oracle
