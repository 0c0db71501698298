// One-ended and branching locally finite constructors: the quarter grid and
// the infinite binary tree. Deletions are analyzed on a truncation that
// covers the deleted set; everything beyond it is handled symbolically.

#include <algorithm>
#include <map>
#include <set>

#include "engine_util.hpp"
#include "engines.hpp"
#include "tangles/errors.hpp"

namespace tangles::detail {

namespace {

// ------------------------------------------------------------------ grid ---

// The quarter grid N x N, enumerated along anti-diagonals:
// (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
class GridEngine final : public Engine {
 public:
  Card vertex_count() const override { return Card::omega(); }
  bool locally_finite() const override { return true; }

  VertexId vertex_at(std::int64_t rank) const override {
    if (rank < 0) throw DomainError("rank out of range");
    std::int64_t s = 0;
    while ((s + 1) * (s + 2) / 2 <= rank) ++s;
    const std::int64_t i = rank - s * (s + 1) / 2;
    return name(i, s - i);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto c = parse_cell(v);
    if (!c) return std::nullopt;
    const std::int64_t s = c->first + c->second;
    return s * (s + 1) / 2 + c->first;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    auto a = parse_cell(u), b = parse_cell(v);
    if (!a || !b) throw DomainError("unknown vertex id");
    return std::abs(a->first - b->first) + std::abs(a->second - b->second) == 1;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    auto c = parse_cell(v);
    if (!c) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    auto [i, j] = *c;
    if (i > 0) out.finite.push_back(name(i - 1, j));
    if (j > 0) out.finite.push_back(name(i, j - 1));
    out.finite.push_back(name(i + 1, j));
    out.finite.push_back(name(i, j + 1));
    std::sort(out.finite.begin(), out.finite.end(),
              [this](const VertexId& a, const VertexId& b) { return *rank_of(a) < *rank_of(b); });
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    std::set<std::pair<std::int64_t, std::int64_t>> del;
    std::int64_t max_s = -1;
    for (const auto& v : x) {
      auto c = parse_cell(v);
      if (!c) throw DomainError("unknown vertex id: " + v);
      del.insert(*c);
      max_s = std::max(max_s, c->first + c->second);
      out.deleted.push_back(v);
    }
    // Everything on anti-diagonals beyond max_s is untouched and connected,
    // and every cell on diagonal max_s has a neighbour out there.
    const std::int64_t beyond = max_s + 1;
    std::map<std::pair<std::int64_t, std::int64_t>, int> comp;
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> cells;
    std::vector<std::set<std::pair<std::int64_t, std::int64_t>>> nbhd;
    std::vector<bool> touches_frontier;
    for (std::int64_t s = 0; s <= max_s; ++s) {
      for (std::int64_t i = 0; i <= s; ++i) {
        const std::pair<std::int64_t, std::int64_t> start{i, s - i};
        if (del.count(start) || comp.count(start)) continue;
        const int id = static_cast<int>(cells.size());
        cells.emplace_back();
        nbhd.emplace_back();
        touches_frontier.push_back(false);
        std::vector<std::pair<std::int64_t, std::int64_t>> stack{start};
        comp[start] = id;
        while (!stack.empty()) {
          auto [ci, cj] = stack.back();
          stack.pop_back();
          cells[id].push_back({ci, cj});
          if (ci + cj == max_s) touches_frontier[id] = true;
          const std::pair<std::int64_t, std::int64_t> nbs[4] = {
              {ci - 1, cj}, {ci + 1, cj}, {ci, cj - 1}, {ci, cj + 1}};
          for (auto [ni, nj] : nbs) {
            if (ni < 0 || nj < 0 || ni + nj > max_s) continue;
            const std::pair<std::int64_t, std::int64_t> w{ni, nj};
            if (del.count(w)) {
              nbhd[id].insert(w);
            } else if (!comp.count(w)) {
              comp[w] = id;
              stack.push_back(w);
            }
          }
        }
      }
    }
    Descriptor big;
    big.kind = DescKind::ExplicitInfinite;
    big.residues = {"beyond:" + std::to_string(beyond)};
    std::set<std::pair<std::int64_t, std::int64_t>> big_nbhd;
    for (auto [ci, cj] : del)
      if (ci + cj == max_s) big_nbhd.insert({ci, cj});
    for (int id = 0; id < static_cast<int>(cells.size()); ++id) {
      if (touches_frontier[id]) {
        for (auto c : cells[id]) big.verts.push_back(name(c.first, c.second));
        big_nbhd.insert(nbhd[id].begin(), nbhd[id].end());
      } else {
        Descriptor d;
        d.kind = DescKind::ExplicitFinite;
        for (auto c : cells[id]) d.verts.push_back(name(c.first, c.second));
        for (auto c : nbhd[id]) d.nbhd.push_back(name(c.first, c.second));
        out.descs.push_back(std::move(d));
      }
    }
    for (auto c : big_nbhd) big.nbhd.push_back(name(c.first, c.second));
    out.descs.push_back(std::move(big));
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    auto c = parse_cell(v);
    return c && c->first + c->second >= beyond_from(tag);
  }
  VertexId residue_probe(const std::string& tag) const override {
    return name(beyond_from(tag), 0);
  }
  bool residue_bears_ends(const std::string&) const override { return true; }

  EndCatalog end_catalog() const override {
    EndCatalog c;
    c.singles = {"0"};
    return c;
  }
  VertexId end_ray_at(const EndRef&, std::int64_t k) const override { return name(k, 0); }
  std::optional<std::int64_t> end_ray_pos(const EndRef&, const VertexId& v) const override {
    auto c = parse_cell(v);
    if (!c || c->second != 0) return std::nullopt;
    return c->first;
  }

 private:
  static std::string name(std::int64_t i, std::int64_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  static std::optional<std::pair<std::int64_t, std::int64_t>> parse_cell(const VertexId& v) {
    if (v.size() < 5 || v.front() != '(' || v.back() != ')') return std::nullopt;
    const std::size_t comma = v.find(',');
    if (comma == std::string::npos) return std::nullopt;
    bool ok1 = false, ok2 = false;
    const std::int64_t i = parse_int(v.substr(1, comma - 1), &ok1);
    const std::int64_t j = parse_int(v.substr(comma + 1, v.size() - comma - 2), &ok2);
    if (!ok1 || !ok2 || i < 0 || j < 0) return std::nullopt;
    return std::make_pair(i, j);
  }
  static std::int64_t beyond_from(const std::string& tag) {
    if (tag.rfind("beyond:", 0) != 0) throw DomainError("unknown residue tag: " + tag);
    bool ok = false;
    std::int64_t m = parse_int(tag.substr(7), &ok);
    if (!ok) throw DomainError("unknown residue tag: " + tag);
    return m;
  }
};

// ----------------------------------------------------------- binary tree ---

// The complete infinite binary tree in heap numbering: root n1, children of
// n_k are n_{2k} and n_{2k+1}. Breadth-first rank order.
class BinaryTreeEngine final : public Engine {
 public:
  Card vertex_count() const override { return Card::omega(); }
  bool locally_finite() const override { return true; }

  VertexId vertex_at(std::int64_t rank) const override {
    if (rank < 0) throw DomainError("rank out of range");
    return name(rank + 1);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto k = parse_node(v);
    if (!k) return std::nullopt;
    return *k - 1;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    auto a = parse_node(u), b = parse_node(v);
    if (!a || !b) throw DomainError("unknown vertex id");
    return *b / 2 == *a || *a / 2 == *b;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    auto k = parse_node(v);
    if (!k) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    if (*k > 1) out.finite.push_back(name(*k / 2));
    out.finite.push_back(name(2 * *k));
    out.finite.push_back(name(2 * *k + 1));
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    std::set<std::int64_t> del;
    std::int64_t t = 0;
    for (const auto& v : x) {
      auto k = parse_node(v);
      if (!k) throw DomainError("unknown vertex id: " + v);
      del.insert(*k);
      t = std::max(t, *k);
      out.deleted.push_back(v);
    }
    if (del.empty()) {
      Descriptor whole;
      whole.kind = DescKind::ExplicitInfinite;
      whole.residues = {"sub:1"};
      out.descs.push_back(std::move(whole));
      finalize(*this, out);
      return out;
    }
    // Components of the alive part of {1..t}, then attach the subtrees
    // rooted at t+1 .. 2t+1 to their parents.
    std::map<std::int64_t, int> comp;
    std::vector<Descriptor> descs;
    for (std::int64_t s = 1; s <= t; ++s) {
      if (del.count(s) || comp.count(s)) continue;
      const int id = static_cast<int>(descs.size());
      descs.emplace_back();
      descs[id].kind = DescKind::ExplicitFinite;
      std::set<std::int64_t> nb;
      std::vector<std::int64_t> stack{s};
      comp[s] = id;
      while (!stack.empty()) {
        const std::int64_t k = stack.back();
        stack.pop_back();
        descs[id].verts.push_back(name(k));
        std::vector<std::int64_t> nbs;
        if (k > 1) nbs.push_back(k / 2);
        nbs.push_back(2 * k);
        nbs.push_back(2 * k + 1);
        for (std::int64_t w : nbs) {
          if (w > t) continue;  // handled via subtree residues below
          if (del.count(w)) {
            nb.insert(w);
          } else if (!comp.count(w)) {
            comp[w] = id;
            stack.push_back(w);
          }
        }
      }
      for (std::int64_t w : nb) descs[id].nbhd.push_back(name(w));
    }
    for (std::int64_t c = t + 1; c <= 2 * t + 1; ++c) {
      const std::int64_t parent = c / 2;
      if (parent > t) break;
      if (del.count(parent)) {
        Descriptor d;
        d.kind = DescKind::ExplicitInfinite;
        d.residues = {"sub:" + std::to_string(c)};
        d.nbhd = {name(parent)};
        out.descs.push_back(std::move(d));
      } else {
        Descriptor& host = descs[static_cast<std::size_t>(comp.at(parent))];
        host.kind = DescKind::ExplicitInfinite;
        host.residues.push_back("sub:" + std::to_string(c));
      }
    }
    for (auto& d : descs) out.descs.push_back(std::move(d));
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    const std::int64_t c = sub_from(tag);
    auto k = parse_node(v);
    if (!k) return false;
    std::int64_t w = *k;
    while (w > c) w /= 2;
    return w == c;
  }
  VertexId residue_probe(const std::string& tag) const override {
    return name(sub_from(tag));
  }
  bool residue_bears_ends(const std::string&) const override { return true; }

  EndCatalog end_catalog() const override {
    EndCatalog c;
    c.continuum = true;
    return c;
  }

 private:
  static std::string name(std::int64_t k) { return "n" + std::to_string(k); }
  static std::optional<std::int64_t> parse_node(const VertexId& v) {
    if (v.size() < 2 || v[0] != 'n') return std::nullopt;
    bool ok = false;
    std::int64_t k = parse_int(v.substr(1), &ok);
    if (!ok || k < 1) return std::nullopt;
    return k;
  }
  static std::int64_t sub_from(const std::string& tag) {
    if (tag.rfind("sub:", 0) != 0) throw DomainError("unknown residue tag: " + tag);
    bool ok = false;
    std::int64_t c = parse_int(tag.substr(4), &ok);
    if (!ok || c < 1) throw DomainError("unknown residue tag: " + tag);
    return c;
  }
};

}  // namespace

EnginePtr make_grid_engine() { return std::make_shared<GridEngine>(); }
EnginePtr make_binary_tree_engine() { return std::make_shared<BinaryTreeEngine>(); }

}  // namespace tangles::detail
