// Locally finite line-like constructors: finite graphs, rays, double rays,
// combs. Component analysis is closed-form interval bookkeeping.

#include <algorithm>
#include <map>
#include <set>

#include "engine_util.hpp"
#include "engines.hpp"
#include "tangles/errors.hpp"

namespace tangles::detail {

namespace {

std::string vname(std::int64_t i) { return "v" + std::to_string(i); }

// ---------------------------------------------------------------- finite ---

class FiniteEngine final : public Engine {
 public:
  FiniteEngine(std::int64_t n,
               const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
               const std::vector<std::string>& names)
      : n_(n) {
    if (n < 0) throw ParseError("finite: negative vertex count");
    if (!names.empty() && static_cast<std::int64_t>(names.size()) != n)
      throw ParseError("finite: name list does not match vertex count");
    names_.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      std::string id = names.empty() ? vname(i) : names[static_cast<std::size_t>(i)];
      if (id.empty() || id.find('/') != std::string::npos ||
          id.find(' ') != std::string::npos)
        throw ParseError("finite: bad vertex name '" + id + "'");
      if (index_.count(id)) throw ParseError("finite: duplicate vertex name " + id);
      index_[id] = i;
      names_.push_back(std::move(id));
    }
    adj_.assign(static_cast<std::size_t>(n), {});
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError("finite: edge endpoint out of range");
      if (a == b) throw ParseError("finite: loop edge");
      adj_[static_cast<std::size_t>(a)].insert(b);
      adj_[static_cast<std::size_t>(b)].insert(a);
    }
  }

  Card vertex_count() const override { return Card::finite(n_); }
  bool locally_finite() const override { return true; }

  VertexId vertex_at(std::int64_t rank) const override {
    if (rank < 0 || rank >= n_) throw DomainError("rank out of range");
    return names_[static_cast<std::size_t>(rank)];
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    auto a = rank_of(u), b = rank_of(v);
    if (!a || !b) throw DomainError("unknown vertex id");
    return adj_[static_cast<std::size_t>(*a)].count(*b) > 0;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    auto r = rank_of(v);
    if (!r) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    for (std::int64_t w : adj_[static_cast<std::size_t>(*r)])
      out.finite.push_back(names_[static_cast<std::size_t>(w)]);
    std::sort(out.finite.begin(), out.finite.end(),
              [this](const VertexId& a, const VertexId& b) { return *rank_of(a) < *rank_of(b); });
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    std::vector<char> del(static_cast<std::size_t>(n_), 0);
    ComponentSpace out;
    for (const auto& v : x) {
      auto r = rank_of(v);
      if (!r) throw DomainError("unknown vertex id: " + v);
      del[static_cast<std::size_t>(*r)] = 1;
      out.deleted.push_back(v);
    }
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (std::int64_t s = 0; s < n_; ++s) {
      if (del[s] || seen[s]) continue;
      Descriptor d;
      d.kind = DescKind::ExplicitFinite;
      std::set<std::int64_t> nb;
      std::vector<std::int64_t> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        std::int64_t v = stack.back();
        stack.pop_back();
        d.verts.push_back(names_[static_cast<std::size_t>(v)]);
        for (std::int64_t w : adj_[static_cast<std::size_t>(v)]) {
          if (del[w]) {
            nb.insert(w);
          } else if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      for (std::int64_t w : nb) d.nbhd.push_back(names_[static_cast<std::size_t>(w)]);
      out.descs.push_back(std::move(d));
    }
    finalize(*this, out);
    return out;
  }

 private:
  std::int64_t n_;
  std::vector<std::string> names_;
  std::map<std::string, std::int64_t> index_;
  std::vector<std::set<std::int64_t>> adj_;
};

// ------------------------------------------------------------------- ray ---

// Parses "v{i}" (i possibly negative); returns nullopt otherwise.
std::optional<std::int64_t> parse_v(const VertexId& v) {
  if (v.size() < 2 || v[0] != 'v') return std::nullopt;
  bool ok = false;
  std::int64_t i = parse_int(v.substr(1), &ok);
  if (!ok) return std::nullopt;
  return i;
}

class RayEngine final : public Engine {
 public:
  Card vertex_count() const override { return Card::omega(); }
  bool locally_finite() const override { return true; }
  VertexId vertex_at(std::int64_t rank) const override {
    if (rank < 0) throw DomainError("rank out of range");
    return vname(rank);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto i = parse_v(v);
    if (!i || *i < 0) return std::nullopt;
    return *i;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    auto a = rank_of(u), b = rank_of(v);
    if (!a || !b) throw DomainError("unknown vertex id");
    return std::abs(*a - *b) == 1;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    auto i = rank_of(v);
    if (!i) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    if (*i > 0) out.finite.push_back(vname(*i - 1));
    out.finite.push_back(vname(*i + 1));
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    std::vector<std::int64_t> del;
    for (const auto& v : x) {
      auto i = rank_of(v);
      if (!i) throw DomainError("unknown vertex id: " + v);
      del.push_back(*i);
      out.deleted.push_back(v);
    }
    std::sort(del.begin(), del.end());
    auto split = split_segments(del, 0);
    for (auto [a, b] : split.segments) {
      Descriptor d;
      d.kind = DescKind::ExplicitFinite;
      for (std::int64_t i = a; i <= b; ++i) d.verts.push_back(vname(i));
      if (a > 0) d.nbhd.push_back(vname(a - 1));
      d.nbhd.push_back(vname(b + 1));
      out.descs.push_back(std::move(d));
    }
    Descriptor tail;
    tail.kind = DescKind::ExplicitInfinite;
    tail.residues.push_back("tail:" + std::to_string(split.tail_start));
    if (split.tail_start > 0) tail.nbhd.push_back(vname(split.tail_start - 1));
    out.descs.push_back(std::move(tail));
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    auto i = rank_of(v);
    return i && *i >= tail_from(tag);
  }
  VertexId residue_probe(const std::string& tag) const override {
    return vname(tail_from(tag));
  }
  bool residue_bears_ends(const std::string&) const override { return true; }

  EndCatalog end_catalog() const override {
    EndCatalog c;
    c.singles = {"0"};
    return c;
  }
  VertexId end_ray_at(const EndRef&, std::int64_t k) const override { return vname(k); }
  std::optional<std::int64_t> end_ray_pos(const EndRef&, const VertexId& v) const override {
    return rank_of(v);
  }

 private:
  static std::int64_t tail_from(const std::string& tag) {
    if (tag.rfind("tail:", 0) != 0) throw DomainError("unknown residue tag: " + tag);
    bool ok = false;
    std::int64_t j = parse_int(tag.substr(5), &ok);
    if (!ok) throw DomainError("unknown residue tag: " + tag);
    return j;
  }
};

// ------------------------------------------------------------ double ray ---

class DoubleRayEngine final : public Engine {
 public:
  Card vertex_count() const override { return Card::omega(); }
  bool locally_finite() const override { return true; }
  VertexId vertex_at(std::int64_t rank) const override {
    if (rank < 0) throw DomainError("rank out of range");
    // 0, 1, -1, 2, -2, ...
    if (rank == 0) return vname(0);
    return rank % 2 == 1 ? vname((rank + 1) / 2) : vname(-rank / 2);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto i = parse_v(v);
    if (!i) return std::nullopt;
    if (*i == 0) return 0;
    return *i > 0 ? 2 * *i - 1 : -2 * *i;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    auto a = parse_v(u), b = parse_v(v);
    if (!a || !b) throw DomainError("unknown vertex id");
    return std::abs(*a - *b) == 1;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    auto i = parse_v(v);
    if (!i) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    out.finite = {vname(*i - 1), vname(*i + 1)};
    std::sort(out.finite.begin(), out.finite.end(),
              [this](const VertexId& a, const VertexId& b) { return *rank_of(a) < *rank_of(b); });
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    std::vector<std::int64_t> del;
    for (const auto& v : x) {
      auto i = parse_v(v);
      if (!i) throw DomainError("unknown vertex id: " + v);
      del.push_back(*i);
      out.deleted.push_back(v);
    }
    if (del.empty()) {
      Descriptor whole;
      whole.kind = DescKind::ExplicitInfinite;
      whole.residues = {"rtail:0", "ltail:-1"};
      out.descs.push_back(std::move(whole));
      finalize(*this, out);
      return out;
    }
    std::sort(del.begin(), del.end());
    const std::int64_t lo = del.front(), hi = del.back();
    Descriptor left;
    left.kind = DescKind::ExplicitInfinite;
    left.residues = {"ltail:" + std::to_string(lo - 1)};
    left.nbhd = {vname(lo)};
    out.descs.push_back(std::move(left));
    for (std::size_t k = 0; k + 1 < del.size(); ++k) {
      if (del[k + 1] <= del[k] + 1) continue;
      Descriptor seg;
      seg.kind = DescKind::ExplicitFinite;
      for (std::int64_t i = del[k] + 1; i < del[k + 1]; ++i) seg.verts.push_back(vname(i));
      seg.nbhd = {vname(del[k]), vname(del[k + 1])};
      out.descs.push_back(std::move(seg));
    }
    Descriptor right;
    right.kind = DescKind::ExplicitInfinite;
    right.residues = {"rtail:" + std::to_string(hi + 1)};
    right.nbhd = {vname(hi)};
    out.descs.push_back(std::move(right));
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    auto i = parse_v(v);
    if (!i) return false;
    auto [right, j] = parse_tag(tag);
    return right ? *i >= j : *i <= j;
  }
  VertexId residue_probe(const std::string& tag) const override {
    auto [right, j] = parse_tag(tag);
    (void)right;
    return vname(j);
  }
  bool residue_bears_ends(const std::string&) const override { return true; }

  EndCatalog end_catalog() const override {
    EndCatalog c;
    c.singles = {"0", "1"};  // right and left end
    return c;
  }
  VertexId end_ray_at(const EndRef& e, std::int64_t k) const override {
    return e.single_id == "0" ? vname(k) : vname(-k);
  }
  std::optional<std::int64_t> end_ray_pos(const EndRef& e, const VertexId& v) const override {
    auto i = parse_v(v);
    if (!i) return std::nullopt;
    if (e.single_id == "0") return *i >= 0 ? std::optional(*i) : std::nullopt;
    return *i <= 0 ? std::optional(-*i) : std::nullopt;
  }

 private:
  static std::pair<bool, std::int64_t> parse_tag(const std::string& tag) {
    bool ok = false;
    if (tag.rfind("rtail:", 0) == 0) {
      std::int64_t j = parse_int(tag.substr(6), &ok);
      if (ok) return {true, j};
    } else if (tag.rfind("ltail:", 0) == 0) {
      std::int64_t j = parse_int(tag.substr(6), &ok);
      if (ok) return {false, j};
    }
    throw DomainError("unknown residue tag: " + tag);
  }
};

// ------------------------------------------------------------------ comb ---

// Spine v0 - v1 - ... with one tooth t_i pendant at every spine vertex.
class CombEngine final : public Engine {
 public:
  Card vertex_count() const override { return Card::omega(); }
  bool locally_finite() const override { return true; }
  VertexId vertex_at(std::int64_t rank) const override {
    if (rank < 0) throw DomainError("rank out of range");
    return rank % 2 == 0 ? vname(rank / 2) : "t" + std::to_string(rank / 2);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto p = parse_id(v);
    if (!p) return std::nullopt;
    return p->second ? 2 * p->first + 1 : 2 * p->first;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    auto a = parse_id(u), b = parse_id(v);
    if (!a || !b) throw DomainError("unknown vertex id");
    if (!a->second && !b->second) return std::abs(a->first - b->first) == 1;
    if (a->second != b->second) return a->first == b->first;
    return false;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    auto p = parse_id(v);
    if (!p) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    if (p->second) {
      out.finite = {vname(p->first)};
      return out;
    }
    if (p->first > 0) out.finite.push_back(vname(p->first - 1));
    out.finite.push_back("t" + std::to_string(p->first));
    out.finite.push_back(vname(p->first + 1));
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    std::vector<std::int64_t> spine_del;
    std::set<std::int64_t> tooth_del;
    for (const auto& v : x) {
      auto p = parse_id(v);
      if (!p) throw DomainError("unknown vertex id: " + v);
      if (p->second)
        tooth_del.insert(p->first);
      else
        spine_del.push_back(p->first);
      out.deleted.push_back(v);
    }
    std::sort(spine_del.begin(), spine_del.end());
    auto split = split_segments(spine_del, 0);
    for (auto [a, b] : split.segments) {
      Descriptor d;
      d.kind = DescKind::ExplicitFinite;
      for (std::int64_t i = a; i <= b; ++i) {
        d.verts.push_back(vname(i));
        if (tooth_del.count(i))
          d.nbhd.push_back("t" + std::to_string(i));
        else
          d.verts.push_back("t" + std::to_string(i));
      }
      if (a > 0) d.nbhd.push_back(vname(a - 1));
      d.nbhd.push_back(vname(b + 1));
      out.descs.push_back(std::move(d));
    }
    // Teeth of deleted spine vertices become isolated singletons.
    for (std::int64_t i : spine_del) {
      if (tooth_del.count(i)) continue;
      Descriptor d;
      d.kind = DescKind::ExplicitFinite;
      d.verts = {"t" + std::to_string(i)};
      d.nbhd = {vname(i)};
      out.descs.push_back(std::move(d));
    }
    Descriptor tail;
    tail.kind = DescKind::ExplicitInfinite;
    tail.residues = {"tail:" + std::to_string(split.tail_start)};
    if (split.tail_start > 0) tail.nbhd.push_back(vname(split.tail_start - 1));
    for (std::int64_t i : tooth_del)
      if (i >= split.tail_start) tail.nbhd.push_back("t" + std::to_string(i));
    out.descs.push_back(std::move(tail));
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    auto p = parse_id(v);
    return p && p->first >= tail_from(tag);
  }
  VertexId residue_probe(const std::string& tag) const override {
    return vname(tail_from(tag));
  }
  bool residue_bears_ends(const std::string&) const override { return true; }

  EndCatalog end_catalog() const override {
    EndCatalog c;
    c.singles = {"0"};
    return c;
  }
  VertexId end_ray_at(const EndRef&, std::int64_t k) const override { return vname(k); }
  std::optional<std::int64_t> end_ray_pos(const EndRef&, const VertexId& v) const override {
    auto p = parse_id(v);
    if (!p || p->second) return std::nullopt;
    return p->first;
  }

 private:
  // (index, is_tooth)
  static std::optional<std::pair<std::int64_t, bool>> parse_id(const VertexId& v) {
    if (v.size() < 2) return std::nullopt;
    bool tooth = v[0] == 't';
    if (!tooth && v[0] != 'v') return std::nullopt;
    bool ok = false;
    std::int64_t i = parse_int(v.substr(1), &ok);
    if (!ok || i < 0) return std::nullopt;
    return std::make_pair(i, tooth);
  }
  static std::int64_t tail_from(const std::string& tag) {
    if (tag.rfind("tail:", 0) != 0) throw DomainError("unknown residue tag: " + tag);
    bool ok = false;
    std::int64_t j = parse_int(tag.substr(5), &ok);
    if (!ok) throw DomainError("unknown residue tag: " + tag);
    return j;
  }
};

}  // namespace

EnginePtr make_finite_engine(std::int64_t n,
                             const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                             const std::vector<std::string>& names) {
  return std::make_shared<FiniteEngine>(n, edges, names);
}
EnginePtr make_ray_engine() { return std::make_shared<RayEngine>(); }
EnginePtr make_double_ray_engine() { return std::make_shared<DoubleRayEngine>(); }
EnginePtr make_comb_engine() { return std::make_shared<CombEngine>(); }

}  // namespace tangles::detail
