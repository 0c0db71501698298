// Constructors with a distinguished high-degree vertex: stars, spiders and
// the dominated ray.

#include <algorithm>
#include <map>
#include <set>

#include "engine_util.hpp"
#include "engines.hpp"
#include "tangles/errors.hpp"

namespace tangles::detail {

namespace {

std::string vname(std::int64_t i) { return "v" + std::to_string(i); }
std::string leafname(std::int64_t i) { return "leaf" + std::to_string(i); }
std::string legname(std::int64_t l, std::int64_t j) {
  return "leg" + std::to_string(l) + "_" + std::to_string(j);
}

std::optional<std::int64_t> parse_suffix(const VertexId& v, const std::string& prefix) {
  if (v.rfind(prefix, 0) != 0) return std::nullopt;
  bool ok = false;
  std::int64_t i = parse_int(v.substr(prefix.size()), &ok);
  if (!ok || i < 0) return std::nullopt;
  return i;
}

// ------------------------------------------------------------------ star ---

class StarEngine final : public Engine {
 public:
  explicit StarEngine(Card size) : size_(size) {
    if (size_.is_finite && size_.value < 0) throw ParseError("star: negative size");
  }

  Card vertex_count() const override {
    return size_.is_finite ? Card::finite(size_.value + 1) : Card::omega();
  }
  bool locally_finite() const override { return size_.is_finite; }
  VertexList infinite_degree_vertices() const override {
    return size_.is_finite ? VertexList{} : VertexList{"center"};
  }

  VertexId vertex_at(std::int64_t rank) const override {
    if (rank == 0) return "center";
    if (rank < 0 || (size_.is_finite && rank > size_.value))
      throw DomainError("rank out of range");
    return leafname(rank - 1);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    if (v == "center") return 0;
    auto i = parse_suffix(v, "leaf");
    if (!i || (size_.is_finite && *i >= size_.value)) return std::nullopt;
    return *i + 1;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    if (!rank_of(u) || !rank_of(v)) throw DomainError("unknown vertex id");
    return (u == "center") != (v == "center");
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    if (!rank_of(v)) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    if (v != "center") {
      out.finite = {"center"};
    } else if (size_.is_finite) {
      for (std::int64_t i = 0; i < size_.value; ++i) out.finite.push_back(leafname(i));
    } else {
      out.symbolic.push_back({"leaf{i} : i in omega"});
    }
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    bool center_del = false;
    std::vector<std::int64_t> leaf_del;
    for (const auto& v : x) {
      if (!rank_of(v)) throw DomainError("unknown vertex id: " + v);
      if (v == "center")
        center_del = true;
      else
        leaf_del.push_back(*parse_suffix(v, "leaf"));
      out.deleted.push_back(v);
    }
    if (size_.is_finite) {
      std::set<std::int64_t> dead(leaf_del.begin(), leaf_del.end());
      if (center_del) {
        for (std::int64_t i = 0; i < size_.value; ++i) {
          if (dead.count(i)) continue;
          Descriptor d;
          d.kind = DescKind::ExplicitFinite;
          d.verts = {leafname(i)};
          d.nbhd = {"center"};
          out.descs.push_back(std::move(d));
        }
      } else {
        Descriptor d;
        d.kind = DescKind::ExplicitFinite;
        d.verts = {"center"};
        for (std::int64_t i = 0; i < size_.value; ++i)
          if (!dead.count(i)) d.verts.push_back(leafname(i));
        for (std::int64_t i : leaf_del) d.nbhd.push_back(leafname(i));
        out.descs.push_back(std::move(d));
      }
      finalize(*this, out);
      return out;
    }
    if (center_del) {
      Descriptor fam;
      fam.kind = DescKind::Family;
      fam.family = {"leaves", EpSet::cofinite(leaf_del)};
      fam.nbhd = {"center"};
      out.descs.push_back(std::move(fam));
    } else {
      Descriptor big;
      big.kind = DescKind::ExplicitInfinite;
      big.verts = {"center"};
      big.absorbed.push_back({"leaves", EpSet::cofinite(leaf_del)});
      for (std::int64_t i : leaf_del) big.nbhd.push_back(leafname(i));
      out.descs.push_back(std::move(big));
    }
    finalize(*this, out);
    return out;
  }

  std::vector<FamilyInfo> families() const override {
    if (size_.is_finite) return {};
    return {FamilyInfo{"leaves", {"center"}, false, 1}};
  }
  std::optional<std::pair<std::string, std::int64_t>> family_of(const VertexId& v) const override {
    if (size_.is_finite) return std::nullopt;
    auto i = parse_suffix(v, "leaf");
    if (!i) return std::nullopt;
    return std::make_pair(std::string("leaves"), *i);
  }
  VertexId family_member_probe(const std::string& fam, std::int64_t idx) const override {
    if (fam != "leaves" || size_.is_finite) throw DomainError("unknown family: " + fam);
    return leafname(idx);
  }
  VertexList family_member_vertices(const std::string& fam, std::int64_t idx) const override {
    return {family_member_probe(fam, idx)};
  }

 private:
  Card size_;
};

// ---------------------------------------------------------------- spider ---

class SpiderEngine final : public Engine {
 public:
  explicit SpiderEngine(Card legs) : legs_(legs) {
    if (legs_.is_finite && legs_.value < 0) throw ParseError("spider: negative leg count");
  }

  Card vertex_count() const override {
    return legs_.is_finite && legs_.value == 0 ? Card::finite(1) : Card::omega();
  }
  bool locally_finite() const override { return legs_.is_finite; }
  VertexList infinite_degree_vertices() const override {
    return legs_.is_finite ? VertexList{} : VertexList{"body"};
  }

  VertexId vertex_at(std::int64_t rank) const override {
    if (rank == 0) return "body";
    if (rank < 0) throw DomainError("rank out of range");
    // Diagonal enumeration of pairs (l, j) with l below the leg count.
    std::int64_t left = rank - 1;
    for (std::int64_t s = 0;; ++s) {
      const std::int64_t width =
          legs_.is_finite ? std::min(s + 1, legs_.value) : s + 1;
      if (legs_.is_finite && width == 0) throw DomainError("rank out of range");
      if (left < width) return legname(left, s - left);
      left -= width;
    }
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    if (v == "body") return 0;
    auto p = parse_leg(v);
    if (!p) return std::nullopt;
    auto [l, j] = *p;
    if (legs_.is_finite && l >= legs_.value) return std::nullopt;
    const std::int64_t s = l + j;
    std::int64_t r = 1;
    for (std::int64_t s2 = 0; s2 < s; ++s2)
      r += legs_.is_finite ? std::min(s2 + 1, legs_.value) : s2 + 1;
    return r + l;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    if (!rank_of(u) || !rank_of(v)) throw DomainError("unknown vertex id");
    if (u == "body" || v == "body") {
      auto p = parse_leg(u == "body" ? v : u);
      return p && p->second == 0;
    }
    auto a = parse_leg(u), b = parse_leg(v);
    return a->first == b->first && std::abs(a->second - b->second) == 1;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    if (!rank_of(v)) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    if (v == "body") {
      if (legs_.is_finite) {
        for (std::int64_t l = 0; l < legs_.value; ++l) out.finite.push_back(legname(l, 0));
      } else {
        out.symbolic.push_back({"leg{l}_0 : l in omega"});
      }
      return out;
    }
    auto [l, j] = *parse_leg(v);
    if (j == 0)
      out.finite.push_back("body");
    else
      out.finite.push_back(legname(l, j - 1));
    out.finite.push_back(legname(l, j + 1));
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    bool body_del = false;
    std::map<std::int64_t, std::vector<std::int64_t>> leg_del;
    for (const auto& v : x) {
      if (!rank_of(v)) throw DomainError("unknown vertex id: " + v);
      if (v == "body") {
        body_del = true;
      } else {
        auto [l, j] = *parse_leg(v);
        leg_del[l].push_back(j);
      }
      out.deleted.push_back(v);
    }
    std::vector<std::int64_t> touched;
    for (auto& [l, js] : leg_del) {
      std::sort(js.begin(), js.end());
      touched.push_back(l);
    }

    Descriptor big;  // the component of the body, when the body survives
    big.kind = DescKind::ExplicitInfinite;
    if (!body_del) big.verts = {"body"};

    auto leg_tail = [&](std::int64_t l, std::int64_t start, const VertexId& bound) {
      Descriptor t;
      t.kind = DescKind::ExplicitInfinite;
      t.residues = {"legtail:" + std::to_string(l) + ":" + std::to_string(start)};
      if (!bound.empty()) t.nbhd.push_back(bound);
      return t;
    };

    for (std::int64_t l : touched) {
      auto split = split_segments(leg_del[l], 0);
      for (auto [a, b] : split.segments) {
        if (a == 0 && !body_del) {
          for (std::int64_t j = a; j <= b; ++j) big.verts.push_back(legname(l, j));
          big.nbhd.push_back(legname(l, b + 1));
          continue;
        }
        Descriptor seg;
        seg.kind = DescKind::ExplicitFinite;
        for (std::int64_t j = a; j <= b; ++j) seg.verts.push_back(legname(l, j));
        if (a == 0)
          seg.nbhd.push_back("body");
        else
          seg.nbhd.push_back(legname(l, a - 1));
        seg.nbhd.push_back(legname(l, b + 1));
        out.descs.push_back(std::move(seg));
      }
      out.descs.push_back(leg_tail(l, split.tail_start, legname(l, split.tail_start - 1)));
      if (!body_del && leg_del[l].front() == 0) big.nbhd.push_back(legname(l, 0));
    }

    if (legs_.is_finite) {
      for (std::int64_t l = 0; l < legs_.value; ++l) {
        if (leg_del.count(l)) continue;
        if (body_del) {
          auto t = leg_tail(l, 0, "");
          t.nbhd = {"body"};
          out.descs.push_back(std::move(t));
        } else {
          big.residues.push_back("legtail:" + std::to_string(l) + ":0");
        }
      }
      if (!body_del) {
        if (big.residues.empty()) big.kind = DescKind::ExplicitFinite;
        out.descs.push_back(std::move(big));
      }
    } else {
      if (body_del) {
        Descriptor fam;
        fam.kind = DescKind::Family;
        fam.family = {"legs", EpSet::cofinite(touched)};
        fam.nbhd = {"body"};
        out.descs.push_back(std::move(fam));
      } else {
        big.absorbed.push_back({"legs", EpSet::cofinite(touched)});
        out.descs.push_back(std::move(big));
      }
    }
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    auto [l, start] = parse_tag(tag);
    auto p = parse_leg(v);
    return p && p->first == l && p->second >= start;
  }
  VertexId residue_probe(const std::string& tag) const override {
    auto [l, start] = parse_tag(tag);
    return legname(l, start);
  }
  bool residue_bears_ends(const std::string&) const override { return true; }

  std::vector<FamilyInfo> families() const override {
    if (legs_.is_finite) return {};
    return {FamilyInfo{"legs", {"body"}, true, 0}};
  }
  std::optional<std::pair<std::string, std::int64_t>> family_of(const VertexId& v) const override {
    if (legs_.is_finite) return std::nullopt;
    auto p = parse_leg(v);
    if (!p) return std::nullopt;
    return std::make_pair(std::string("legs"), p->first);
  }
  VertexId family_member_probe(const std::string& fam, std::int64_t idx) const override {
    if (fam != "legs" || legs_.is_finite) throw DomainError("unknown family: " + fam);
    return legname(idx, 0);
  }

  EndCatalog end_catalog() const override {
    EndCatalog c;
    if (legs_.is_finite) {
      for (std::int64_t l = 0; l < legs_.value; ++l)
        c.singles.push_back("leg" + std::to_string(l));
    } else {
      c.end_families = {"legs"};
      c.family_prefixes = {"leg"};
    }
    return c;
  }
  VertexId end_ray_at(const EndRef& e, std::int64_t k) const override {
    return legname(end_leg(e), k);
  }
  std::optional<std::int64_t> end_ray_pos(const EndRef& e, const VertexId& v) const override {
    auto p = parse_leg(v);
    if (!p || p->first != end_leg(e)) return std::nullopt;
    return p->second;
  }

 private:
  static std::optional<std::pair<std::int64_t, std::int64_t>> parse_leg(const VertexId& v) {
    if (v.rfind("leg", 0) != 0) return std::nullopt;
    const std::size_t us = v.find('_');
    if (us == std::string::npos) return std::nullopt;
    bool ok1 = false, ok2 = false;
    const std::int64_t l = parse_int(v.substr(3, us - 3), &ok1);
    const std::int64_t j = parse_int(v.substr(us + 1), &ok2);
    if (!ok1 || !ok2 || l < 0 || j < 0) return std::nullopt;
    return std::make_pair(l, j);
  }
  static std::pair<std::int64_t, std::int64_t> parse_tag(const std::string& tag) {
    if (tag.rfind("legtail:", 0) == 0) {
      const std::size_t colon = tag.find(':', 8);
      if (colon != std::string::npos) {
        bool ok1 = false, ok2 = false;
        const std::int64_t l = parse_int(tag.substr(8, colon - 8), &ok1);
        const std::int64_t s = parse_int(tag.substr(colon + 1), &ok2);
        if (ok1 && ok2) return {l, s};
      }
    }
    throw DomainError("unknown residue tag: " + tag);
  }
  std::int64_t end_leg(const EndRef& e) const {
    if (e.is_member()) {
      if (e.family != "legs") throw DomainError("unknown end: " + e.display());
      return e.index;
    }
    auto l = parse_suffix(e.single_id, "leg");
    if (!l || !legs_.is_finite || *l >= legs_.value)
      throw DomainError("unknown end: " + e.display());
    return *l;
  }

  Card legs_;
};

// -------------------------------------------------------- dominated ray ---

// A ray v0 - v1 - ... together with one vertex c adjacent to every v_i.
class DominatedRayEngine final : public Engine {
 public:
  Card vertex_count() const override { return Card::omega(); }
  bool locally_finite() const override { return false; }
  VertexList infinite_degree_vertices() const override { return {"c"}; }

  VertexId vertex_at(std::int64_t rank) const override {
    if (rank < 0) throw DomainError("rank out of range");
    return rank == 0 ? "c" : vname(rank - 1);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    if (v == "c") return 0;
    auto i = parse_suffix(v, "v");
    if (!i) return std::nullopt;
    return *i + 1;
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    if (!rank_of(u) || !rank_of(v)) throw DomainError("unknown vertex id");
    if (u == "c" || v == "c") return u != v;
    return std::abs(*parse_suffix(u, "v") - *parse_suffix(v, "v")) == 1;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    if (!rank_of(v)) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    if (v == "c") {
      out.symbolic.push_back({"v{i} : i in omega"});
      return out;
    }
    const std::int64_t i = *parse_suffix(v, "v");
    out.finite.push_back("c");
    if (i > 0) out.finite.push_back(vname(i - 1));
    out.finite.push_back(vname(i + 1));
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    bool c_del = false;
    std::vector<std::int64_t> del;
    for (const auto& v : x) {
      if (!rank_of(v)) throw DomainError("unknown vertex id: " + v);
      if (v == "c")
        c_del = true;
      else
        del.push_back(*parse_suffix(v, "v"));
      out.deleted.push_back(v);
    }
    std::sort(del.begin(), del.end());
    auto split = split_segments(del, 0);
    if (!c_del) {
      // c holds every surviving piece together: one infinite component.
      Descriptor big;
      big.kind = DescKind::ExplicitInfinite;
      big.verts = {"c"};
      for (auto [a, b] : split.segments)
        for (std::int64_t i = a; i <= b; ++i) big.verts.push_back(vname(i));
      big.residues = {"tail:" + std::to_string(split.tail_start)};
      for (std::int64_t i : del) big.nbhd.push_back(vname(i));
      out.descs.push_back(std::move(big));
      finalize(*this, out);
      return out;
    }
    for (auto [a, b] : split.segments) {
      Descriptor seg;
      seg.kind = DescKind::ExplicitFinite;
      for (std::int64_t i = a; i <= b; ++i) seg.verts.push_back(vname(i));
      seg.nbhd.push_back("c");
      if (a > 0) seg.nbhd.push_back(vname(a - 1));
      seg.nbhd.push_back(vname(b + 1));
      out.descs.push_back(std::move(seg));
    }
    Descriptor tail;
    tail.kind = DescKind::ExplicitInfinite;
    tail.residues = {"tail:" + std::to_string(split.tail_start)};
    tail.nbhd.push_back("c");
    if (split.tail_start > 0) tail.nbhd.push_back(vname(split.tail_start - 1));
    out.descs.push_back(std::move(tail));
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    auto i = parse_suffix(v, "v");
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
    return parse_suffix(v, "v");
  }
  VertexList end_dominators(const EndRef&) const override { return {"c"}; }

 private:
  static std::int64_t tail_from(const std::string& tag) {
    if (tag.rfind("tail:", 0) != 0) throw DomainError("unknown residue tag: " + tag);
    bool ok = false;
    std::int64_t j = parse_int(tag.substr(5), &ok);
    if (!ok) throw DomainError("unknown residue tag: " + tag);
    return j;
  }
};

}  // namespace

EnginePtr make_star_engine(Card size) { return std::make_shared<StarEngine>(size); }
EnginePtr make_spider_engine(Card legs) { return std::make_shared<SpiderEngine>(legs); }
EnginePtr make_dominated_ray_engine() { return std::make_shared<DominatedRayEngine>(); }

}  // namespace tangles::detail
