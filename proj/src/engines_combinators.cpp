// Combinators: disjoint unions, leaf attachment, and quotients by finite
// identifications plus member-wise identification of two leaf families.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "engine_util.hpp"
#include "engines.hpp"
#include "tangles/errors.hpp"

namespace tangles::detail {

namespace {

// -------------------------------------------------------- disjoint union ---

class UnionEngine final : public Engine {
 public:
  explicit UnionEngine(std::vector<EnginePtr> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw ParseError("disjoint_union: no parts");
    std::vector<Card> sizes;
    for (const auto& p : parts_) sizes.push_back(p->vertex_count());
    inter_ = std::make_unique<Interleave>(sizes);
  }

  Card vertex_count() const override { return inter_->total(); }
  bool locally_finite() const override {
    return std::all_of(parts_.begin(), parts_.end(),
                       [](const EnginePtr& p) { return p->locally_finite(); });
  }
  VertexList infinite_degree_vertices() const override {
    VertexList out;
    for (int b = 0; b < nparts(); ++b)
      for (const auto& v : parts_[b]->infinite_degree_vertices())
        out.push_back(lift(b, v));
    return out;
  }

  VertexId vertex_at(std::int64_t rank) const override {
    auto [b, inner] = inter_->at(rank);
    return lift(b, parts_[b]->vertex_at(inner));
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto s = split(v);
    if (!s) return std::nullopt;
    auto inner = parts_[s->first]->rank_of(s->second);
    if (!inner) return std::nullopt;
    return inter_->global_rank(s->first, *inner);
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    auto a = split(u), b = split(v);
    if (!a || !b || !parts_[a->first]->rank_of(a->second) ||
        !parts_[b->first]->rank_of(b->second))
      throw DomainError("unknown vertex id");
    if (a->first != b->first) return false;
    return parts_[a->first]->adjacent(a->second, b->second);
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    auto s = split(v);
    if (!s) throw DomainError("unknown vertex id: " + v);
    NeighbourSet inner = parts_[s->first]->neighbours(s->second);
    NeighbourSet out;
    for (const auto& w : inner.finite) out.finite.push_back(lift(s->first, w));
    for (const auto& g : inner.symbolic)
      out.symbolic.push_back({std::to_string(s->first) + "/" + g.label});
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    std::vector<VertexList> xs(static_cast<std::size_t>(nparts()));
    ComponentSpace out;
    for (const auto& v : x) {
      auto s = split(v);
      if (!s) throw DomainError("unknown vertex id: " + v);
      xs[static_cast<std::size_t>(s->first)].push_back(s->second);
      out.deleted.push_back(v);
    }
    for (int b = 0; b < nparts(); ++b) {
      ComponentSpace sp = parts_[b]->components_minus(xs[static_cast<std::size_t>(b)]);
      for (auto& d : sp.descs) {
        Descriptor q;
        q.kind = d.kind;
        for (const auto& v : d.verts) q.verts.push_back(lift(b, v));
        for (const auto& t : d.residues) q.residues.push_back(lift_tag(b, t));
        for (const auto& c : d.absorbed) q.absorbed.push_back({lift(b, c.family), c.indices});
        if (d.kind == DescKind::Family) q.family = {lift(b, d.family.family), d.family.indices};
        for (const auto& v : d.nbhd) q.nbhd.push_back(lift(b, v));
        out.descs.push_back(std::move(q));
      }
    }
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    auto t = split_tag(tag);
    auto s = split(v);
    if (!s || s->first != t.first) return false;
    return parts_[t.first]->residue_contains(t.second, s->second);
  }
  VertexId residue_probe(const std::string& tag) const override {
    auto t = split_tag(tag);
    return lift(t.first, parts_[t.first]->residue_probe(t.second));
  }
  bool residue_bears_ends(const std::string& tag) const override {
    auto t = split_tag(tag);
    return parts_[t.first]->residue_bears_ends(t.second);
  }

  std::vector<FamilyInfo> families() const override {
    std::vector<FamilyInfo> out;
    for (int b = 0; b < nparts(); ++b)
      for (auto f : parts_[b]->families()) {
        FamilyInfo g;
        g.id = lift(b, f.id);
        for (const auto& h : f.hubs) g.hubs.push_back(lift(b, h));
        g.member_infinite = f.member_infinite;
        g.member_size = f.member_size;
        out.push_back(std::move(g));
      }
    return out;
  }
  std::optional<std::pair<std::string, std::int64_t>> family_of(const VertexId& v) const override {
    auto s = split(v);
    if (!s) return std::nullopt;
    auto fm = parts_[s->first]->family_of(s->second);
    if (!fm) return std::nullopt;
    return std::make_pair(lift(s->first, fm->first), fm->second);
  }
  VertexId family_member_probe(const std::string& fam, std::int64_t idx) const override {
    auto s = split(fam);
    if (!s) throw DomainError("unknown family: " + fam);
    return lift(s->first, parts_[s->first]->family_member_probe(s->second, idx));
  }
  VertexList family_member_vertices(const std::string& fam, std::int64_t idx) const override {
    auto s = split(fam);
    if (!s) throw DomainError("unknown family: " + fam);
    VertexList out;
    for (const auto& v : parts_[s->first]->family_member_vertices(s->second, idx))
      out.push_back(lift(s->first, v));
    return out;
  }

  EndCatalog end_catalog() const override {
    EndCatalog out;
    for (int b = 0; b < nparts(); ++b) {
      EndCatalog c = parts_[b]->end_catalog();
      for (const auto& id : c.singles) out.singles.push_back(lift(b, id));
      for (std::size_t k = 0; k < c.end_families.size(); ++k) {
        out.end_families.push_back(lift(b, c.end_families[k]));
        out.family_prefixes.push_back(std::to_string(b) + "/" + c.family_prefixes[k]);
      }
      out.continuum = out.continuum || c.continuum;
    }
    return out;
  }
  VertexId end_ray_at(const EndRef& e, std::int64_t k) const override {
    auto [b, inner] = split_end(e);
    return lift(b, parts_[b]->end_ray_at(inner, k));
  }
  std::optional<std::int64_t> end_ray_pos(const EndRef& e, const VertexId& v) const override {
    auto [b, inner] = split_end(e);
    auto s = split(v);
    if (!s || s->first != b) return std::nullopt;
    return parts_[b]->end_ray_pos(inner, s->second);
  }
  VertexList end_dominators(const EndRef& e) const override {
    auto [b, inner] = split_end(e);
    VertexList out;
    for (const auto& v : parts_[b]->end_dominators(inner)) out.push_back(lift(b, v));
    return out;
  }

 private:
  int nparts() const { return static_cast<int>(parts_.size()); }
  std::string lift(int b, const std::string& s) const {
    return std::to_string(b) + "/" + s;
  }
  std::string lift_tag(int b, const std::string& t) const {
    return "b" + std::to_string(b) + ":" + t;
  }
  std::optional<std::pair<int, std::string>> split(const std::string& v) const {
    const std::size_t slash = v.find('/');
    if (slash == std::string::npos || slash == 0) return std::nullopt;
    bool ok = false;
    const std::int64_t b = parse_int(v.substr(0, slash), &ok);
    if (!ok || b < 0 || b >= nparts()) return std::nullopt;
    return std::make_pair(static_cast<int>(b), v.substr(slash + 1));
  }
  std::pair<int, std::string> split_tag(const std::string& tag) const {
    if (tag.size() > 1 && tag[0] == 'b') {
      const std::size_t colon = tag.find(':');
      if (colon != std::string::npos) {
        bool ok = false;
        const std::int64_t b = parse_int(tag.substr(1, colon - 1), &ok);
        if (ok && b >= 0 && b < nparts())
          return {static_cast<int>(b), tag.substr(colon + 1)};
      }
    }
    throw DomainError("unknown residue tag: " + tag);
  }
  std::pair<int, EndRef> split_end(const EndRef& e) const {
    if (e.is_member()) {
      auto s = split(e.family);
      if (s) {
        EndRef inner;
        inner.family = s->second;
        inner.index = e.index;
        return {s->first, inner};
      }
    } else {
      auto s = split(e.single_id);
      if (s) {
        EndRef inner;
        inner.single_id = s->second;
        return {s->first, inner};
      }
    }
    throw DomainError("unknown end: " + e.display());
  }

  std::vector<EnginePtr> parts_;
  std::unique_ptr<Interleave> inter_;
};

// --------------------------------------------------------- attach leaves ---

class AttachLeavesEngine final : public Engine {
 public:
  AttachLeavesEngine(EnginePtr child, VertexId host, Card count)
      : child_(std::move(child)), host_(std::move(host)), count_(count) {
    if (!child_->rank_of(host_))
      throw ParseError("attach_leaves: unknown host vertex " + host_);
    if (count_.is_finite && count_.value < 0)
      throw ParseError("attach_leaves: negative count");
    if (child_->rank_of(leaf(0)))
      throw ParseError("attach_leaves: vertex " + leaf(0) +
                       " already exists (second leaf family at one host)");
    inter_ = std::make_unique<Interleave>(
        std::vector<Card>{child_->vertex_count(), count_});
  }

  Card vertex_count() const override { return inter_->total(); }
  bool locally_finite() const override {
    return child_->locally_finite() && count_.is_finite;
  }
  VertexList infinite_degree_vertices() const override {
    VertexList out = child_->infinite_degree_vertices();
    if (!count_.is_finite &&
        std::find(out.begin(), out.end(), host_) == out.end())
      out.push_back(host_);
    return out;
  }

  VertexId vertex_at(std::int64_t rank) const override {
    auto [part, inner] = inter_->at(rank);
    return part == 0 ? child_->vertex_at(inner) : leaf(inner);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto li = leaf_index(v);
    if (li) {
      if (count_.is_finite && *li >= count_.value) return std::nullopt;
      return inter_->global_rank(1, *li);
    }
    auto r = child_->rank_of(v);
    if (!r) return std::nullopt;
    return inter_->global_rank(0, *r);
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    if (!rank_of(u) || !rank_of(v)) throw DomainError("unknown vertex id");
    const bool lu = leaf_index(u).has_value(), lv = leaf_index(v).has_value();
    if (lu && lv) return false;
    if (lu) return v == host_;
    if (lv) return u == host_;
    return child_->adjacent(u, v);
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    if (!rank_of(v)) throw DomainError("unknown vertex id: " + v);
    if (leaf_index(v)) return NeighbourSet{{host_}, {}};
    NeighbourSet out = child_->neighbours(v);
    if (v == host_) {
      if (count_.is_finite) {
        for (std::int64_t i = 0; i < count_.value; ++i) out.finite.push_back(leaf(i));
      } else {
        out.symbolic.push_back({"leaf{i}@" + host_ + " : i in omega"});
      }
    }
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    VertexList x_child;
    std::vector<std::int64_t> leaf_del;
    ComponentSpace out;
    for (const auto& v : x) {
      if (!rank_of(v)) throw DomainError("unknown vertex id: " + v);
      auto li = leaf_index(v);
      if (li)
        leaf_del.push_back(*li);
      else
        x_child.push_back(v);
      out.deleted.push_back(v);
    }
    ComponentSpace sp = child_->components_minus(x_child);
    const bool host_deleted =
        std::find(x_child.begin(), x_child.end(), host_) != x_child.end();
    std::set<std::int64_t> dead(leaf_del.begin(), leaf_del.end());
    if (!host_deleted) {
      auto hloc = locate_in(*child_, sp, host_);
      // If the host sits inside a family member of the child, that member is
      // no longer interchangeable with its siblings: split it out first.
      int di;
      if (std::holds_alternative<MemberRef>(hloc)) {
        const auto& m = std::get<MemberRef>(hloc);
        di = extract_member(*child_, sp, m.family, m.index);
      } else {
        di = std::get<CompRef>(hloc).index;
      }
      Descriptor& d = sp.descs[static_cast<std::size_t>(di)];
      if (count_.is_finite) {
        for (std::int64_t i = 0; i < count_.value; ++i)
          if (!dead.count(i)) d.verts.push_back(leaf(i));
      } else {
        d.absorbed.push_back({family_id(), EpSet::cofinite(leaf_del)});
        d.kind = DescKind::ExplicitInfinite;
      }
      for (std::int64_t i : leaf_del) d.nbhd.push_back(leaf(i));
      out.descs = std::move(sp.descs);
    } else {
      out.descs = std::move(sp.descs);
      if (count_.is_finite) {
        for (std::int64_t i = 0; i < count_.value; ++i) {
          if (dead.count(i)) continue;
          Descriptor d;
          d.kind = DescKind::ExplicitFinite;
          d.verts = {leaf(i)};
          d.nbhd = {host_};
          out.descs.push_back(std::move(d));
        }
      } else {
        Descriptor fam;
        fam.kind = DescKind::Family;
        fam.family = {family_id(), EpSet::cofinite(leaf_del)};
        fam.nbhd = {host_};
        out.descs.push_back(std::move(fam));
      }
    }
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    if (leaf_index(v)) return false;
    return child_->residue_contains(tag, v);
  }
  VertexId residue_probe(const std::string& tag) const override {
    return child_->residue_probe(tag);
  }
  bool residue_bears_ends(const std::string& tag) const override {
    return child_->residue_bears_ends(tag);
  }

  std::vector<FamilyInfo> families() const override {
    auto out = child_->families();
    if (!count_.is_finite) out.push_back(FamilyInfo{family_id(), {host_}, false, 1});
    return out;
  }
  std::optional<std::pair<std::string, std::int64_t>> family_of(const VertexId& v) const override {
    auto li = leaf_index(v);
    if (li) {
      if (count_.is_finite) return std::nullopt;  // finite pendants are plain vertices
      return std::make_pair(family_id(), *li);
    }
    return child_->family_of(v);
  }
  VertexId family_member_probe(const std::string& fam, std::int64_t idx) const override {
    if (fam == family_id() && !count_.is_finite) return leaf(idx);
    return child_->family_member_probe(fam, idx);
  }
  VertexList family_member_vertices(const std::string& fam, std::int64_t idx) const override {
    if (fam == family_id() && !count_.is_finite) return {leaf(idx)};
    return child_->family_member_vertices(fam, idx);
  }

  EndCatalog end_catalog() const override { return child_->end_catalog(); }
  VertexId end_ray_at(const EndRef& e, std::int64_t k) const override {
    return child_->end_ray_at(e, k);
  }
  std::optional<std::int64_t> end_ray_pos(const EndRef& e, const VertexId& v) const override {
    if (leaf_index(v)) return std::nullopt;
    return child_->end_ray_pos(e, v);
  }
  VertexList end_dominators(const EndRef& e) const override {
    return child_->end_dominators(e);
  }

 private:
  std::string family_id() const { return "leaves@" + host_; }
  VertexId leaf(std::int64_t i) const { return "leaf" + std::to_string(i) + "@" + host_; }
  std::optional<std::int64_t> leaf_index(const VertexId& v) const {
    const std::string suffix = "@" + host_;
    if (v.size() <= suffix.size() + 4 || v.rfind("leaf", 0) != 0) return std::nullopt;
    if (v.compare(v.size() - suffix.size(), suffix.size(), suffix) != 0) return std::nullopt;
    bool ok = false;
    const std::int64_t i =
        parse_int(v.substr(4, v.size() - suffix.size() - 4), &ok);
    if (!ok || i < 0) return std::nullopt;
    return i;
  }

  EnginePtr child_;
  VertexId host_;
  Card count_;
  std::unique_ptr<Interleave> inter_;
};

// -------------------------------------------------------------- identify ---

// Quotient of the child graph: finitely many explicit vertex classes, plus
// optional member-wise identification of two singleton-member families
// (pairing member i of one with member i of the other, for all i). Quotient
// vertex ids are the minimal-rank class representatives.
class IdentifyEngine final : public Engine {
 public:
  IdentifyEngine(EnginePtr child, const Presentation::IdentifySpec& spec)
      : child_(std::move(child)) {
    build_classes(spec);
    validate(spec);
  }

  Card vertex_count() const override {
    Card c = child_->vertex_count();
    if (!c.is_finite) return c;
    std::int64_t dropped = 0;
    for (const auto& cl : classes_) dropped += static_cast<std::int64_t>(cl.size()) - 1;
    return Card::finite(c.value - dropped);
  }
  bool locally_finite() const override { return child_->locally_finite(); }
  VertexList infinite_degree_vertices() const override {
    std::set<VertexId> out;
    for (const auto& v : child_->infinite_degree_vertices()) out.insert(rep(v));
    return {out.begin(), out.end()};
  }

  VertexId vertex_at(std::int64_t rank) const override {
    std::lock_guard<std::mutex> lock(mu_);
    extend_until_size(rank + 1);
    if (rank < 0 || rank >= static_cast<std::int64_t>(rep_child_ranks_.size()))
      throw DomainError("rank out of range");
    return child_->vertex_at(rep_child_ranks_[static_cast<std::size_t>(rank)]);
  }
  std::optional<std::int64_t> rank_of(const VertexId& v) const override {
    auto cr = child_->rank_of(v);
    if (!cr || !is_rep(v)) return std::nullopt;
    std::lock_guard<std::mutex> lock(mu_);
    extend_until_child_rank(*cr);
    auto it = std::lower_bound(rep_child_ranks_.begin(), rep_child_ranks_.end(), *cr);
    return it - rep_child_ranks_.begin();
  }
  bool adjacent(const VertexId& u, const VertexId& v) const override {
    if (!child_->rank_of(u) || !is_rep(u) || !child_->rank_of(v) || !is_rep(v))
      throw DomainError("unknown vertex id");
    if (u == v) return false;
    for (const auto& a : members(u))
      for (const auto& b : members(v))
        if (child_->adjacent(a, b)) return true;
    return false;
  }
  NeighbourSet neighbours(const VertexId& v) const override {
    if (!child_->rank_of(v) || !is_rep(v)) throw DomainError("unknown vertex id: " + v);
    NeighbourSet out;
    std::set<VertexId> seen;
    for (const auto& a : members(v)) {
      NeighbourSet inner = child_->neighbours(a);
      for (const auto& w : inner.finite) {
        const VertexId q = rep(w);
        if (q != v && seen.insert(q).second) out.finite.push_back(q);
      }
      for (const auto& g : inner.symbolic) out.symbolic.push_back(g);
    }
    return out;
  }

  ComponentSpace components_minus(const VertexList& x) const override {
    ComponentSpace out;
    VertexList x_child;
    for (const auto& v : x) {
      if (!child_->rank_of(v) || !is_rep(v)) throw DomainError("unknown vertex id: " + v);
      for (const auto& m : members(v)) x_child.push_back(m);
      out.deleted.push_back(v);
    }
    ComponentSpace sp = child_->components_minus(x_child);

    // Split members of unpaired families out of their descriptors when they
    // are explicitly identified with something.
    for (const auto& cl : classes_) {
      if (std::find(x_child.begin(), x_child.end(), cl[0]) != x_child.end()) continue;
      for (const auto& v : cl) {
        auto fm = child_->family_of(v);
        if (!fm) continue;
        bool has_family_desc = false;
        for (const auto& d : sp.descs)
          if (d.kind == DescKind::Family && d.family.family == fm->first &&
              d.family.indices.contains(fm->second))
            has_family_desc = true;
        if (has_family_desc) extract_member(*child_, sp, fm->first, fm->second);
      }
    }

    // Union-find over descriptor slots.
    std::vector<int> parent(sp.descs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    auto locate_slot = [&](const VertexId& v) -> int {
      for (std::size_t i = 0; i < sp.descs.size(); ++i) {
        const Descriptor& d = sp.descs[i];
        if (d.kind == DescKind::Family) continue;  // handled via extraction
        if (ref_in_desc(*child_, d, v)) return static_cast<int>(i);
      }
      throw DomainError("identify: could not locate " + v);
    };

    for (const auto& cl : classes_) {
      if (std::find(x_child.begin(), x_child.end(), cl[0]) != x_child.end()) continue;
      const int first = locate_slot(cl[0]);
      for (std::size_t k = 1; k < cl.size(); ++k) unite(first, locate_slot(cl[k]));
    }

    // Member-wise family identifications.
    std::vector<char> dead(sp.descs.size(), 0);
    struct FamPos {
      bool as_family = false;
      int slot = -1;
      EpSet indices;
    };
    auto find_fam = [&](const std::string& f) -> FamPos {
      for (std::size_t i = 0; i < sp.descs.size(); ++i) {
        const Descriptor& d = sp.descs[i];
        if (d.kind == DescKind::Family && d.family.family == f)
          return {true, static_cast<int>(i), d.family.indices};
        for (const auto& c : d.absorbed)
          if (c.family == f) return {false, static_cast<int>(i), c.indices};
      }
      throw DomainError("identify: family " + f + " not present in child space");
    };
    auto drop_chunk = [&](int slot, const std::string& f) {
      auto& abs = sp.descs[static_cast<std::size_t>(slot)].absorbed;
      abs.erase(std::remove_if(abs.begin(), abs.end(),
                               [&](const FamilyChunk& c) { return c.family == f; }),
                abs.end());
    };
    for (const auto& [fa, fb] : family_pairs_) {
      const FamPos pa = find_fam(fa), pb = find_fam(fb);
      const std::string merged = merged_id(fa, fb);
      const EpSet s = pa.indices;  // both sides always lose the same members
      if (pa.as_family && pb.as_family) {
        Descriptor m;
        m.kind = DescKind::Family;
        m.family = {merged, s};
        for (const auto& h : child_famdata_.at(fa).hubs) m.nbhd.push_back(rep_child(h));
        for (const auto& h : child_famdata_.at(fb).hubs) m.nbhd.push_back(rep_child(h));
        dead[static_cast<std::size_t>(pa.slot)] = 1;
        dead[static_cast<std::size_t>(pb.slot)] = 1;
        sp.descs.push_back(std::move(m));
        parent.push_back(static_cast<int>(sp.descs.size()) - 1);
        dead.push_back(0);
      } else if (pa.as_family != pb.as_family) {
        const FamPos& fam = pa.as_family ? pa : pb;
        const FamPos& abs = pa.as_family ? pb : pa;
        const std::string& fam_name = pa.as_family ? fa : fb;
        const std::string& abs_name = pa.as_family ? fb : fa;
        dead[static_cast<std::size_t>(fam.slot)] = 1;
        drop_chunk(abs.slot, abs_name);
        Descriptor& host = sp.descs[static_cast<std::size_t>(abs.slot)];
        host.absorbed.push_back({merged, s});
        // The family side's hubs are deleted; through the identified
        // members they now neighbour the absorbing component.
        for (const auto& h : child_famdata_.at(fam_name).hubs) host.nbhd.push_back(h);
      } else {
        unite(pa.slot, pb.slot);
        drop_chunk(pa.slot, fa);
        drop_chunk(pb.slot, fb);
        sp.descs[static_cast<std::size_t>(find(pa.slot))].absorbed.push_back({merged, s});
      }
    }

    // Assemble quotient descriptors per union-find root.
    std::map<int, Descriptor> roots;
    for (std::size_t i = 0; i < sp.descs.size(); ++i) {
      if (dead[i]) continue;
      Descriptor& src = sp.descs[i];
      if (src.kind == DescKind::Family) {
        Descriptor q;
        q.kind = DescKind::Family;
        q.family = src.family;
        for (const auto& h : src.nbhd) q.nbhd.push_back(rep_child(h));
        out.descs.push_back(std::move(q));
        continue;
      }
      Descriptor& dst = roots[find(static_cast<int>(i))];
      dst.kind = dst.kind == DescKind::ExplicitInfinite || src.kind == DescKind::ExplicitInfinite
                     ? DescKind::ExplicitInfinite
                     : DescKind::ExplicitFinite;
      for (const auto& v : src.verts) dst.verts.push_back(rep_child(v));
      for (const auto& t : src.residues) dst.residues.push_back(t);
      for (const auto& c : src.absorbed) dst.absorbed.push_back(c);
      for (const auto& v : src.nbhd) dst.nbhd.push_back(rep_child(v));
    }
    for (auto& [slot, d] : roots) {
      std::sort(d.verts.begin(), d.verts.end());
      d.verts.erase(std::unique(d.verts.begin(), d.verts.end()), d.verts.end());
      if (!d.absorbed.empty()) d.kind = DescKind::ExplicitInfinite;
      out.descs.push_back(std::move(d));
    }
    finalize(*this, out);
    return out;
  }

  bool residue_contains(const std::string& tag, const VertexId& v) const override {
    for (const auto& m : members(v))
      if (child_->residue_contains(tag, m)) return true;
    return false;
  }
  VertexId residue_probe(const std::string& tag) const override {
    return rep(child_->residue_probe(tag));
  }
  bool residue_bears_ends(const std::string& tag) const override {
    return child_->residue_bears_ends(tag);
  }

  std::vector<FamilyInfo> families() const override {
    std::vector<FamilyInfo> out;
    for (const auto& f : child_->families()) {
      if (paired_.count(f.id)) continue;
      FamilyInfo g = f;
      std::set<VertexId> hubs;
      for (const auto& h : f.hubs) hubs.insert(rep(h));
      g.hubs.assign(hubs.begin(), hubs.end());
      out.push_back(std::move(g));
    }
    for (const auto& [fa, fb] : family_pairs_) {
      FamilyInfo g;
      g.id = merged_id(fa, fb);
      std::set<VertexId> hubs;
      for (const auto& h : child_famdata_.at(fa).hubs) hubs.insert(rep(h));
      for (const auto& h : child_famdata_.at(fb).hubs) hubs.insert(rep(h));
      g.hubs.assign(hubs.begin(), hubs.end());
      g.member_infinite = false;
      g.member_size = 1;
      out.push_back(std::move(g));
    }
    return out;
  }
  std::optional<std::pair<std::string, std::int64_t>> family_of(const VertexId& v) const override {
    for (const auto& m : members(v)) {
      auto fm = child_->family_of(m);
      if (!fm) continue;
      auto it = paired_.find(fm->first);
      if (it != paired_.end()) return std::make_pair(it->second, fm->second);
      return fm;
    }
    return std::nullopt;
  }
  VertexId family_member_probe(const std::string& fam, std::int64_t idx) const override {
    for (const auto& [fa, fb] : family_pairs_)
      if (merged_id(fa, fb) == fam) return merged_rep(fa, fb, idx);
    return rep(child_->family_member_probe(fam, idx));
  }
  VertexList family_member_vertices(const std::string& fam, std::int64_t idx) const override {
    for (const auto& [fa, fb] : family_pairs_)
      if (merged_id(fa, fb) == fam) return {merged_rep(fa, fb, idx)};
    VertexList out;
    for (const auto& v : child_->family_member_vertices(fam, idx)) out.push_back(rep(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  EndCatalog end_catalog() const override { return child_->end_catalog(); }
  VertexId end_ray_at(const EndRef& e, std::int64_t k) const override {
    return rep(child_->end_ray_at(e, k));
  }
  std::optional<std::int64_t> end_ray_pos(const EndRef& e, const VertexId& v) const override {
    std::optional<std::int64_t> best;
    for (const auto& m : members(v)) {
      auto p = child_->end_ray_pos(e, m);
      if (p && (!best || *p > *best)) best = p;
    }
    return best;
  }
  VertexList end_dominators(const EndRef& e) const override {
    std::set<VertexId> out;
    for (const auto& v : child_->end_dominators(e)) out.insert(rep(v));
    return {out.begin(), out.end()};
  }

 private:
  void build_classes(const Presentation::IdentifySpec& spec) {
    std::map<VertexId, int> slot;
    std::vector<std::vector<VertexId>> groups;
    std::function<int(const VertexId&)> group_of = [&](const VertexId& v) {
      auto it = slot.find(v);
      if (it != slot.end()) return it->second;
      slot[v] = static_cast<int>(groups.size());
      groups.push_back({v});
      return slot[v];
    };
    for (const auto& [a, b] : spec.pairs) {
      if (!child_->rank_of(a)) throw ParseError("identify: unknown vertex " + a);
      if (!child_->rank_of(b)) throw ParseError("identify: unknown vertex " + b);
      if (a == b) throw ParseError("identify: pair identifies a vertex with itself");
      const int ga = group_of(a), gb = group_of(b);
      if (ga == gb) continue;
      for (const auto& v : groups[static_cast<std::size_t>(gb)]) {
        slot[v] = ga;
        groups[static_cast<std::size_t>(ga)].push_back(v);
      }
      groups[static_cast<std::size_t>(gb)].clear();
    }
    for (auto& g : groups) {
      if (g.size() < 2) continue;
      std::sort(g.begin(), g.end(), [this](const VertexId& a, const VertexId& b) {
        return *child_->rank_of(a) < *child_->rank_of(b);
      });
      const int idx = static_cast<int>(classes_.size());
      for (const auto& v : g) class_of_[v] = idx;
      classes_.push_back(std::move(g));
    }
    for (const auto& [fa, fb] : spec.family_pairs) {
      family_pairs_.emplace_back(fa, fb);
      const std::string m = merged_id(fa, fb);
      paired_[fa] = m;
      paired_[fb] = m;
    }
  }

  void validate(const Presentation::IdentifySpec& spec) {
    for (const auto& cl : classes_)
      for (std::size_t i = 0; i < cl.size(); ++i)
        for (std::size_t j = i + 1; j < cl.size(); ++j)
          if (child_->adjacent(cl[i], cl[j]))
            throw ParseError("identify: identifying adjacent vertices " + cl[i] +
                             " and " + cl[j] + " would create a loop");
    std::map<std::string, FamilyInfo> fams;
    for (const auto& f : child_->families()) fams[f.id] = f;
    child_famdata_ = fams;
    std::set<std::string> used;
    for (const auto& [fa, fb] : spec.family_pairs) {
      if (fa == fb) throw ParseError("identify: cannot pair a family with itself");
      for (const auto& f : {fa, fb}) {
        auto it = fams.find(f);
        if (it == fams.end()) throw ParseError("identify: unknown family " + f);
        if (it->second.member_infinite || it->second.member_size != 1)
          throw UnsupportedError(
              "identify: only singleton-member families can be paired (got " + f + ")");
        if (!used.insert(f).second)
          throw UnsupportedError("identify: family " + f + " paired twice");
      }
      for (const auto& h : fams[fa].hubs)
        if (auto fm = child_->family_of(h); fm && fm->first == fb)
          throw UnsupportedError("identify: hub of one paired family is a member of the other");
      for (const auto& h : fams[fb].hubs)
        if (auto fm = child_->family_of(h); fm && fm->first == fa)
          throw UnsupportedError("identify: hub of one paired family is a member of the other");
    }
    for (const auto& cl : classes_)
      for (const auto& v : cl)
        if (auto fm = child_->family_of(v); fm && paired_.count(fm->first))
          throw UnsupportedError(
              "identify: explicit pairs may not touch members of paired families");
  }

  std::string merged_id(const std::string& a, const std::string& b) const {
    return a + "~" + b;
  }
  VertexId merged_rep(const std::string& fa, const std::string& fb, std::int64_t i) const {
    const VertexId a = child_->family_member_probe(fa, i);
    const VertexId b = child_->family_member_probe(fb, i);
    return *child_->rank_of(a) <= *child_->rank_of(b) ? a : b;
  }
  // Quotient representative of a child vertex.
  VertexId rep_child(const VertexId& v) const {
    auto it = class_of_.find(v);
    if (it != class_of_.end()) return classes_[static_cast<std::size_t>(it->second)][0];
    auto fm = child_->family_of(v);
    if (fm && paired_.count(fm->first)) {
      for (const auto& [fa, fb] : family_pairs_)
        if (fa == fm->first || fb == fm->first) return merged_rep(fa, fb, fm->second);
    }
    return v;
  }
  VertexId rep(const VertexId& v) const { return rep_child(v); }
  bool is_rep(const VertexId& v) const { return rep_child(v) == v; }
  // All child vertices identified into quotient vertex v.
  VertexList members(const VertexId& v) const {
    auto it = class_of_.find(v);
    if (it != class_of_.end()) return classes_[static_cast<std::size_t>(it->second)];
    auto fm = child_->family_of(v);
    if (fm && paired_.count(fm->first)) {
      for (const auto& [fa, fb] : family_pairs_)
        if (fa == fm->first || fb == fm->first)
          return {child_->family_member_probe(fa, fm->second),
                  child_->family_member_probe(fb, fm->second)};
    }
    return {v};
  }

  void extend_until_size(std::int64_t n) const {
    while (static_cast<std::int64_t>(rep_child_ranks_.size()) < n) {
      if (!extend_one()) return;
    }
  }
  void extend_until_child_rank(std::int64_t cr) const {
    while (next_child_rank_ <= cr) {
      if (!extend_one()) return;
    }
  }
  bool extend_one() const {
    const Card total = child_->vertex_count();
    while (true) {
      if (total.is_finite && next_child_rank_ >= total.value) return false;
      const VertexId v = child_->vertex_at(next_child_rank_);
      const std::int64_t cr = next_child_rank_++;
      if (is_rep(v)) {
        rep_child_ranks_.push_back(cr);
        return true;
      }
    }
  }

  EnginePtr child_;
  std::vector<std::vector<VertexId>> classes_;  // explicit classes, rank-sorted
  std::map<VertexId, int> class_of_;
  std::vector<std::pair<std::string, std::string>> family_pairs_;
  std::map<std::string, std::string> paired_;  // child family id -> merged id
  std::map<std::string, FamilyInfo> child_famdata_;
  mutable std::mutex mu_;
  mutable std::vector<std::int64_t> rep_child_ranks_;
  mutable std::int64_t next_child_rank_ = 0;
};

}  // namespace

EnginePtr make_union_engine(std::vector<EnginePtr> parts) {
  return std::make_shared<UnionEngine>(std::move(parts));
}
EnginePtr make_attach_leaves_engine(EnginePtr child, const VertexId& host, Card count) {
  return std::make_shared<AttachLeavesEngine>(std::move(child), host, count);
}
EnginePtr make_identify_engine(EnginePtr child, const Presentation::IdentifySpec& spec) {
  return std::make_shared<IdentifyEngine>(std::move(child), spec);
}

}  // namespace tangles::detail
