#include "tangles/topology.hpp"

#include <algorithm>

#include "tangles/errors.hpp"

namespace tangles {

namespace {

int family_desc_index(const ComponentSpace& space, const std::string& fam) {
  for (int i = 0; i < static_cast<int>(space.descs.size()); ++i)
    if (space.descs[static_cast<std::size_t>(i)].kind == DescKind::Family &&
        space.descs[static_cast<std::size_t>(i)].family.family == fam)
      return i;
  return -1;
}

bool vlist_contains(const VertexList& xs, const VertexId& v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

}  // namespace

SpacePoint SpacePoint::vertex(VertexId id) {
  SpacePoint pt;
  pt.kind = Vertex;
  pt.v = std::move(id);
  return pt;
}
SpacePoint SpacePoint::edge_point(VertexId u, VertexId w, std::int64_t num,
                                  std::int64_t den) {
  SpacePoint pt;
  pt.kind = EdgePoint;
  pt.eu = std::move(u);
  pt.ev = std::move(w);
  pt.t = {num, den};
  return pt;
}
SpacePoint SpacePoint::tangle(TangleHandle h) {
  SpacePoint pt;
  pt.kind = Tangle;
  pt.tau = std::move(h);
  return pt;
}

Ternary in_basic_open(const Presentation& p, const SpacePoint& pt, const VertexList& x,
                      const SideSel& side) {
  const VertexList cx = p.canon_set(x);
  const ComponentSpace sp = p.eng().components_minus(cx);
  const SideSel big = side_normalize(sp, side);
  switch (pt.kind) {
    case SpacePoint::Vertex: {
      if (!p.valid_vertex(pt.v)) throw DomainError("unknown vertex id: " + pt.v);
      if (vlist_contains(cx, pt.v)) return Ternary::False;  // X is not part of the open set
      return side_has(sp, big, locate(p, sp, pt.v)) ? Ternary::True : Ternary::False;
    }
    case SpacePoint::EdgePoint: {
      if (!p.adjacent(pt.eu, pt.ev)) throw DomainError("edge point on a non-edge");
      if (pt.t.second <= 0 || pt.t.first <= 0 || pt.t.first >= pt.t.second)
        throw DomainError("edge point coordinate outside (0,1)");
      const bool u_in = !vlist_contains(cx, pt.eu);
      const bool v_in = !vlist_contains(cx, pt.ev);
      // Inside the selected components, or on an X - selected-side edge.
      if (u_in && v_in)
        return side_has(sp, big, locate(p, sp, pt.eu)) ? Ternary::True : Ternary::False;
      if (!u_in && !v_in) return Ternary::False;
      const VertexId& alive = u_in ? pt.eu : pt.ev;
      return side_has(sp, big, locate(p, sp, alive)) ? Ternary::True : Ternary::False;
    }
    default: {
      const UltrafilterDescriptor uf = induced_ultrafilter(p, pt.tau, cx);
      return side_in_ultrafilter(p, sp, uf, big);
    }
  }
}

BipartitionReport clopen_bipartition(const Presentation& p, const GammaElement& g,
                                     const TangleSpaceResult& space) {
  if (g.classes.size() != 2)
    throw DomainError("clopen_bipartition needs a two-class gamma element");
  const ComponentSpace sp = p.eng().components_minus(g.x);
  BipartitionReport rep;
  auto assign = [&](const TangleHandle& tau, const std::string& what) {
    const UltrafilterDescriptor uf = induced_ultrafilter(p, tau, g.x);
    const Ternary in0 = side_in_ultrafilter(p, sp, uf, g.classes[0]);
    BipartitionReport::Assignment a;
    a.what = what;
    a.side = in0 == Ternary::True ? 0 : in0 == Ternary::False ? 1 : -1;
    if (a.side < 0) ++rep.undetermined;
    rep.assignments.push_back(std::move(a));
  };
  for (const auto& e : space.ends.singles)
    assign(TangleHandle::end_tangle(e.ref), "end:" + e.ref.display());
  for (const auto& fam : space.ends.families) {
    for (const auto& s : fam.samples)
      assign(TangleHandle::end_tangle(s.ref), "end:" + s.ref.display());
    // The untouched members split chunk-wise; report the two chunks.
    const int fd = family_desc_index(sp, fam.family);
    if (fd >= 0) {
      for (int c = 0; c < 2; ++c) {
        auto it = g.classes[static_cast<std::size_t>(c)].members.find(fd);
        if (it == g.classes[static_cast<std::size_t>(c)].members.end()) continue;
        BipartitionReport::Assignment a;
        a.what = "ends:" + fam.family + "[" + it->second.to_string() + "]";
        a.side = c;
        rep.assignments.push_back(std::move(a));
      }
    }
  }
  for (const auto& b : space.blocks) assign(TangleHandle::block_tangle(b), b.ref);
  return rep;
}

namespace {

// Signature of a handle at one level: where its ultrafilter concentrates.
struct LevelSig {
  UltrafilterDescriptor uf;
};

// Build the side selection {component of tau1} / {chunk for tau1} whose
// complement contains tau2's concentration, if the signatures separate.
std::optional<SideSel> separating_side(const ComponentSpace& sp, const LevelSig& s1,
                                       const LevelSig& s2) {
  const auto& u1 = s1.uf;
  const auto& u2 = s2.uf;
  auto principal_side = [&](const ComponentRef& r) {
    SideSel side;
    if (std::holds_alternative<CompRef>(r)) {
      side.taken.insert(std::get<CompRef>(r).index);
    } else {
      const auto& m = std::get<MemberRef>(r);
      const int fd = family_desc_index(sp, m.family);
      side.members[fd] = EpSet::finite_set({m.index});
    }
    return side;
  };
  if (u1.kind == UltrafilterDescriptor::Principal &&
      u2.kind == UltrafilterDescriptor::Principal) {
    if (ref_str(u1.principal) == ref_str(u2.principal)) return std::nullopt;
    return principal_side(u1.principal);
  }
  if (u1.kind == UltrafilterDescriptor::Principal) {
    // A free ultrafilter never concentrates on one component.
    return principal_side(u1.principal);
  }
  if (u2.kind == UltrafilterDescriptor::Principal) {
    SideSel side;
    const int fd = family_desc_index(sp, u1.chunk.family);
    EpSet mine = u1.chunk.indices;
    if (std::holds_alternative<MemberRef>(u2.principal)) {
      const auto& m = std::get<MemberRef>(u2.principal);
      if (m.family == u1.chunk.family) mine = mine.minus(EpSet::finite_set({m.index}));
    }
    side.members[fd] = mine;
    return side;
  }
  // Two free descriptors.
  if (u1.chunk.family != u2.chunk.family) {
    SideSel side;
    side.members[family_desc_index(sp, u1.chunk.family)] = u1.chunk.indices;
    return side;
  }
  if (u1.chunk.indices.meets_infinitely(u2.chunk.indices)) return std::nullopt;
  SideSel side;
  side.members[family_desc_index(sp, u1.chunk.family)] =
      u1.chunk.indices.minus(u2.chunk.indices);
  return side;
}

}  // namespace

DistinguishResult distinguish(const Presentation& p, const TangleHandle& tau1,
                              const TangleHandle& tau2) {
  if (same_handle(tau1, tau2)) throw DomainError("distinguish: identical tangles");
  // Blocks over one family separate only along disjoint selectors.
  if (tau1.kind == TangleHandle::Block && tau2.kind == TangleHandle::Block &&
      tau1.block.family == tau2.block.family) {
    const EpSet s1 = tau1.block.selector.value_or(EpSet::all());
    const EpSet s2 = tau2.block.selector.value_or(EpSet::all());
    if (s1.meets_infinitely(s2)) {
      DistinguishResult out;
      out.verdict = DistinguishResult::NotSeparable;
      out.detail = "not separable at selector granularity (selectors share infinitely many members)";
      return out;
    }
  }
  // Deep enough to expose both handles' critical sets and first divergence.
  std::int64_t cap = 8;
  for (const auto* h : {&tau1, &tau2})
    if (h->kind == TangleHandle::Block)
      cap = std::max(cap, covering_prefix(p, h->block.critical) + 2);
  const Card total = p.vertex_count();
  std::int64_t hard = 96;
  if (total.is_finite) hard = total.value;
  cap = std::max(cap, hard);
  VertexList prefix;
  for (std::int64_t n = 0; n <= cap; ++n) {
    const ComponentSpace sp = p.eng().components_minus(prefix);
    LevelSig s1{induced_ultrafilter(p, tau1, prefix)};
    LevelSig s2{induced_ultrafilter(p, tau2, prefix)};
    auto side = separating_side(sp, s1, s2);
    if (side) {
      DistinguishResult out;
      out.verdict = DistinguishResult::Found;
      out.x = prefix;
      out.side1 = side_normalize(sp, *side);
      return out;
    }
    if (n < cap) {
      if (total.is_finite && n >= total.value) break;
      prefix.push_back(p.vertex_at(n));
    }
  }
  throw DomainError("distinguish: no separating prefix found (handles may coincide)");
}

}  // namespace tangles
