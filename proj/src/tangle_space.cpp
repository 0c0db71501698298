#include "tangles/tangle_space.hpp"

#include <algorithm>
#include <functional>

#include "engine_util.hpp"
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

std::string block_ref(const Presentation& p, const VertexList& critical,
                      const std::string& family, const std::optional<EpSet>& sel) {
  (void)p;
  std::string r = "block:" + family + "@{";
  for (std::size_t i = 0; i < critical.size(); ++i) {
    if (i) r += ",";
    r += critical[i];
  }
  r += "}";
  if (sel) r += "[" + sel->to_string() + "]";
  return r;
}

}  // namespace

bool same_handle(const TangleHandle& a, const TangleHandle& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == TangleHandle::End) return a.end == b.end;
  return a.block.critical == b.block.critical && a.block.family == b.block.family &&
         a.block.selector == b.block.selector;
}

TangleSpaceResult tangles(const Presentation& p, std::int64_t depth,
                          std::int64_t critical_bound) {
  TangleSpaceResult out;
  out.depth = depth;
  out.critical_bound = critical_bound;
  out.ends = ends(p, depth);
  CriticalResult crit = critical_sets(p, critical_bound);
  out.complete = crit.complete;
  for (const auto& cs : crit.sets)
    for (const auto& fam : cs.witnesses) {
      BlockEntry b;
      b.critical = cs.x;
      b.family = fam;
      b.ref = block_ref(p, cs.x, fam, std::nullopt);
      out.blocks.push_back(std::move(b));
    }
  return out;
}

std::optional<TangleHandle> resolve_tangle_ref(const Presentation& p,
                                               const TangleSpaceResult& space,
                                               const std::string& text) {
  if (text.rfind("end:", 0) == 0) {
    auto e = parse_end_ref(p, text.substr(4));
    if (!e) return std::nullopt;
    return TangleHandle::end_tangle(*e);
  }
  if (text.rfind("block:", 0) != 0) return std::nullopt;
  std::string body = text.substr(6);
  // Optional selector after the last ':'.
  std::optional<EpSet> selector;
  const std::size_t colon = body.find(':');
  if (colon != std::string::npos) {
    auto sel = EpSet::parse(body.substr(colon + 1));
    if (!sel || !sel->is_infinite()) return std::nullopt;
    selector = sel;
    body = body.substr(0, colon);
  }
  const BlockEntry* base = nullptr;
  bool ok = false;
  const std::int64_t idx = detail::parse_int(body, &ok);
  if (ok) {
    if (idx < 0 || idx >= static_cast<std::int64_t>(space.blocks.size()))
      return std::nullopt;
    base = &space.blocks[static_cast<std::size_t>(idx)];
  } else if (auto sel = EpSet::parse(body); sel && sel->is_infinite() &&
             space.blocks.size() == 1 && !selector) {
    // "block:evens" style sugar when the block is unambiguous.
    selector = sel;
    base = &space.blocks[0];
  } else {
    for (const auto& b : space.blocks)
      if (b.ref == "block:" + body || b.family == body) base = &b;
    if (!base) return std::nullopt;
  }
  BlockEntry b = *base;
  if (selector) {
    b.selector = selector;
    b.ref = block_ref(p, b.critical, b.family, selector);
  }
  return TangleHandle::block_tangle(b);
}

UltrafilterDescriptor induced_ultrafilter(const Presentation& p, const TangleHandle& tau,
                                          const VertexList& x) {
  const VertexList cx = p.canon_set(x);
  const ComponentSpace sp = p.eng().components_minus(cx);
  UltrafilterDescriptor out;
  if (tau.kind == TangleHandle::End) {
    out.kind = UltrafilterDescriptor::Principal;
    out.principal = end_locate(p, tau.end, sp);
    return out;
  }
  // Pushforward of the block's symbolic free ultrafilter: the family's
  // members at X either form a family descriptor again (member-wise, the
  // ultrafilter stays free on it) or they merge into the component of a
  // surviving hub (principal, whatever the free ultrafilter was).
  const BlockEntry& b = tau.block;
  VertexList hubs;
  for (const auto& f : p.eng().families())
    if (f.id == b.family) hubs = f.hubs;
  if (hubs.empty()) throw DomainError("unknown family in block: " + b.family);
  VertexId outside;
  bool hubs_inside = true;
  for (const auto& h : hubs)
    if (std::find(cx.begin(), cx.end(), h) == cx.end()) {
      hubs_inside = false;
      outside = h;
    }
  if (!hubs_inside) {
    out.kind = UltrafilterDescriptor::Principal;
    out.principal = locate(p, sp, outside);
    return out;
  }
  const int fd = family_desc_index(sp, b.family);
  if (fd < 0) throw DomainError("family " + b.family + " missing from component space");
  EpSet live = sp.descs[static_cast<std::size_t>(fd)].family.indices;
  if (b.selector) live = live.intersect(*b.selector);
  out.kind = UltrafilterDescriptor::FreeOnFamily;
  out.chunk = {b.family, live};
  return out;
}

Ternary side_in_ultrafilter(const Presentation& p, const ComponentSpace& space,
                            const UltrafilterDescriptor& uf, const SideSel& side) {
  (void)p;
  switch (uf.kind) {
    case UltrafilterDescriptor::Principal:
      return side_has(space, side, uf.principal) ? Ternary::True : Ternary::False;
    case UltrafilterDescriptor::FreeOnFamily: {
      const int fd = family_desc_index(space, uf.chunk.family);
      EpSet chosen = EpSet::none();
      if (fd >= 0) {
        auto it = side.members.find(fd);
        if (it != side.members.end()) chosen = it->second;
      }
      // A free ultrafilter concentrated on S contains the side iff S lies in
      // it up to finitely many members; it avoids the side iff the overlap
      // is finite. Anything else depends on the unpicked ultrafilter.
      if (uf.chunk.indices.almost_subset_of(chosen)) return Ternary::True;
      if (!uf.chunk.indices.meets_infinitely(chosen)) return Ternary::False;
      return Ternary::Undetermined;
    }
    default:
      return Ternary::Undetermined;
  }
}

OrientResult orient(const Presentation& p, const TangleHandle& tau, const VertexList& x,
                    const SideSel& side) {
  const VertexList cx = p.canon_set(x);
  const ComponentSpace sp = p.eng().components_minus(cx);
  const SideSel big = side_normalize(sp, side);
  const UltrafilterDescriptor uf = induced_ultrafilter(p, tau, cx);
  OrientResult out;
  const Ternary in = side_in_ultrafilter(p, sp, uf, big);
  if (in == Ternary::Undetermined) return out;
  out.determined = true;
  out.sep.x = cx;
  out.sep.big = in == Ternary::True ? big : side_complement(sp, big);
  return out;
}

AuditReport consistency_audit(const Presentation& p, const TangleHandle& tau,
                              std::int64_t depth, int star_cap) {
  if (depth < 0) throw DomainError("consistency_audit: negative depth");
  AuditReport rep;
  const Card total = p.vertex_count();
  const std::int64_t n = total.is_finite ? std::min(depth, total.value) : depth;
  VertexList prefix;
  for (std::int64_t r = 0; r < n; ++r) prefix.push_back(p.vertex_at(r));
  std::vector<OrientedSeparation> sample;
  std::set<std::string> seen;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    VertexList x;
    for (std::int64_t bit = 0; bit < n; ++bit)
      if (mask & (1ull << bit)) x.push_back(prefix[static_cast<std::size_t>(bit)]);
    const ComponentSpace sp = p.eng().components_minus(x);
    // Descriptor-level bipartitions of C_X, one orientation chosen by tau;
    // complementary selections collapse to the same separation.
    const int m = static_cast<int>(sp.descs.size());
    if (m > 12) throw UnsupportedError("audit: component space too wide");
    for (std::uint64_t smask = 0; smask < (1ull << m); ++smask) {
      SideSel side;
      for (int bit = 0; bit < m; ++bit) {
        if (!(smask & (1ull << bit))) continue;
        const Descriptor& d = sp.descs[static_cast<std::size_t>(bit)];
        if (d.kind == DescKind::Family)
          side.members[bit] = d.family.indices;
        else
          side.taken.insert(bit);
      }
      auto res = orient(p, tau, x, side);
      if (!res.determined) {
        ++rep.undetermined;
        continue;
      }
      std::string key;
      for (const auto& v : res.sep.x) key += v + "\x1f";
      key += "|";
      for (int t : res.sep.big.taken) key += std::to_string(t) + ",";
      for (const auto& [i, s] : res.sep.big.members)
        key += std::to_string(i) + "=" + s.to_string() + ";";
      if (seen.insert(key).second) {
        sample.push_back(res.sep);
        ++rep.oriented;
      }
    }
  }
  rep.axioms = check_tangle_axioms(p, sample, star_cap);
  rep.pass = rep.axioms.consistent;
  return rep;
}

}  // namespace tangles
