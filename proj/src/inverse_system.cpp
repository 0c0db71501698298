#include "tangles/inverse_system.hpp"

#include <algorithm>
#include <set>

#include "engine_util.hpp"
#include "tangles/errors.hpp"

namespace tangles {

namespace {

bool subset(const VertexList& a, const VertexList& b) {
  for (const auto& v : a)
    if (std::find(b.begin(), b.end(), v) == b.end()) return false;
  return true;
}

// A vertex that certainly lies inside the descriptor (used as a probe for
// the bonding map).
VertexId probe_of(const Engine& eng, const Descriptor& d) {
  if (!d.verts.empty()) return d.verts.front();
  if (!d.residues.empty()) return eng.residue_probe(d.residues.front());
  for (const auto& c : d.absorbed) {
    auto m = c.indices.min();
    if (m) return eng.family_member_probe(c.family, *m);
  }
  throw DomainError("descriptor has no probe vertex");
}

}  // namespace

BondingMap bonding(const Presentation& p, const VertexList& x, const VertexList& xp) {
  BondingMap bm;
  bm.x = p.canon_set(x);
  bm.xp = p.canon_set(xp);
  if (!subset(bm.x, bm.xp))
    throw DomainError("bonding: separators are not nested (X must lie inside X')");
  bm.src = p.eng().components_minus(bm.xp);
  bm.dst = p.eng().components_minus(bm.x);
  std::map<std::string, FamilyInfo> fams;
  for (const auto& f : p.eng().families()) fams[f.id] = f;
  for (const auto& d : bm.src.descs) {
    if (d.kind == DescKind::Family) {
      const FamilyInfo& fi = fams.at(d.family.family);
      if (subset(fi.hubs, bm.x)) {
        bm.images.emplace_back(BondingMap::FamilyImage{true, {}});
      } else {
        VertexId outside;
        for (const auto& h : fi.hubs)
          if (std::find(bm.x.begin(), bm.x.end(), h) == bm.x.end()) outside = h;
        bm.images.emplace_back(
            BondingMap::FamilyImage{false, locate(p, bm.dst, outside)});
      }
    } else {
      bm.images.emplace_back(locate(p, bm.dst, probe_of(p.eng(), d)));
    }
  }
  return bm;
}

ComponentRef map_ref(const BondingMap& bm, const ComponentRef& r) {
  if (std::holds_alternative<CompRef>(r)) {
    const int i = std::get<CompRef>(r).index;
    if (i < 0 || i >= static_cast<int>(bm.images.size()))
      throw DomainError("bonding: component reference out of range");
    const auto& img = bm.images[static_cast<std::size_t>(i)];
    if (!std::holds_alternative<ComponentRef>(img))
      throw DomainError("bonding: a family descriptor needs a member-level reference");
    return std::get<ComponentRef>(img);
  }
  const auto& m = std::get<MemberRef>(r);
  for (std::size_t i = 0; i < bm.src.descs.size(); ++i) {
    const Descriptor& d = bm.src.descs[i];
    if (d.kind != DescKind::Family || d.family.family != m.family) continue;
    if (!d.family.indices.contains(m.index))
      throw DomainError("bonding: member index not present at the finer level");
    const auto& img = std::get<BondingMap::FamilyImage>(bm.images[i]);
    if (img.memberwise) return MemberRef{m.family, m.index};
    return img.all_to_one;
  }
  throw DomainError("bonding: unknown family " + m.family + " at the finer level");
}

// ---- ends ----

std::optional<EndRef> parse_end_ref(const Presentation& p, const std::string& text) {
  const EndCatalog cat = p.eng().end_catalog();
  for (const auto& id : cat.singles)
    if (id == text) {
      EndRef r;
      r.single_id = id;
      return r;
    }
  for (std::size_t k = 0; k < cat.end_families.size(); ++k) {
    const std::string& prefix = cat.family_prefixes[k];
    if (text.rfind(prefix, 0) != 0) continue;
    bool ok = false;
    const std::int64_t idx = detail::parse_int(text.substr(prefix.size()), &ok);
    if (!ok || idx < 0) continue;
    EndRef r;
    r.family = cat.end_families[k];
    r.index = idx;
    return r;
  }
  return std::nullopt;
}

ComponentRef end_locate(const Presentation& p, const EndRef& e, const ComponentSpace& space) {
  // The probe sequence visits the deleted set at finitely many positions;
  // just beyond the last hit it is inside C(X, omega) for good.
  std::int64_t last_hit = -1;
  for (const auto& v : space.deleted) {
    auto pos = p.eng().end_ray_pos(e, v);
    if (pos) last_hit = std::max(last_hit, *pos);
  }
  return locate(p, space, p.eng().end_ray_at(e, last_hit + 1));
}

EndsResult ends(const Presentation& p, std::int64_t depth) {
  if (depth < 0) throw DomainError("ends: negative depth");
  EndsResult out;
  out.depth = depth;
  const Card total = p.vertex_count();
  const std::int64_t levels = total.is_finite ? std::min(depth, total.value) : depth;
  std::vector<ComponentSpace> spaces;
  std::vector<VertexList> prefixes;
  VertexList prefix;
  for (std::int64_t n = 0; n <= levels; ++n) {
    prefixes.push_back(prefix);
    spaces.push_back(p.eng().components_minus(prefix));
    if (n < levels) prefix.push_back(p.vertex_at(n));
  }
  const EndCatalog cat = p.eng().end_catalog();
  for (const auto& id : cat.singles) {
    EndEntry entry;
    entry.ref.single_id = id;
    for (const auto& sp : spaces) entry.thread.push_back(end_locate(p, entry.ref, sp));
    entry.dominators = p.eng().end_dominators(entry.ref);
    out.singles.push_back(std::move(entry));
  }
  for (std::size_t k = 0; k < cat.end_families.size(); ++k) {
    EndFamilyEntry fam;
    fam.family = cat.end_families[k];
    fam.prefix = cat.family_prefixes[k];
    // Members touched by the deepest prefix are materialized as sample threads.
    std::set<std::int64_t> touched;
    for (const auto& v : prefixes.back()) {
      auto fm = p.eng().family_of(v);
      if (fm && fm->first == fam.family) touched.insert(fm->second);
    }
    fam.untouched =
        EpSet::cofinite(std::vector<std::int64_t>(touched.begin(), touched.end()));
    for (std::int64_t idx : touched) {
      EndEntry entry;
      entry.ref.family = fam.family;
      entry.ref.index = idx;
      for (const auto& sp : spaces) entry.thread.push_back(end_locate(p, entry.ref, sp));
      entry.dominators = p.eng().end_dominators(entry.ref);
      fam.samples.push_back(std::move(entry));
    }
    out.families.push_back(std::move(fam));
  }
  out.continuum = cat.continuum;
  if (cat.continuum)
    out.total = CardExt::continuum();
  else if (!out.families.empty())
    out.total = CardExt::aleph0();
  else
    out.total = CardExt::finite(static_cast<std::int64_t>(out.singles.size()));
  return out;
}

bool dominates(const Presentation& p, const VertexId& v, const EndRef& e) {
  if (!p.valid_vertex(v)) throw DomainError("unknown vertex id: " + v);
  const VertexList doms = p.eng().end_dominators(e);
  return std::find(doms.begin(), doms.end(), v) != doms.end();
}

}  // namespace tangles
