#include "tangles/gamma.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

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

SideSel intersect_sel(const SideSel& a, const SideSel& b) {
  SideSel out;
  for (int i : a.taken)
    if (b.taken.count(i)) out.taken.insert(i);
  for (const auto& [i, s] : a.members) {
    auto it = b.members.find(i);
    if (it == b.members.end()) continue;
    EpSet m = s.intersect(it->second);
    if (!m.is_empty()) out.members[i] = m;
  }
  return out;
}

bool sel_empty(const SideSel& s) { return s.taken.empty() && s.members.empty(); }

bool sel_subset(const SideSel& a, const SideSel& b) {
  for (int i : a.taken)
    if (!b.taken.count(i)) return false;
  for (const auto& [i, s] : a.members) {
    auto it = b.members.find(i);
    if (it == b.members.end() || !s.subset_of(it->second)) return false;
  }
  return true;
}

std::string sel_key(const SideSel& s) {
  std::ostringstream os;
  for (int i : s.taken) os << i << ',';
  os << '|';
  for (const auto& [i, m] : s.members) os << i << '=' << m.to_string() << ';';
  return os.str();
}

std::string gamma_key(const Presentation& p, const GammaElement& g) {
  std::ostringstream os;
  os << g.x.size() << '#';
  for (const auto& v : g.x) os << p.rank_of(v) << ',';
  os << '!';
  std::vector<std::string> keys;
  for (const auto& c : g.classes) keys.push_back(sel_key(c));
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) os << k << '$';
  return os.str();
}

// Representative component of a class (for bonding the class downward).
ComponentRef class_rep(const ComponentSpace& space, const SideSel& cls) {
  if (!cls.taken.empty()) return CompRef{*cls.taken.begin()};
  for (const auto& [i, m] : cls.members) {
    auto first = m.min();
    if (first)
      return MemberRef{space.descs[static_cast<std::size_t>(i)].family.family, *first};
  }
  throw DomainError("empty partition class");
}

int class_containing(const ComponentSpace& space, const std::vector<SideSel>& classes,
                     const ComponentRef& r) {
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    if (side_has(space, classes[static_cast<std::size_t>(c)], r)) return c;
  throw DomainError("component not covered by the partition");
}

}  // namespace

GammaElement make_gamma(const Presentation& p, const VertexList& x,
                        const std::vector<SideSel>& classes) {
  GammaElement g;
  g.x = p.canon_set(x);
  const ComponentSpace sp = p.eng().components_minus(g.x);
  SideSel seen;  // union so far, for disjointness + cover
  for (const auto& raw : classes) {
    SideSel c = side_normalize(sp, raw);
    if (sel_empty(c)) throw DomainError("gamma: empty partition class");
    if (!sel_empty(intersect_sel(seen, c)))
      throw DomainError("gamma: partition classes overlap");
    for (int i : c.taken) seen.taken.insert(i);
    for (const auto& [i, m] : c.members) {
      auto it = seen.members.find(i);
      seen.members[i] = it == seen.members.end() ? m : it->second.unite(m);
    }
    g.classes.push_back(std::move(c));
  }
  const SideSel all = side_all(sp);
  if (!(sel_subset(all, seen) && sel_subset(seen, all)))
    throw DomainError("gamma: partition classes do not cover the component space");
  return g;
}

GammaElement trivial_gamma(const Presentation& p, const VertexList& x) {
  GammaElement g;
  g.x = p.canon_set(x);
  const ComponentSpace sp = p.eng().components_minus(g.x);
  const SideSel all = side_all(sp);
  if (!sel_empty(all)) g.classes.push_back(all);
  return g;
}

Card class_cardinality(const Presentation& p, const ComponentSpace& space,
                       const SideSel& cls) {
  std::map<std::string, FamilyInfo> fams;
  for (const auto& f : p.eng().families()) fams[f.id] = f;
  std::int64_t total = 0;
  for (int i : cls.taken) {
    const Descriptor& d = space.descs[static_cast<std::size_t>(i)];
    if (d.kind == DescKind::ExplicitInfinite) return Card::omega();
    total += static_cast<std::int64_t>(d.verts.size());
  }
  for (const auto& [i, m] : cls.members) {
    const Descriptor& d = space.descs[static_cast<std::size_t>(i)];
    const FamilyInfo& fi = fams.at(d.family.family);
    if (m.is_infinite() || (fi.member_infinite && !m.is_empty())) return Card::omega();
    total += m.finite_size() * fi.member_size;
  }
  return Card::finite(total);
}

bool in_gamma_prime(const Presentation& p, const GammaElement& g) {
  const ComponentSpace sp = p.eng().components_minus(g.x);
  for (const auto& c : g.classes)
    if (class_cardinality(p, sp, c).is_finite) return false;
  return true;
}

std::vector<SideSel> restrict_partition(const Presentation& p, const GammaElement& g,
                                        const VertexList& xp) {
  const VertexList z = p.canon_set(xp);
  const BondingMap bm = bonding(p, g.x, z);
  std::vector<SideSel> out(g.classes.size());
  for (int e = 0; e < static_cast<int>(bm.src.descs.size()); ++e) {
    const Descriptor& d = bm.src.descs[static_cast<std::size_t>(e)];
    if (d.kind == DescKind::Family) {
      const auto& img = std::get<BondingMap::FamilyImage>(bm.images[static_cast<std::size_t>(e)]);
      if (img.memberwise) {
        const int fd = family_desc_index(bm.dst, d.family.family);
        for (std::size_t c = 0; c < g.classes.size(); ++c) {
          auto it = g.classes[c].members.find(fd);
          if (it == g.classes[c].members.end()) continue;
          EpSet part = d.family.indices.intersect(it->second);
          if (!part.is_empty()) out[c].members[e] = part;
        }
      } else {
        const int c = class_containing(bm.dst, g.classes, img.all_to_one);
        out[static_cast<std::size_t>(c)].members[e] = d.family.indices;
      }
    } else {
      const auto& img = std::get<ComponentRef>(bm.images[static_cast<std::size_t>(e)]);
      const int c = class_containing(bm.dst, g.classes, img);
      out[static_cast<std::size_t>(c)].taken.insert(e);
    }
  }
  return out;
}

bool gamma_le(const Presentation& p, const GammaElement& a, const GammaElement& b) {
  for (const auto& v : a.x)
    if (std::find(b.x.begin(), b.x.end(), v) == b.x.end()) return false;
  const auto restricted = restrict_partition(p, a, b.x);
  for (const auto& cb : b.classes) {
    bool inside_one = false;
    for (const auto& ra : restricted)
      if (sel_subset(cb, ra)) inside_one = true;
    if (!inside_one) return false;
  }
  return true;
}

bool gamma_equal(const Presentation& p, const GammaElement& a, const GammaElement& b) {
  return gamma_key(p, a) == gamma_key(p, b);
}

GammaElement common_upper_bound(const Presentation& p, const GammaElement& a,
                                const GammaElement& b) {
  VertexList z = a.x;
  z.insert(z.end(), b.x.begin(), b.x.end());
  z = p.canon_set(z);
  const auto ra = restrict_partition(p, a, z);
  const auto rb = restrict_partition(p, b, z);
  std::vector<SideSel> classes;
  for (const auto& ca : ra)
    for (const auto& cb : rb) {
      SideSel meet = intersect_sel(ca, cb);
      if (!sel_empty(meet)) classes.push_back(std::move(meet));
    }
  return make_gamma(p, z, classes);
}

GammaPrimeResult to_gamma_prime(const Presentation& p, const GammaElement& g) {
  const ComponentSpace sp = p.eng().components_minus(g.x);
  VertexList xp = g.x;
  for (const auto& c : g.classes) {
    if (!class_cardinality(p, sp, c).is_finite) continue;
    for (int i : c.taken) {
      const Descriptor& d = sp.descs[static_cast<std::size_t>(i)];
      xp.insert(xp.end(), d.verts.begin(), d.verts.end());
    }
    for (const auto& [i, m] : c.members) {
      const Descriptor& d = sp.descs[static_cast<std::size_t>(i)];
      for (std::int64_t idx : m.first(static_cast<std::size_t>(m.finite_size()))) {
        const auto mv = p.eng().family_member_vertices(d.family.family, idx);
        xp.insert(xp.end(), mv.begin(), mv.end());
      }
    }
  }
  xp = p.canon_set(xp);
  GammaPrimeResult out;
  auto restricted = restrict_partition(p, g, xp);
  std::vector<SideSel> classes;
  for (auto& c : restricted)
    if (!sel_empty(c)) classes.push_back(std::move(c));
  out.gamma = make_gamma(p, xp, classes);
  out.degenerate = out.gamma.classes.empty();
  return out;
}

std::string ProjectionWitness::display() const {
  switch (kind) {
    case SingleEnd:
      return "end:" + end.display();
    case FamilyEnds:
      return "ends:" + family + "[" + indices.to_string() + "]";
    case BlockProj:
      return restriction ? block.ref + "[" + restriction->to_string() + "]" : block.ref;
    default:
      return note;
  }
}

std::vector<std::vector<ProjectionWitness>> class_witnesses(const Presentation& p,
                                                            const GammaElement& g) {
  const ComponentSpace sp = p.eng().components_minus(g.x);
  std::vector<std::vector<ProjectionWitness>> out(g.classes.size());
  auto cls_of = [&](const ComponentRef& r) { return class_containing(sp, g.classes, r); };

  const EndCatalog cat = p.eng().end_catalog();
  for (const auto& id : cat.singles) {
    EndRef e;
    e.single_id = id;
    ProjectionWitness w;
    w.kind = ProjectionWitness::SingleEnd;
    w.end = e;
    out[static_cast<std::size_t>(cls_of(end_locate(p, e, sp)))].push_back(w);
  }
  for (const auto& fam : cat.end_families) {
    // Members listed in a family descriptor or an absorbed chunk carry their
    // ends with them; the finitely many remaining members are probed one by
    // one.
    EpSet covered = EpSet::none();
    const int fd = family_desc_index(sp, fam);
    if (fd >= 0) {
      const EpSet live = sp.descs[static_cast<std::size_t>(fd)].family.indices;
      covered = covered.unite(live);
      for (std::size_t c = 0; c < g.classes.size(); ++c) {
        auto it = g.classes[c].members.find(fd);
        if (it == g.classes[c].members.end()) continue;
        EpSet part = live.intersect(it->second);
        if (part.is_empty()) continue;
        ProjectionWitness w;
        w.kind = ProjectionWitness::FamilyEnds;
        w.family = fam;
        w.indices = part;
        out[c].push_back(std::move(w));
      }
    }
    for (int i = 0; i < static_cast<int>(sp.descs.size()); ++i) {
      for (const auto& chunk : sp.descs[static_cast<std::size_t>(i)].absorbed) {
        if (chunk.family != fam) continue;
        covered = covered.unite(chunk.indices);
        ProjectionWitness w;
        w.kind = ProjectionWitness::FamilyEnds;
        w.family = fam;
        w.indices = chunk.indices;
        out[static_cast<std::size_t>(cls_of(CompRef{i}))].push_back(std::move(w));
      }
    }
    const EpSet touched = covered.complement();
    if (touched.is_infinite())
      throw DomainError("end family " + fam + " not accounted for in the space");
    for (std::int64_t idx : touched.first(static_cast<std::size_t>(touched.finite_size()))) {
      EndRef e;
      e.family = fam;
      e.index = idx;
      ProjectionWitness w;
      w.kind = ProjectionWitness::SingleEnd;
      w.end = e;
      out[static_cast<std::size_t>(cls_of(end_locate(p, e, sp)))].push_back(std::move(w));
    }
  }
  if (cat.continuum) {
    for (int i = 0; i < static_cast<int>(sp.descs.size()); ++i) {
      const Descriptor& d = sp.descs[static_cast<std::size_t>(i)];
      bool bears = false;
      for (const auto& t : d.residues)
        if (p.eng().residue_bears_ends(t)) bears = true;
      if (!bears) continue;
      ProjectionWitness w;
      w.kind = ProjectionWitness::ContinuumEnds;
      w.note = "continuum-ends@c" + std::to_string(i);
      out[static_cast<std::size_t>(cls_of(CompRef{i}))].push_back(std::move(w));
    }
  }
  // Blocks: ends(p,.) is irrelevant here; the block list is determined by
  // the critical sets, and the declared candidates make bound 0 complete.
  CriticalResult crit = critical_sets(p, 0);
  for (const auto& cs : crit.sets)
    for (const auto& fam : cs.witnesses) {
      BlockEntry b;
      b.critical = cs.x;
      b.family = fam;
      b.ref = "block:" + fam;
      TangleHandle tau = TangleHandle::block_tangle(b);
      const UltrafilterDescriptor uf = induced_ultrafilter(p, tau, g.x);
      if (uf.kind == UltrafilterDescriptor::Principal) {
        ProjectionWitness w;
        w.kind = ProjectionWitness::BlockProj;
        w.block = b;
        out[static_cast<std::size_t>(cls_of(uf.principal))].push_back(std::move(w));
      } else if (uf.kind == UltrafilterDescriptor::FreeOnFamily) {
        const int fd = family_desc_index(sp, uf.chunk.family);
        for (std::size_t c = 0; c < g.classes.size(); ++c) {
          auto it = g.classes[c].members.find(fd);
          if (it == g.classes[c].members.end()) continue;
          EpSet part = uf.chunk.indices.intersect(it->second);
          if (!part.is_infinite()) continue;  // free ultrafilters ignore finite overlap
          ProjectionWitness w;
          w.kind = ProjectionWitness::BlockProj;
          w.block = b;
          w.restriction = part;
          out[c].push_back(std::move(w));
        }
      }
    }
  return out;
}

SurjectivityReport projection_surjectivity_check(const Presentation& p,
                                                 const GammaElement& g) {
  if (!in_gamma_prime(p, g))
    throw DomainError("surjectivity check requires an element of Gamma'");
  SurjectivityReport rep;
  for (const auto& ws : class_witnesses(p, g)) {
    rep.witness_counts.push_back(static_cast<std::int64_t>(ws.size()));
    if (ws.empty()) rep.pass = false;
  }
  return rep;
}

int gamma_bond_class(const Presentation& p, const GammaElement& coarser,
                     const GammaElement& finer, int finer_class) {
  const ComponentSpace fine_sp = p.eng().components_minus(finer.x);
  const ComponentSpace coarse_sp = p.eng().components_minus(coarser.x);
  const BondingMap bm = bonding(p, coarser.x, finer.x);
  const ComponentRef rep = class_rep(fine_sp, finer.classes[static_cast<std::size_t>(finer_class)]);
  return class_containing(coarse_sp, coarser.classes, map_ref(bm, rep));
}

LimitResult finite_inverse_limit(const Presentation& p,
                                 const std::vector<GammaElement>& delta) {
  LimitResult out;
  if (delta.empty()) {
    out.threads.push_back({});  // the empty product has exactly one thread
    return out;
  }
  out.delta = delta;
  std::sort(out.delta.begin(), out.delta.end(),
            [&p](const GammaElement& a, const GammaElement& b) {
              return gamma_key(p, a) < gamma_key(p, b);
            });
  out.delta.erase(std::unique(out.delta.begin(), out.delta.end(),
                              [&p](const GammaElement& a, const GammaElement& b) {
                                return gamma_key(p, a) == gamma_key(p, b);
                              }),
                  out.delta.end());
  // A finite set closed under common upper bounds has a maximum.
  int top = -1;
  for (int i = 0; i < static_cast<int>(out.delta.size()); ++i) {
    bool dominates_all = true;
    for (const auto& g : out.delta)
      dominates_all = dominates_all && gamma_le(p, g, out.delta[static_cast<std::size_t>(i)]);
    if (dominates_all) top = i;
  }
  if (top < 0)
    throw DomainError("finite_inverse_limit: set is not directed (missing upper bounds)");
  const GammaElement& g_top = out.delta[static_cast<std::size_t>(top)];
  const auto witnesses = class_witnesses(p, g_top);
  for (int c = 0; c < static_cast<int>(g_top.classes.size()); ++c) {
    LimitThread t;
    for (int i = 0; i < static_cast<int>(out.delta.size()); ++i)
      t.choice.push_back(i == top ? c
                                  : gamma_bond_class(p, out.delta[static_cast<std::size_t>(i)],
                                                     g_top, c));
    t.witnesses = witnesses[static_cast<std::size_t>(c)];
    out.threads.push_back(std::move(t));
  }
  return out;
}

}  // namespace tangles
