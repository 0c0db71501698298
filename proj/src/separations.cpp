#include "tangles/separations.hpp"

#include <algorithm>
#include <functional>

#include "engine_util.hpp"
#include "tangles/errors.hpp"
#include "tangles/inverse_system.hpp"

namespace tangles {

namespace {

int family_desc_index(const ComponentSpace& space, const std::string& fam) {
  for (int i = 0; i < static_cast<int>(space.descs.size()); ++i)
    if (space.descs[static_cast<std::size_t>(i)].kind == DescKind::Family &&
        space.descs[static_cast<std::size_t>(i)].family.family == fam)
      return i;
  return -1;
}

VertexId probe_of(const Engine& eng, const Descriptor& d) {
  if (!d.verts.empty()) return d.verts.front();
  if (!d.residues.empty()) return eng.residue_probe(d.residues.front());
  for (const auto& c : d.absorbed) {
    auto m = c.indices.min();
    if (m) return eng.family_member_probe(c.family, *m);
  }
  throw DomainError("descriptor has no probe vertex");
}

bool vlist_contains(const VertexList& xs, const VertexId& v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

// Big/small membership of every vertex and component of a common evaluation
// level L (L contains the separator). Components beyond L sit in exactly one
// side; vertices of the separator sit in both.
struct SideEval {
  std::vector<char> vert_big, vert_small;  // per vertex of L
  std::vector<char> desc_big;              // per explicit descriptor of C_L
  std::map<int, EpSet> fam_big;            // per family descriptor of C_L
};

struct EvalContext {
  const Presentation& p;
  VertexList level;
  ComponentSpace lspace;
  std::map<std::string, ComponentSpace> space_cache;

  explicit EvalContext(const Presentation& pres, const std::vector<OrientedSeparation>& seps)
      : p(pres) {
    VertexList l;
    for (const auto& s : seps) l.insert(l.end(), s.x.begin(), s.x.end());
    level = p.canon_set(l);
    lspace = p.eng().components_minus(level);
  }

  const ComponentSpace& space_of(const VertexList& x) {
    std::string key;
    for (const auto& v : x) {
      key += v;
      key += '\x1f';
    }
    auto it = space_cache.find(key);
    if (it != space_cache.end()) return it->second;
    return space_cache.emplace(key, p.eng().components_minus(x)).first->second;
  }

  SideEval eval(const OrientedSeparation& s) {
    const ComponentSpace& sp = space_of(s.x);
    SideEval e;
    e.vert_big.resize(level.size());
    e.vert_small.resize(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      const VertexId& z = level[i];
      if (vlist_contains(s.x, z)) {
        e.vert_big[i] = e.vert_small[i] = 1;
      } else {
        const bool big = side_has(sp, s.big, locate(p, sp, z));
        e.vert_big[i] = big;
        e.vert_small[i] = !big;
      }
    }
    e.desc_big.resize(lspace.descs.size());
    std::map<std::string, FamilyInfo> fams;
    for (const auto& f : p.eng().families()) fams[f.id] = f;
    for (int i = 0; i < static_cast<int>(lspace.descs.size()); ++i) {
      const Descriptor& d = lspace.descs[static_cast<std::size_t>(i)];
      if (d.kind == DescKind::Family) {
        const FamilyInfo& fi = fams.at(d.family.family);
        bool hubs_inside = true;
        for (const auto& h : fi.hubs)
          if (!vlist_contains(s.x, h)) hubs_inside = false;
        if (hubs_inside) {
          const int fd = family_desc_index(sp, d.family.family);
          EpSet chosen = EpSet::none();
          if (fd >= 0) {
            auto it = s.big.members.find(fd);
            if (it != s.big.members.end()) chosen = it->second;
          }
          e.fam_big[i] = d.family.indices.intersect(chosen);
        } else {
          VertexId outside;
          for (const auto& h : fi.hubs)
            if (!vlist_contains(s.x, h)) outside = h;
          const bool big = side_has(sp, s.big, locate(p, sp, outside));
          e.fam_big[i] = big ? d.family.indices : EpSet::none();
        }
      } else {
        e.desc_big[static_cast<std::size_t>(i)] =
            side_has(sp, s.big, locate(p, sp, probe_of(p.eng(), d)));
      }
    }
    return e;
  }

  SideEval inverse_of(const SideEval& e) {
    SideEval r;
    r.vert_big = e.vert_small;
    r.vert_small = e.vert_big;
    r.desc_big.resize(e.desc_big.size());
    for (std::size_t i = 0; i < e.desc_big.size(); ++i) r.desc_big[i] = !e.desc_big[i];
    for (const auto& [i, big] : e.fam_big)
      r.fam_big[i] =
          lspace.descs[static_cast<std::size_t>(i)].family.indices.minus(big);
    return r;
  }

  // (A,B) <= (C,D): small(a) inside small(b) and big(a) containing big(b).
  bool le(const SideEval& a, const SideEval& b) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (a.vert_small[i] && !b.vert_small[i]) return false;
      if (b.vert_big[i] && !a.vert_big[i]) return false;
    }
    for (std::size_t i = 0; i < a.desc_big.size(); ++i)
      if (lspace.descs[i].kind != DescKind::Family && b.desc_big[i] && !a.desc_big[i])
        return false;
    for (const auto& [i, bbig] : b.fam_big)
      if (!bbig.subset_of(a.fam_big.at(i))) return false;
    return true;
  }
};

}  // namespace

SideSel side_none(const ComponentSpace&) { return SideSel{}; }

SideSel side_all(const ComponentSpace& space) {
  SideSel s;
  for (int i = 0; i < static_cast<int>(space.descs.size()); ++i) {
    const Descriptor& d = space.descs[static_cast<std::size_t>(i)];
    if (d.kind == DescKind::Family)
      s.members[i] = d.family.indices;
    else
      s.taken.insert(i);
  }
  return s;
}

SideSel side_normalize(const ComponentSpace& space, const SideSel& s) {
  SideSel out;
  for (int i : s.taken) {
    if (i < 0 || i >= static_cast<int>(space.descs.size()))
      throw DomainError("side selection: descriptor index out of range");
    if (space.descs[static_cast<std::size_t>(i)].kind == DescKind::Family)
      throw DomainError("side selection: family descriptor needs a member set");
    out.taken.insert(i);
  }
  for (const auto& [i, members] : s.members) {
    if (i < 0 || i >= static_cast<int>(space.descs.size()) ||
        space.descs[static_cast<std::size_t>(i)].kind != DescKind::Family)
      throw DomainError("side selection: member set on a non-family descriptor");
    EpSet clipped =
        members.intersect(space.descs[static_cast<std::size_t>(i)].family.indices);
    if (!clipped.is_empty()) out.members[i] = clipped;
  }
  return out;
}

SideSel side_complement(const ComponentSpace& space, const SideSel& s) {
  SideSel out;
  for (int i = 0; i < static_cast<int>(space.descs.size()); ++i) {
    const Descriptor& d = space.descs[static_cast<std::size_t>(i)];
    if (d.kind == DescKind::Family) {
      EpSet chosen = EpSet::none();
      auto it = s.members.find(i);
      if (it != s.members.end()) chosen = it->second;
      EpSet rest = d.family.indices.minus(chosen);
      if (!rest.is_empty()) out.members[i] = rest;
    } else if (!s.taken.count(i)) {
      out.taken.insert(i);
    }
  }
  return out;
}

bool side_has(const ComponentSpace& space, const SideSel& s, const ComponentRef& r) {
  if (std::holds_alternative<CompRef>(r)) return s.taken.count(std::get<CompRef>(r).index) > 0;
  const auto& m = std::get<MemberRef>(r);
  const int i = family_desc_index(space, m.family);
  if (i < 0) return false;
  auto it = s.members.find(i);
  return it != s.members.end() && it->second.contains(m.index);
}

OrientedSeparation sep_from_side(const Presentation& p, const VertexList& x,
                                 const SideSel& side) {
  OrientedSeparation s;
  s.x = p.canon_set(x);
  s.big = side_normalize(p.eng().components_minus(s.x), side);
  return s;
}

OrientedSeparation invert(const Presentation& p, const OrientedSeparation& s) {
  OrientedSeparation r;
  r.x = s.x;
  r.big = side_complement(p.eng().components_minus(s.x), s.big);
  return r;
}

bool underlying_equal(const Presentation& p, const OrientedSeparation& a,
                      const OrientedSeparation& b) {
  if (a.x != b.x) return false;
  if (a.big == b.big) return true;
  return b.big == side_complement(p.eng().components_minus(a.x), a.big);
}

bool le(const Presentation& p, const OrientedSeparation& a, const OrientedSeparation& b) {
  EvalContext ctx(p, {a, b});
  return ctx.le(ctx.eval(a), ctx.eval(b));
}

ConsistencyReport consistent(const Presentation& p,
                             const std::vector<OrientedSeparation>& seps) {
  EvalContext ctx(p, seps);
  std::vector<SideEval> evals, inv_evals;
  for (const auto& s : seps) {
    evals.push_back(ctx.eval(s));
    inv_evals.push_back(ctx.inverse_of(evals.back()));
  }
  ConsistencyReport rep;
  for (std::size_t i = 0; i < seps.size(); ++i)
    for (std::size_t j = 0; j < seps.size(); ++j) {
      if (i == j || underlying_equal(p, seps[i], seps[j])) continue;
      // seps[i] = (B,A), seps[j] = (C,D): violation when (A,B) < (C,D).
      if (ctx.le(inv_evals[i], evals[j])) {
        rep.consistent = false;
        rep.witness = std::make_pair(seps[i], seps[j]);
        return rep;
      }
    }
  return rep;
}

namespace {

SideDescription interior_of(EvalContext& ctx, const std::vector<SideEval>& evals) {
  SideDescription out;
  out.level = ctx.level;
  std::vector<char> vert_in(ctx.level.size(), 1);
  for (const auto& e : evals)
    for (std::size_t i = 0; i < vert_in.size(); ++i)
      vert_in[i] = vert_in[i] && e.vert_big[i];
  for (std::size_t i = 0; i < vert_in.size(); ++i)
    if (vert_in[i]) out.verts.push_back(ctx.level[i]);
  bool infinite = false;
  std::int64_t finite_total = static_cast<std::int64_t>(out.verts.size());
  std::map<std::string, FamilyInfo> fams;
  for (const auto& f : ctx.p.eng().families()) fams[f.id] = f;
  for (int i = 0; i < static_cast<int>(ctx.lspace.descs.size()); ++i) {
    const Descriptor& d = ctx.lspace.descs[static_cast<std::size_t>(i)];
    if (d.kind == DescKind::Family) {
      EpSet in = d.family.indices;
      for (const auto& e : evals) in = in.intersect(e.fam_big.at(i));
      if (in.is_empty()) continue;
      out.sel.members[i] = in;
      if (in.is_infinite() || fams.at(d.family.family).member_infinite)
        infinite = true;
      else
        finite_total += in.finite_size() * fams.at(d.family.family).member_size;
    } else {
      bool in = true;
      for (const auto& e : evals) in = in && e.desc_big[static_cast<std::size_t>(i)];
      if (!in) continue;
      out.sel.taken.insert(i);
      if (d.kind == DescKind::ExplicitInfinite)
        infinite = true;
      else
        finite_total += static_cast<std::int64_t>(d.verts.size());
    }
  }
  out.cardinality = infinite ? Card::omega() : Card::finite(finite_total);
  return out;
}

}  // namespace

StarReport star_and_interior(const Presentation& p,
                             const std::vector<OrientedSeparation>& sigma) {
  EvalContext ctx(p, sigma);
  std::vector<SideEval> evals, inv_evals;
  for (const auto& s : sigma) {
    evals.push_back(ctx.eval(s));
    inv_evals.push_back(ctx.inverse_of(evals.back()));
  }
  StarReport rep;
  rep.is_star = true;
  for (std::size_t i = 0; i < sigma.size() && rep.is_star; ++i)
    for (std::size_t j = 0; j < sigma.size() && rep.is_star; ++j) {
      if (i == j || sigma[i] == sigma[j]) continue;
      if (!ctx.le(evals[i], inv_evals[j])) rep.is_star = false;
    }
  if (rep.is_star) {
    rep.interior = interior_of(ctx, evals);
    rep.interior_finite = rep.interior.cardinality.is_finite;
  }
  return rep;
}

AxiomReport check_tangle_axioms(const Presentation& p,
                                const std::vector<OrientedSeparation>& sample,
                                int star_cap) {
  // Precondition: at most one orientation per separation.
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i + 1; j < sample.size(); ++j)
      if (underlying_equal(p, sample[i], sample[j]) && !(sample[i] == sample[j]))
        throw DomainError("tangle axiom check: both orientations of one separation present");

  AxiomReport rep;
  auto cons = consistent(p, sample);
  if (!cons.consistent) {
    rep.consistent = false;
    rep.consistency_witness = cons.witness;
  }

  EvalContext ctx(p, sample);
  std::vector<SideEval> evals, inv_evals;
  for (const auto& s : sample) {
    evals.push_back(ctx.eval(s));
    inv_evals.push_back(ctx.inverse_of(evals.back()));
  }
  const int n = static_cast<int>(sample.size());
  std::vector<std::vector<char>> towards(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      towards[i][j] = i == j || ctx.le(evals[static_cast<std::size_t>(i)],
                                       inv_evals[static_cast<std::size_t>(j)]);

  std::vector<int> pick;
  std::function<bool(int)> search = [&](int start) -> bool {
    // Every subset visited here is pairwise pointing-towards, i.e. a star.
    {
      std::vector<SideEval> chosen;
      for (int i : pick) chosen.push_back(evals[static_cast<std::size_t>(i)]);
      ++rep.stars_checked;
      auto interior = interior_of(ctx, chosen);
      if (interior.cardinality.is_finite) {
        std::vector<OrientedSeparation> star;
        for (int i : pick) star.push_back(sample[static_cast<std::size_t>(i)]);
        rep.violating_star = star;
        rep.violating_interior = interior.cardinality;
        return true;
      }
    }
    if (static_cast<int>(pick.size()) >= star_cap) return false;
    for (int i = start; i < n; ++i) {
      bool ok = true;
      for (int j : pick)
        ok = ok && towards[i][j] && towards[j][i] && !(sample[static_cast<std::size_t>(i)] ==
                                                       sample[static_cast<std::size_t>(j)]);
      if (!ok) continue;
      pick.push_back(i);
      if (search(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  search(0);
  if (rep.violating_star) rep.consistent = false;
  return rep;
}

}  // namespace tangles
