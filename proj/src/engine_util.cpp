#include "engine_util.hpp"

#include <limits>

namespace tangles::detail {

bool ref_in_desc(const Engine& eng, const Descriptor& d, const VertexId& v) {
  if (std::find(d.verts.begin(), d.verts.end(), v) != d.verts.end()) return true;
  for (const auto& tag : d.residues)
    if (eng.residue_contains(tag, v)) return true;
  auto in_chunk = [&](const FamilyChunk& c) {
    auto fm = eng.family_of(v);
    return fm && fm->first == c.family && c.indices.contains(fm->second);
  };
  for (const auto& c : d.absorbed)
    if (in_chunk(c)) return true;
  if (d.kind == DescKind::Family) return in_chunk(d.family);
  return false;
}

ComponentRef locate_in(const Engine& eng, const ComponentSpace& space,
                       const VertexId& v) {
  for (const auto& x : space.deleted)
    if (x == v) throw DomainError("locate: vertex lies in the deleted set");
  for (std::size_t i = 0; i < space.descs.size(); ++i) {
    const Descriptor& d = space.descs[i];
    if (d.kind == DescKind::Family) {
      auto fm = eng.family_of(v);
      if (fm && fm->first == d.family.family && d.family.indices.contains(fm->second))
        return MemberRef{fm->first, fm->second};
      continue;
    }
    if (ref_in_desc(eng, d, v)) return CompRef{static_cast<int>(i)};
  }
  throw DomainError("locate: vertex not covered by the component space (unknown id?)");
}

namespace {

std::int64_t rank_or_max(const Engine& eng, const VertexId& v) {
  auto r = eng.rank_of(v);
  return r ? *r : std::numeric_limits<std::int64_t>::max();
}

std::int64_t desc_key(const Engine& eng, const Descriptor& d) {
  std::int64_t k = std::numeric_limits<std::int64_t>::max();
  for (const auto& v : d.verts) k = std::min(k, rank_or_max(eng, v));
  for (const auto& t : d.residues) k = std::min(k, rank_or_max(eng, eng.residue_probe(t)));
  auto chunk_key = [&](const FamilyChunk& c) {
    auto m = c.indices.min();
    if (!m) return std::numeric_limits<std::int64_t>::max();
    return rank_or_max(eng, eng.family_member_probe(c.family, *m));
  };
  for (const auto& c : d.absorbed) k = std::min(k, chunk_key(c));
  if (d.kind == DescKind::Family) k = std::min(k, chunk_key(d.family));
  return k;
}

}  // namespace

void finalize(const Engine& eng, ComponentSpace& space) {
  auto by_rank = [&eng](const VertexId& a, const VertexId& b) {
    return rank_or_max(eng, a) < rank_or_max(eng, b);
  };
  std::sort(space.deleted.begin(), space.deleted.end(), by_rank);
  const VertexList inf_deg = eng.infinite_degree_vertices();
  for (auto& d : space.descs) {
    std::sort(d.verts.begin(), d.verts.end(), by_rank);
    std::sort(d.nbhd.begin(), d.nbhd.end(), by_rank);
    d.nbhd.erase(std::unique(d.nbhd.begin(), d.nbhd.end()), d.nbhd.end());
    std::sort(d.absorbed.begin(), d.absorbed.end(),
              [](const FamilyChunk& a, const FamilyChunk& b) { return a.family < b.family; });
    d.degree_bounded = true;
    for (const auto& v : d.verts)
      if (std::find(inf_deg.begin(), inf_deg.end(), v) != inf_deg.end())
        d.degree_bounded = false;
  }
  std::stable_sort(space.descs.begin(), space.descs.end(),
                   [&eng](const Descriptor& a, const Descriptor& b) {
                     return desc_key(eng, a) < desc_key(eng, b);
                   });
}

int extract_member(const Engine& eng, ComponentSpace& space,
                   const std::string& fam, std::int64_t idx) {
  for (auto& d : space.descs) {
    if (d.kind != DescKind::Family || d.family.family != fam ||
        !d.family.indices.contains(idx))
      continue;
    d.family.indices = d.family.indices.minus(EpSet::finite_set({idx}));
    Descriptor m;
    m.nbhd = d.nbhd;
    bool infinite_member = false;
    for (const auto& f : eng.families())
      if (f.id == fam) infinite_member = f.member_infinite;
    if (infinite_member) {
      m.kind = DescKind::ExplicitInfinite;
      m.absorbed.push_back({fam, EpSet::finite_set({idx})});
    } else {
      m.kind = DescKind::ExplicitFinite;
      m.verts = eng.family_member_vertices(fam, idx);
    }
    space.descs.push_back(std::move(m));
    return static_cast<int>(space.descs.size()) - 1;
  }
  throw DomainError("extract_member: no family descriptor for " + fam);
}

SegmentSplit split_segments(const std::vector<std::int64_t>& deleted, std::int64_t lo) {
  SegmentSplit out;
  if (deleted.empty()) {
    out.tail_start = lo;
    return out;
  }
  std::int64_t run = lo;
  for (std::int64_t d : deleted) {
    if (d > run) out.segments.emplace_back(run, d - 1);
    run = d + 1;
  }
  out.tail_start = run;
  return out;
}

Card Interleave::total() const {
  std::int64_t sum = 0;
  for (const auto& s : sizes_) {
    if (!s.is_finite) return Card::omega();
    sum += s.value;
  }
  return Card::finite(sum);
}

std::int64_t Interleave::count_before_round(std::int64_t r) const {
  std::int64_t n = 0;
  for (const auto& s : sizes_) n += s.is_finite ? std::min(s.value, r) : r;
  return n;
}

std::pair<int, std::int64_t> Interleave::at(std::int64_t rank) const {
  if (rank < 0) throw DomainError("negative rank");
  Card tot = total();
  if (tot.is_finite && rank >= tot.value) throw DomainError("rank out of range");
  // Largest r with count_before_round(r) <= rank.
  std::int64_t lo = 0, hi = rank + 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (count_before_round(mid) <= rank)
      lo = mid;
    else
      hi = mid - 1;
  }
  std::int64_t off = rank - count_before_round(lo);
  for (int b = 0; b < static_cast<int>(sizes_.size()); ++b) {
    const Card& s = sizes_[b];
    if (s.is_finite && s.value <= lo) continue;  // part exhausted this round
    if (off == 0) return {b, lo};
    --off;
  }
  throw DomainError("rank out of range");
}

std::int64_t Interleave::global_rank(int part, std::int64_t inner) const {
  std::int64_t g = count_before_round(inner);
  for (int b = 0; b < part; ++b) {
    const Card& s = sizes_[b];
    if (!s.is_finite || s.value > inner) ++g;
  }
  return g;
}

std::int64_t parse_int(const std::string& s, bool* ok) {
  *ok = false;
  if (s.empty()) return 0;
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) return 0;
    *ok = true;
    return v;
  } catch (...) {
    return 0;
  }
}

}  // namespace tangles::detail
