#include "tangles/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "engine_util.hpp"
#include "engines.hpp"
#include "tangles/errors.hpp"

namespace tangles {

using detail::make_attach_leaves_engine;
using detail::make_binary_tree_engine;
using detail::make_comb_engine;
using detail::make_dominated_ray_engine;
using detail::make_double_ray_engine;
using detail::make_finite_engine;
using detail::make_grid_engine;
using detail::make_identify_engine;
using detail::make_ray_engine;
using detail::make_spider_engine;
using detail::make_star_engine;
using detail::make_union_engine;

namespace {
std::string card_term(Card c) { return c.is_finite ? std::to_string(c.value) : "omega"; }
}  // namespace

Presentation Presentation::finite(
    std::int64_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
    const std::vector<std::string>& names) {
  std::ostringstream t;
  t << "finite(" << n << ";";
  auto sorted = edges;
  for (auto& e : sorted)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(sorted.begin(), sorted.end());
  for (auto [a, b] : sorted) t << ' ' << a << '-' << b;
  if (!names.empty()) {
    t << ";";
    for (const auto& s : names) t << ' ' << s;
  }
  t << ")";
  return Presentation(make_finite_engine(n, edges, names), t.str());
}
Presentation Presentation::ray() { return Presentation(make_ray_engine(), "ray"); }
Presentation Presentation::double_ray() {
  return Presentation(make_double_ray_engine(), "double_ray");
}
Presentation Presentation::star(Card size) {
  return Presentation(make_star_engine(size), "star(" + card_term(size) + ")");
}
Presentation Presentation::spider(Card legs) {
  return Presentation(make_spider_engine(legs), "spider(" + card_term(legs) + ")");
}
Presentation Presentation::dominated_ray() {
  return Presentation(make_dominated_ray_engine(), "dominated_ray");
}
Presentation Presentation::comb() { return Presentation(make_comb_engine(), "comb"); }
Presentation Presentation::grid() { return Presentation(make_grid_engine(), "grid"); }
Presentation Presentation::binary_tree() {
  return Presentation(make_binary_tree_engine(), "binary_tree");
}
Presentation Presentation::disjoint_union(const std::vector<Presentation>& parts) {
  std::vector<EnginePtr> engines;
  std::ostringstream t;
  t << "union(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    engines.push_back(parts[i].engine_ptr());
    if (i) t << ", ";
    t << parts[i].term();
  }
  t << ")";
  return Presentation(make_union_engine(std::move(engines)), t.str());
}
Presentation Presentation::attach_leaves(const Presentation& to, const VertexId& at,
                                         Card count) {
  return Presentation(make_attach_leaves_engine(to.engine_ptr(), at, count),
                      "attach_leaves(" + to.term() + ", " + at + ", " + card_term(count) + ")");
}
Presentation Presentation::identify(const Presentation& of, const IdentifySpec& spec) {
  std::ostringstream t;
  t << "identify(" << of.term() << ";";
  for (const auto& [a, b] : spec.pairs) t << ' ' << a << '=' << b;
  for (const auto& [a, b] : spec.family_pairs) t << " fam " << a << '=' << b;
  t << ")";
  return Presentation(make_identify_engine(of.engine_ptr(), spec), t.str());
}

std::string Presentation::digest() const {
  // FNV-1a over the canonical term.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : term_) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

VertexId Presentation::vertex_at(std::int64_t rank) const { return eng_->vertex_at(rank); }

std::int64_t Presentation::rank_of(const VertexId& v) const {
  auto r = eng_->rank_of(v);
  if (!r) throw DomainError("unknown vertex id: " + v);
  return *r;
}

bool Presentation::adjacent(const VertexId& u, const VertexId& v) const {
  return eng_->adjacent(u, v);
}

VertexList Presentation::canon_set(const VertexList& xs) const {
  VertexList out = xs;
  std::vector<std::pair<std::int64_t, VertexId>> keyed;
  keyed.reserve(out.size());
  for (const auto& v : out) keyed.emplace_back(rank_of(v), v);
  std::sort(keyed.begin(), keyed.end());
  keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
  out.clear();
  for (auto& [r, v] : keyed) out.push_back(std::move(v));
  return out;
}

NeighbourSet adjacency(const Presentation& p, const VertexId& v) {
  return p.eng().neighbours(v);
}

Exhaustion exhaustion(const Presentation& p, std::int64_t n) {
  if (n < 0) throw DomainError("exhaustion: negative depth");
  Exhaustion out;
  const Card total = p.vertex_count();
  const std::int64_t limit = total.is_finite ? std::min(n, total.value) : n;
  for (std::int64_t r = 0; r < limit; ++r) out.verts.push_back(p.vertex_at(r));
  for (std::int64_t i = 0; i < limit; ++i)
    for (std::int64_t j = i + 1; j < limit; ++j)
      if (p.adjacent(out.verts[static_cast<std::size_t>(i)],
                     out.verts[static_cast<std::size_t>(j)]))
        out.edges.emplace_back(out.verts[static_cast<std::size_t>(i)],
                               out.verts[static_cast<std::size_t>(j)]);
  return out;
}

ComponentSpace components_minus(const Presentation& p, const VertexList& x) {
  return p.eng().components_minus(p.canon_set(x));
}

ComponentRef locate(const Presentation& p, const ComponentSpace& space, const VertexId& v) {
  if (!p.valid_vertex(v)) throw DomainError("unknown vertex id: " + v);
  return detail::locate_in(p.eng(), space, v);
}

bool component_contains(const Presentation& p, const ComponentSpace& space,
                        const ComponentRef& r, const VertexId& v) {
  if (std::holds_alternative<MemberRef>(r)) {
    const auto& m = std::get<MemberRef>(r);
    auto fm = p.eng().family_of(v);
    return fm && fm->first == m.family && fm->second == m.index;
  }
  const int i = std::get<CompRef>(r).index;
  if (i < 0 || i >= static_cast<int>(space.descs.size()))
    throw DomainError("component reference out of range");
  return detail::ref_in_desc(p.eng(), space.descs[static_cast<std::size_t>(i)], v);
}

std::int64_t covering_prefix(const Presentation& p, const VertexList& x) {
  std::int64_t n = 0;
  for (const auto& v : x) n = std::max(n, p.rank_of(v) + 1);
  return n;
}

void finalize_space(const Engine& eng, ComponentSpace& space) {
  detail::finalize(eng, space);
}

}  // namespace tangles
