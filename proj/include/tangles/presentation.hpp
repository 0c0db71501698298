#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tangles/engine.hpp"

namespace tangles {

// A finite term describing a (possibly infinite) simple graph, together with
// the constructor-specific machinery for exact analysis. Immutable; all
// operations are pure functions of (presentation, arguments).
class Presentation {
 public:
  // Constructors / combinators. "names" gives custom vertex ids to a finite
  // graph; when empty the ids are v0..v{n-1}.
  static Presentation finite(std::int64_t n,
                             const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                             const std::vector<std::string>& names = {});
  static Presentation ray();
  static Presentation double_ray();
  static Presentation star(Card size);
  static Presentation spider(Card legs);
  static Presentation dominated_ray();
  static Presentation comb();
  static Presentation grid();
  static Presentation binary_tree();
  static Presentation disjoint_union(const std::vector<Presentation>& parts);
  static Presentation attach_leaves(const Presentation& to, const VertexId& at, Card count);
  struct IdentifySpec {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    // Member-wise identification of two singleton-member families.
    std::vector<std::pair<std::string, std::string>> family_pairs;
  };
  static Presentation identify(const Presentation& of, const IdentifySpec& spec);

  const Engine& eng() const { return *eng_; }
  const EnginePtr& engine_ptr() const { return eng_; }

  // Canonical term text (used for digests and reports).
  const std::string& term() const { return term_; }
  std::string digest() const;

  Card vertex_count() const { return eng_->vertex_count(); }
  bool locally_finite() const { return eng_->locally_finite(); }

  VertexId vertex_at(std::int64_t rank) const;
  std::int64_t rank_of(const VertexId& v) const;  // throws DomainError on bad id
  bool valid_vertex(const VertexId& v) const { return eng_->rank_of(v).has_value(); }
  bool adjacent(const VertexId& u, const VertexId& v) const;

  // Sorts by canonical rank and validates every id.
  VertexList canon_set(const VertexList& xs) const;

 private:
  Presentation(EnginePtr e, std::string term)
      : eng_(std::move(e)), term_(std::move(term)) {}
  EnginePtr eng_;
  std::string term_;
};

// ---- presentation-level operations ----

// All neighbours of v; a symbolic group is used exactly when deg(v) is infinite.
NeighbourSet adjacency(const Presentation& p, const VertexId& v);

struct Exhaustion {
  VertexList verts;  // the canonical separator X_n, in rank order
  std::vector<std::pair<VertexId, VertexId>> edges;  // induced edges
};
// The finite induced subgraph on the first n vertices in canonical rank order.
Exhaustion exhaustion(const Presentation& p, std::int64_t n);

// Exact component analysis of G - X.
ComponentSpace components_minus(const Presentation& p, const VertexList& x);

// The component of G - X containing v (v must not lie in X).
ComponentRef locate(const Presentation& p, const ComponentSpace& space, const VertexId& v);

// Does the component addressed by r contain v?
bool component_contains(const Presentation& p, const ComponentSpace& space,
                        const ComponentRef& r, const VertexId& v);

// Smallest canonical prefix X_n containing the given set (i.e. n = max rank + 1).
std::int64_t covering_prefix(const Presentation& p, const VertexList& x);

// Shared helper for engines: sort descriptors and their vertex lists into
// canonical order and compute degree-bounded flags. Engines call this at the
// end of components_minus.
void finalize_space(const Engine& eng, ComponentSpace& space);

}  // namespace tangles
