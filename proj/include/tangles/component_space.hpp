#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tangles/card.hpp"
#include "tangles/epset.hpp"

namespace tangles {

// Vertex ids are the canonical term strings assigned by the constructors,
// e.g. "v3", "center", "leaf5", "(2,0)", "n7", "1/v0", "leaf2@u".
using VertexId = std::string;
using VertexList = std::vector<VertexId>;

// A slice of an infinite component family: member indices form an eventually
// periodic subset of the family's index domain.
struct FamilyChunk {
  std::string family;
  EpSet indices;

  bool operator==(const FamilyChunk& o) const {
    return family == o.family && indices == o.indices;
  }
};

enum class DescKind { ExplicitFinite, ExplicitInfinite, Family };

// One entry of a component space: either a single component given outright
// (finite, or infinite with symbolic residues), or a whole infinite family of
// components sharing one neighbourhood pattern.
struct Descriptor {
  DescKind kind = DescKind::ExplicitFinite;
  // Explicitly listed vertices of the component (all of them when finite).
  VertexList verts;
  // Engine-interpreted tags for the infinite part, e.g. "tail:4", "sub:13",
  // "beyond:6". A residue set is always understood relative to the space's
  // deleted set X: it stands for its vertex set minus X.
  std::vector<std::string> residues;
  // Whole family members contained in this single component.
  std::vector<FamilyChunk> absorbed;
  // For kind == Family: the member index set this descriptor stands for.
  FamilyChunk family;
  // Exact neighbourhood inside X. For a family descriptor this is the
  // per-member pattern (every member has this exact neighbourhood).
  VertexList nbhd;
  bool degree_bounded = true;

  bool is_infinite_component() const { return kind == DescKind::ExplicitInfinite; }
};

// The space C_X of components of G - X: finitely many explicit components
// plus finitely many symbolic families, partitioning V \ X.
struct ComponentSpace {
  VertexList deleted;  // X, in canonical rank order
  std::vector<Descriptor> descs;

  std::int64_t explicit_count() const {
    std::int64_t n = 0;
    for (const auto& d : descs)
      if (d.kind != DescKind::Family) ++n;
    return n;
  }
  std::int64_t family_count() const {
    std::int64_t n = 0;
    for (const auto& d : descs)
      if (d.kind == DescKind::Family) ++n;
    return n;
  }
  // Total number of components (finite value or omega).
  Card component_count() const {
    for (const auto& d : descs)
      if (d.kind == DescKind::Family && d.family.indices.is_infinite())
        return Card::omega();
    std::int64_t n = 0;
    for (const auto& d : descs)
      n += d.kind == DescKind::Family ? d.family.indices.finite_size() : 1;
    return Card::finite(n);
  }
};

// A single component addressed inside a space: either descs[index] (an
// explicit component) or one member of a family descriptor.
struct CompRef {
  int index = -1;
  bool operator==(const CompRef& o) const { return index == o.index; }
};
struct MemberRef {
  std::string family;
  std::int64_t index = -1;
  bool operator==(const MemberRef& o) const {
    return family == o.family && index == o.index;
  }
};
using ComponentRef = std::variant<CompRef, MemberRef>;

inline std::string ref_str(const ComponentRef& r) {
  if (std::holds_alternative<CompRef>(r))
    return "c" + std::to_string(std::get<CompRef>(r).index);
  const auto& m = std::get<MemberRef>(r);
  return m.family + "#" + std::to_string(m.index);
}

}  // namespace tangles
