#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tangles/card.hpp"
#include "tangles/component_space.hpp"

namespace tangles {

struct NeighbourGroup {
  std::string label;  // e.g. "leaf{i} : i in omega"
};

// Result of the adjacency query: all neighbours, with a symbolic group used
// exactly when the degree is infinite.
struct NeighbourSet {
  VertexList finite;  // rank order
  std::vector<NeighbourGroup> symbolic;
  bool infinite_degree() const { return !symbolic.empty(); }
};

// A countably infinite family of isomorphic pieces hanging on a fixed hub set.
// Every member attaches to exactly the hubs, so the hub set is the per-member
// neighbourhood pattern whenever the member survives a deletion untouched.
struct FamilyInfo {
  std::string id;
  VertexList hubs;              // rank order
  bool member_infinite = false; // true when each member is itself infinite
  int member_size = 1;          // vertices per member when finite
};

// One addressable end. Members of an end family are addressed as
// (family, index); a lone end by its id.
struct EndRef {
  std::string single_id;  // empty for family members
  std::string family;     // empty for single ends
  std::int64_t index = -1;

  bool is_member() const { return !family.empty(); }
  std::string display() const {
    return is_member() ? family + std::to_string(index) : single_id;
  }
  bool operator==(const EndRef& o) const {
    return single_id == o.single_id && family == o.family &&
           (!is_member() || index == o.index);
  }
};

struct EndCatalog {
  std::vector<std::string> singles;      // ids of individually addressable ends
  std::vector<std::string> end_families; // family ids carrying one end per member
  // ref prefix per end family, e.g. "leg" so members read "leg0", "leg1", ...
  std::vector<std::string> family_prefixes;
  bool continuum = false;                // branching end space (binary tree)
};

// The per-constructor core: canonical enumeration, adjacency, and exact
// component analysis of G - X for every finite X. Engines are immutable and
// all methods are const; concurrent use is safe.
class Engine {
 public:
  virtual ~Engine() = default;

  virtual Card vertex_count() const = 0;
  virtual bool locally_finite() const = 0;
  virtual VertexList infinite_degree_vertices() const { return {}; }

  virtual VertexId vertex_at(std::int64_t rank) const = 0;
  virtual std::optional<std::int64_t> rank_of(const VertexId& v) const = 0;
  virtual bool adjacent(const VertexId& u, const VertexId& v) const = 0;
  virtual NeighbourSet neighbours(const VertexId& v) const = 0;

  virtual ComponentSpace components_minus(const VertexList& x) const = 0;

  // Residue oracles; tags are the strings this engine put into descriptors.
  virtual bool residue_contains(const std::string& tag, const VertexId& v) const;
  virtual VertexId residue_probe(const std::string& tag) const;
  virtual bool residue_bears_ends(const std::string& tag) const;

  virtual std::vector<FamilyInfo> families() const { return {}; }
  virtual std::optional<std::pair<std::string, std::int64_t>> family_of(
      const VertexId& v) const;
  virtual VertexId family_member_probe(const std::string& fam,
                                       std::int64_t idx) const;
  virtual VertexList family_member_vertices(const std::string& fam,
                                            std::int64_t idx) const;

  virtual EndCatalog end_catalog() const { return {}; }
  // A probe sequence converging to the end: for every finite X, the tail of
  // the sequence beyond the last X-hit lies inside C(X, omega).
  virtual VertexId end_ray_at(const EndRef& e, std::int64_t k) const;
  virtual std::optional<std::int64_t> end_ray_pos(const EndRef& e,
                                                  const VertexId& v) const;
  virtual VertexList end_dominators(const EndRef& e) const { return {}; }
};

using EnginePtr = std::shared_ptr<const Engine>;

}  // namespace tangles
