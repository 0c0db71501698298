#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tangles/presentation.hpp"

namespace tangles {

// A subset of the components of some C_X, i.e. one side of a bipartition of
// the component space: whole explicit descriptors plus member slices of
// family descriptors. Indices refer to the canonical descriptor order of the
// space the selection was built against.
struct SideSel {
  std::set<int> taken;             // explicit descriptor indices
  std::map<int, EpSet> members;    // family descriptor index -> chosen member indices

  bool operator==(const SideSel& o) const {
    return taken == o.taken && members == o.members;
  }
};

SideSel side_none(const ComponentSpace& space);
SideSel side_all(const ComponentSpace& space);
SideSel side_complement(const ComponentSpace& space, const SideSel& s);
// Normalize: clip member sets to the family's index set, drop empty entries.
SideSel side_normalize(const ComponentSpace& space, const SideSel& s);
bool side_has(const ComponentSpace& space, const SideSel& s, const ComponentRef& r);

// s_{X -> C} = (V minus V[C], X union V[C]), stored as separator + big side.
struct OrientedSeparation {
  VertexList x;
  SideSel big;

  bool operator==(const OrientedSeparation& o) const {
    return x == o.x && big == o.big;
  }
};

// Builds s_{X -> C}; the selection must fit the canonical space of X.
OrientedSeparation sep_from_side(const Presentation& p, const VertexList& x,
                                 const SideSel& side);
OrientedSeparation invert(const Presentation& p, const OrientedSeparation& s);
bool underlying_equal(const Presentation& p, const OrientedSeparation& a,
                      const OrientedSeparation& b);

// The partial order (A,B) <= (C,D) iff A inside C and B containing D. Decided
// through separator membership and bonding containment; infinite sides are
// never enumerated.
bool le(const Presentation& p, const OrientedSeparation& a, const OrientedSeparation& b);

struct ConsistencyReport {
  bool consistent = true;
  // Witness (B,A), (C,D) from the set with (A,B) < (C,D).
  std::optional<std::pair<OrientedSeparation, OrientedSeparation>> witness;
};
ConsistencyReport consistent(const Presentation& p,
                             const std::vector<OrientedSeparation>& seps);

// One side of a separation (or a star's interior) described symbolically.
struct SideDescription {
  VertexList level;        // the evaluation separator L
  VertexList verts;        // members of L inside the set
  SideSel sel;             // components of C_L inside the set
  Card cardinality;        // exact
};

struct StarReport {
  bool is_star = false;
  SideDescription interior;  // meaningful when is_star
  bool interior_finite = false;
};
StarReport star_and_interior(const Presentation& p,
                             const std::vector<OrientedSeparation>& sigma);

// Refutation check for Definition-style tangle axioms on a finite sample of
// one orientation: looks for a star of at most `cap` sample members (the
// empty star included) whose interior is finite. Never certifies tangle-hood.
struct AxiomReport {
  bool consistent = true;
  std::optional<std::pair<OrientedSeparation, OrientedSeparation>> consistency_witness;
  std::optional<std::vector<OrientedSeparation>> violating_star;
  Card violating_interior;
  std::int64_t stars_checked = 0;
};
AxiomReport check_tangle_axioms(const Presentation& p,
                                const std::vector<OrientedSeparation>& sample,
                                int star_cap = 3);

}  // namespace tangles
