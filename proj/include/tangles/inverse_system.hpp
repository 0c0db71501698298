#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "tangles/presentation.hpp"

namespace tangles {

// The bonding map c_{X',X} of the inverse system {C_X, c_{X',X}, X}: total
// from the components of G - X' to the components of G - X, for X inside X'.
struct BondingMap {
  VertexList x;             // coarser level
  VertexList xp;            // finer level, contains x
  ComponentSpace src;       // C_{X'}
  ComponentSpace dst;       // C_X
  struct FamilyImage {
    bool memberwise = false;     // members keep their indices in dst's family
    ComponentRef all_to_one;     // used when not memberwise
  };
  // Per descriptor of src: explicit descriptors map to a fixed component,
  // family descriptors map member-wise or en bloc.
  std::vector<std::variant<ComponentRef, FamilyImage>> images;
};

BondingMap bonding(const Presentation& p, const VertexList& x, const VertexList& xp);

// Image of a single component of C_{X'} under the bonding map.
ComponentRef map_ref(const BondingMap& bm, const ComponentRef& r);

// ---- ends ----

struct EndEntry {
  EndRef ref;
  std::vector<ComponentRef> thread;  // choice at levels X_0 .. X_d
  VertexList dominators;
};
struct EndFamilyEntry {
  std::string family;       // component family whose members carry the ends
  std::string prefix;       // refs read prefix + index
  EpSet untouched;          // members untouched by X_d (threads are symbolic)
  std::vector<EndEntry> samples;  // threads of the touched members
};
struct EndsResult {
  std::vector<EndEntry> singles;
  std::vector<EndFamilyEntry> families;
  bool continuum = false;
  CardExt total;
  std::int64_t depth = 0;
};

// Every end as a compatible thread through the canonical levels X_0..X_d,
// extended by the constructor's tail rule; end families reported symbolically.
EndsResult ends(const Presentation& p, std::int64_t depth);

// C(X, omega): the component of G - X the end lives in.
ComponentRef end_locate(const Presentation& p, const EndRef& e, const ComponentSpace& space);

// Exact domination test (the set Delta-omega of the end's dominating vertices
// is part of the constructor's tail rule).
bool dominates(const Presentation& p, const VertexId& v, const EndRef& e);

// Resolve an end reference like "0", "leg3" against the catalog.
std::optional<EndRef> parse_end_ref(const Presentation& p, const std::string& text);

}  // namespace tangles
