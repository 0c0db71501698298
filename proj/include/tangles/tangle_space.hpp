#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangles/inverse_system.hpp"
#include "tangles/search.hpp"
#include "tangles/separations.hpp"

namespace tangles {

// One ultrafilter-tangle block: all tangles whose induced ultrafilter at the
// critical set is free and concentrated on the witnessing family. A selector
// narrows the block to the free ultrafilters containing its index set; no
// individual free ultrafilter is ever materialized.
struct BlockEntry {
  VertexList critical;           // X_tau
  std::string family;            // witnessing family
  std::optional<EpSet> selector; // infinite index set; absent = whole block
  std::string ref;               // stable reference string
};

struct TangleHandle {
  enum Kind { End, Block } kind = End;
  EndRef end;
  BlockEntry block;

  static TangleHandle end_tangle(EndRef e) {
    TangleHandle h;
    h.kind = End;
    h.end = std::move(e);
    return h;
  }
  static TangleHandle block_tangle(BlockEntry b) {
    TangleHandle h;
    h.kind = Block;
    h.block = std::move(b);
    return h;
  }
  std::string display() const {
    return kind == End ? "end:" + end.display() : block.ref;
  }
};

bool same_handle(const TangleHandle& a, const TangleHandle& b);

// Theta at finite resolution: end tangles plus one block per
// (critical set, witnessing family).
struct TangleSpaceResult {
  EndsResult ends;
  std::vector<BlockEntry> blocks;
  bool complete = true;
  std::int64_t depth = 0;
  std::int64_t critical_bound = 0;
};
TangleSpaceResult tangles(const Presentation& p, std::int64_t depth,
                          std::int64_t critical_bound);

// Handle lookup by reference text ("end:0", "end:leg2", "block:0",
// "block:0:even", "block:evens", ...).
std::optional<TangleHandle> resolve_tangle_ref(const Presentation& p,
                                               const TangleSpaceResult& space,
                                               const std::string& text);

// U(tau, X) described by its concentration point.
struct UltrafilterDescriptor {
  enum Kind { Principal, FreeOnFamily, Undetermined } kind = Undetermined;
  ComponentRef principal;  // Principal
  FamilyChunk chunk;       // FreeOnFamily: family at X, selector-restricted
  std::string reason;      // Undetermined
};
UltrafilterDescriptor induced_ultrafilter(const Presentation& p, const TangleHandle& tau,
                                          const VertexList& x);

// Decide whether a component-set side is in U(tau, X); Undetermined only for
// selector-undecided splits of a block's family.
enum class Ternary { False, True, Undetermined };
Ternary side_in_ultrafilter(const Presentation& p, const ComponentSpace& space,
                            const UltrafilterDescriptor& uf, const SideSel& side);

// The orientation of {A,B} chosen by tau, where the separation is given from
// component data as (X, side).
struct OrientResult {
  bool determined = false;
  OrientedSeparation sep;
};
OrientResult orient(const Presentation& p, const TangleHandle& tau, const VertexList& x,
                    const SideSel& side);

// Runs the tangle-axiom refuter on the orientation sample induced by tau on
// all descriptor-level separations with separator inside X_depth.
struct AuditReport {
  bool pass = true;
  std::int64_t oriented = 0;
  std::int64_t undetermined = 0;
  AxiomReport axioms;
};
AuditReport consistency_audit(const Presentation& p, const TangleHandle& tau,
                              std::int64_t depth, int star_cap = 3);

}  // namespace tangles
