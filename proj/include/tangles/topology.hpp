#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangles/gamma.hpp"

namespace tangles {

// A point of |G|_Theta reachable by the membership queries: a vertex, an
// inner edge point (rational coordinate), or a tangle handle.
struct SpacePoint {
  enum Kind { Vertex, EdgePoint, Tangle } kind = Vertex;
  VertexId v;                      // Vertex
  VertexId eu, ev;                 // EdgePoint endpoints
  std::pair<std::int64_t, std::int64_t> t{1, 2};  // coordinate, 0 < t < 1
  TangleHandle tau;                // Tangle

  static SpacePoint vertex(VertexId id);
  static SpacePoint edge_point(VertexId u, VertexId w, std::int64_t num, std::int64_t den);
  static SpacePoint tangle(TangleHandle h);
};

// Membership of pt in the basic open set O(X, C).
Ternary in_basic_open(const Presentation& p, const SpacePoint& pt, const VertexList& x,
                      const SideSel& side);

// The clopen split of the enumerated tangle space induced by a two-class
// gamma element.
struct BipartitionReport {
  struct Assignment {
    std::string what;  // tangle/block display
    int side = -1;     // 0 or 1; -1 for Undetermined
  };
  std::vector<Assignment> assignments;
  std::int64_t undetermined = 0;
};
BipartitionReport clopen_bipartition(const Presentation& p, const GammaElement& g,
                                     const TangleSpaceResult& space);

// Separation witness that puts two tangle handles on opposite determined
// sides; searches canonical prefixes in rank order.
struct DistinguishResult {
  enum Verdict { Found, NotSeparable } verdict = Found;
  VertexList x;
  SideSel side1;  // tau1's side; tau2 lies on the complement
  std::string detail;
};
DistinguishResult distinguish(const Presentation& p, const TangleHandle& tau1,
                              const TangleHandle& tau2);

}  // namespace tangles
