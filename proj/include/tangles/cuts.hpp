#pragma once

#include <string>
#include <vector>

#include "tangles/presentation.hpp"

namespace tangles {

// A finite edge cut separating two vertices; sides are reported as explicit
// truncation vertices plus symbolic component labels.
struct CutWitness {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::string> side1, side2;
};

// A rule producing arbitrarily many pairwise edge-disjoint u-v paths, with
// the first few materialized.
struct PathSchedule {
  std::string rule;
  std::vector<std::vector<VertexId>> paths;
};

enum class CutVerdict { Equivalent, Separated, Unknown };

struct CutResult {
  CutVerdict verdict = CutVerdict::Unknown;
  CutWitness cut;          // Separated
  PathSchedule schedule;   // Equivalent
  std::int64_t flow_lower_bound = 0;  // Unknown: best edge-connectivity bound found
};

// Do u and v lie on the same side of every finite cut? Three-valued: a
// certified finite cut, a certified unbounded family of edge-disjoint paths,
// or Unknown at this effort.
CutResult finite_cut_equivalent(const Presentation& p, const VertexId& u,
                                const VertexId& v, std::int64_t effort = 8);

}  // namespace tangles
