#pragma once

#include <string>
#include <vector>

#include "tangles/presentation.hpp"

namespace tangles {

// A critical vertex set: deleting it leaves infinitely many components whose
// neighbourhood is exactly the set; the witnessing families are recorded.
struct CriticalSet {
  VertexList x;
  std::vector<std::string> witnesses;  // family ids with pattern exactly x
};

struct CriticalResult {
  std::vector<CriticalSet> sets;
  bool complete = true;
  std::int64_t bound = 0;
  std::string note;
};

// Candidate list for the bounded search: all subsets of X_bound plus the
// constructor-declared hub sets.
std::vector<VertexList> critical_candidates(const Presentation& p, std::int64_t bound);

// Verifies one candidate exactly via components_minus.
std::vector<std::string> critical_witnesses(const Presentation& p, const VertexList& x);

// Subset search kernels. Both produce identical results; the parallel one
// fans the candidate checks out over OpenMP threads and merges in canonical
// order. The serial kernel is the reference the tests compare against.
std::vector<CriticalSet> critical_search_serial(const Presentation& p,
                                                const std::vector<VertexList>& candidates);
std::vector<CriticalSet> critical_search_parallel(const Presentation& p,
                                                  const std::vector<VertexList>& candidates);

// critical_sets(p, n): bounded search plus declared candidates.
CriticalResult critical_sets(const Presentation& p, std::int64_t bound,
                             bool parallel = true);

}  // namespace tangles
