#pragma once

// Shared helpers for the constructor engines.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tangles/engine.hpp"
#include "tangles/errors.hpp"

namespace tangles::detail {

// Locate the component of a space containing v (v must not lie in X).
ComponentRef locate_in(const Engine& eng, const ComponentSpace& space,
                       const VertexId& v);

bool ref_in_desc(const Engine& eng, const Descriptor& d, const VertexId& v);

// Sort descriptors, vertex lists and neighbourhoods into canonical rank
// order; compute degree-bounded flags.
void finalize(const Engine& eng, ComponentSpace& space);

// Split one member out of its family descriptor in `space`, materializing it
// as an explicit descriptor of its own; returns that descriptor's index.
int extract_member(const Engine& eng, ComponentSpace& space,
                   const std::string& fam, std::int64_t idx);

// Maximal runs of surviving indices on the integer segment [lo, hi_deleted],
// where `deleted` is sorted ascending and non-empty; the run beyond the last
// deletion is reported separately as tail_start.
struct SegmentSplit {
  std::vector<std::pair<std::int64_t, std::int64_t>> segments;  // closed runs
  std::int64_t tail_start = 0;
};
SegmentSplit split_segments(const std::vector<std::int64_t>& deleted,
                            std::int64_t lo);

// Canonical interleaving of several enumerations with known sizes, used by
// the combinators: round r lists the r-th vertex of every part that still has
// one, parts in order.
class Interleave {
 public:
  explicit Interleave(std::vector<Card> sizes) : sizes_(std::move(sizes)) {}

  Card total() const;
  // (part, inner rank) of the vertex with the given global rank.
  std::pair<int, std::int64_t> at(std::int64_t rank) const;
  std::int64_t global_rank(int part, std::int64_t inner) const;

 private:
  std::int64_t count_before_round(std::int64_t r) const;
  std::vector<Card> sizes_;
};

std::int64_t parse_int(const std::string& s, bool* ok);

}  // namespace tangles::detail
