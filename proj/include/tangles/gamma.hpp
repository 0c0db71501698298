#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tangles/tangle_space.hpp"

namespace tangles {

// An element of the partition poset: a finite separator X together with a
// finite partition of the components of G - X. Classes are component
// selections; family descriptors may be split along index sets.
struct GammaElement {
  VertexList x;
  std::vector<SideSel> classes;
};

// Validates the classes against the canonical space of x (non-empty classes,
// pairwise disjoint, covering all components) and normalizes them.
GammaElement make_gamma(const Presentation& p, const VertexList& x,
                        const std::vector<SideSel>& classes);
// The one-class element (degenerate when G - X is empty).
GammaElement trivial_gamma(const Presentation& p, const VertexList& x);

Card class_cardinality(const Presentation& p, const ComponentSpace& space,
                       const SideSel& cls);  // |V[class]|, exact
bool in_gamma_prime(const Presentation& p, const GammaElement& g);

// The partition P induces on C_{X'}: bonding preimages of the classes,
// aligned with the input classes (entries may be empty; callers drop them).
std::vector<SideSel> restrict_partition(const Presentation& p, const GammaElement& g,
                                        const VertexList& xp);

// (X,P) <= (Y,Q) iff X inside Y and Q refines P restricted to Y.
bool gamma_le(const Presentation& p, const GammaElement& a, const GammaElement& b);
bool gamma_equal(const Presentation& p, const GammaElement& a, const GammaElement& b);

// (X1 u X2, coarsest common refinement of both restrictions).
GammaElement common_upper_bound(const Presentation& p, const GammaElement& a,
                                const GammaElement& b);

// Least step into Gamma': absorb the vertex sets of all finite classes into
// the separator and restrict.
struct GammaPrimeResult {
  GammaElement gamma;
  bool degenerate = false;  // empty component space (finite graph, X = V)
};
GammaPrimeResult to_gamma_prime(const Presentation& p, const GammaElement& g);

// Which enumerated tangles (and block restrictions) project onto a class.
struct ProjectionWitness {
  enum Kind { SingleEnd, FamilyEnds, BlockProj, ContinuumEnds } kind = SingleEnd;
  EndRef end;                      // SingleEnd
  std::string family;              // FamilyEnds
  EpSet indices;                   // FamilyEnds: member ends in the class
  BlockEntry block;                // BlockProj
  std::optional<EpSet> restriction;  // BlockProj: selector-refinement
  std::string note;                // ContinuumEnds
  std::string display() const;
};
std::vector<std::vector<ProjectionWitness>> class_witnesses(const Presentation& p,
                                                            const GammaElement& g);

struct SurjectivityReport {
  bool pass = true;
  std::vector<std::int64_t> witness_counts;  // per class
};
// Theorem-style check for g in Gamma': every class is hit by some tangle.
SurjectivityReport projection_surjectivity_check(const Presentation& p,
                                                 const GammaElement& g);

// Threads of a finite directed fragment (closed under common_upper_bound).
struct LimitThread {
  std::vector<int> choice;  // class index per Delta element
  std::vector<ProjectionWitness> witnesses;
};
struct LimitResult {
  std::vector<GammaElement> delta;  // canonical order
  std::vector<LimitThread> threads;
};
LimitResult finite_inverse_limit(const Presentation& p,
                                 const std::vector<GammaElement>& delta);

// Bonding between comparable elements: the class of `coarser` that the given
// class of `finer` restricts into.
int gamma_bond_class(const Presentation& p, const GammaElement& coarser,
                     const GammaElement& finer, int finer_class);

}  // namespace tangles
