#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tangles {

// An eventually periodic subset of the natural numbers.
//
// Membership of i < threshold() is looked up in an explicit list; membership
// of i >= threshold() is decided by i mod modulus() against a residue mask.
// This class of sets is closed under union, intersection, complement and
// difference, all questions about it are decidable, and it is exactly the
// closure of {residue classes, finite sets, cofinite sets} under Boolean
// combinations. It serves three roles:
//   - index sets of infinite component families (always cofinite),
//   - selectors (symbolic free-filter bases on a family's index set),
//   - partition classes of a family inside a Gamma element.
class EpSet {
 public:
  EpSet() : threshold_(0), modulus_(1), residues_{false} {}

  static EpSet none() { return EpSet(); }
  static EpSet all();
  static EpSet finite_set(const std::vector<std::int64_t>& members);
  static EpSet cofinite(const std::vector<std::int64_t>& excluded);
  static EpSet residue_class(std::int64_t modulus, std::int64_t residue);
  static EpSet evens() { return residue_class(2, 0); }
  static EpSet odds() { return residue_class(2, 1); }
  static EpSet at_least(std::int64_t n);  // {i : i >= n}

  bool contains(std::int64_t i) const;
  bool is_infinite() const;
  bool is_finite() const { return !is_infinite(); }
  bool is_empty() const;
  bool is_all() const;
  // Number of members; only valid for finite sets.
  std::int64_t finite_size() const;

  EpSet unite(const EpSet& o) const;
  EpSet intersect(const EpSet& o) const;
  EpSet complement() const;
  EpSet minus(const EpSet& o) const { return intersect(o.complement()); }

  bool subset_of(const EpSet& o) const { return minus(o).is_empty(); }
  // A \ B finite: every free ultrafilter concentrated on A is concentrated on B.
  bool almost_subset_of(const EpSet& o) const { return minus(o).is_finite(); }
  bool meets_infinitely(const EpSet& o) const { return intersect(o).is_infinite(); }

  bool operator==(const EpSet& o) const;
  bool operator!=(const EpSet& o) const { return !(*this == o); }
  // Total order for canonical sorting of chunk lists.
  bool operator<(const EpSet& o) const { return to_string() < o.to_string(); }

  // The first n members, ascending.
  std::vector<std::int64_t> first(std::size_t n) const;
  std::optional<std::int64_t> min() const;

  // Canonical text form, e.g. "all", "none", "even", "odd", "mod3=1",
  // "{0,4,7}", "even-{2}+{7}". parse() accepts exactly these forms.
  std::string to_string() const;
  static std::optional<EpSet> parse(const std::string& text);

  std::int64_t threshold() const { return threshold_; }
  std::int64_t modulus() const { return modulus_; }

 private:
  void normalize();
  bool periodic_member(std::int64_t i) const {
    return residues_[static_cast<std::size_t>(i % modulus_)];
  }

  std::int64_t threshold_;       // explicit region is [0, threshold_)
  std::int64_t modulus_;         // >= 1
  std::vector<bool> residues_;   // size modulus_
  std::set<std::int64_t> low_;   // members below threshold_
};

}  // namespace tangles
