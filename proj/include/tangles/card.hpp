#pragma once

#include <cstdint>
#include <string>

namespace tangles {

// Cardinality of a vertex set or component set: a finite value or aleph_0.
struct Card {
  bool is_finite = true;
  std::int64_t value = 0;

  static Card finite(std::int64_t n) { return Card{true, n}; }
  static Card omega() { return Card{false, 0}; }

  bool operator==(const Card& o) const {
    return is_finite == o.is_finite && (!is_finite || value == o.value);
  }
  std::string str() const { return is_finite ? std::to_string(value) : "omega"; }
};

// End spaces can additionally have the cardinality of the continuum
// (branching presentations such as the infinite binary tree).
struct CardExt {
  enum Kind { Finite, Aleph0, Continuum } kind = Finite;
  std::int64_t value = 0;

  static CardExt finite(std::int64_t n) { return CardExt{Finite, n}; }
  static CardExt aleph0() { return CardExt{Aleph0, 0}; }
  static CardExt continuum() { return CardExt{Continuum, 0}; }

  bool operator==(const CardExt& o) const {
    return kind == o.kind && (kind != Finite || value == o.value);
  }
  std::string str() const {
    switch (kind) {
      case Finite: return std::to_string(value);
      case Aleph0: return "omega";
      default: return "continuum";
    }
  }
};

}  // namespace tangles
