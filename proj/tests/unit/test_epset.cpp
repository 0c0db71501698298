#include <doctest.h>

#include <cstdint>
#include <vector>

#include "tangles/epset.hpp"

using tangles::EpSet;

namespace {

// Deterministic pseudo-random stream for property checks.
struct Mix {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

EpSet sample_set(Mix& rng) {
  switch (rng.next() % 6) {
    case 0: return EpSet::all();
    case 1: return EpSet::none();
    case 2: return EpSet::evens();
    case 3: return EpSet::residue_class(2 + rng.next() % 5, rng.next() % 2);
    case 4: {
      std::vector<std::int64_t> m;
      for (int i = 0; i < 4; ++i) m.push_back(static_cast<std::int64_t>(rng.next() % 30));
      return EpSet::finite_set(m);
    }
    default: {
      std::vector<std::int64_t> m;
      for (int i = 0; i < 3; ++i) m.push_back(static_cast<std::int64_t>(rng.next() % 20));
      return EpSet::cofinite(m);
    }
  }
}

}  // namespace

TEST_CASE("epset basics") {
  CHECK(EpSet::all().is_infinite());
  CHECK(EpSet::none().is_empty());
  CHECK(EpSet::evens().contains(0));
  CHECK(!EpSet::evens().contains(3));
  CHECK(EpSet::odds().contains(3));
  CHECK(EpSet::finite_set({1, 5}).finite_size() == 2);
  CHECK(EpSet::cofinite({0, 1}).is_infinite());
  CHECK(!EpSet::cofinite({0, 1}).contains(1));
  CHECK(EpSet::at_least(3).contains(3));
  CHECK(!EpSet::at_least(3).contains(2));
}

TEST_CASE("epset boolean algebra agrees with pointwise membership") {
  Mix rng{42};
  for (int round = 0; round < 200; ++round) {
    const EpSet a = sample_set(rng), b = sample_set(rng);
    const EpSet u = a.unite(b), i = a.intersect(b), c = a.complement(), m = a.minus(b);
    for (std::int64_t x = 0; x < 120; ++x) {
      CHECK(u.contains(x) == (a.contains(x) || b.contains(x)));
      CHECK(i.contains(x) == (a.contains(x) && b.contains(x)));
      CHECK(c.contains(x) == !a.contains(x));
      CHECK(m.contains(x) == (a.contains(x) && !b.contains(x)));
    }
    CHECK(a.complement().complement() == a);
    CHECK(a.subset_of(u));
    CHECK(i.subset_of(a));
  }
}

TEST_CASE("epset canonical text round-trips") {
  Mix rng{7};
  for (int round = 0; round < 120; ++round) {
    const EpSet a = sample_set(rng).unite(sample_set(rng)).minus(sample_set(rng));
    auto back = EpSet::parse(a.to_string());
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
  CHECK(EpSet::parse("even").has_value());
  CHECK(EpSet::parse("mod3=1").has_value());
  CHECK(EpSet::parse("mod6=1|5").has_value());
  CHECK(EpSet::parse("all-{0,2}").has_value());
  CHECK(!EpSet::parse("mod0=1").has_value());
  CHECK(!EpSet::parse("gibberish").has_value());
}

TEST_CASE("epset infinite overlap and almost-subset") {
  CHECK(EpSet::evens().meets_infinitely(EpSet::residue_class(3, 0)));
  CHECK(!EpSet::evens().meets_infinitely(EpSet::odds()));
  CHECK(EpSet::evens().minus(EpSet::finite_set({2, 4})).almost_subset_of(EpSet::evens()));
  CHECK(EpSet::evens().unite(EpSet::finite_set({3})).almost_subset_of(EpSet::evens()));
  CHECK(!EpSet::all().almost_subset_of(EpSet::evens()));
}
