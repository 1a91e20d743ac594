#include <doctest.h>

#include <random>

#include "testutil.hpp"
#include "ultrapower/epset.hpp"
#include "ultrapower/error.hpp"
#include "ultrapower/ultrafilter.hpp"

using namespace ultrapower;

TEST_CASE("factory membership") {
  CHECK(EPSet::naturals().contains(0));
  CHECK(EPSet::naturals().is_cofinite());
  CHECK(EPSet::empty_set().is_empty());
  CHECK_FALSE(EPSet::empty_set().contains(17));

  const EPSet f = EPSet::finite_set({1, 4, 4, 2});
  CHECK(f.contains(1));
  CHECK(f.contains(2));
  CHECK(f.contains(4));
  CHECK_FALSE(f.contains(0));
  CHECK_FALSE(f.contains(5));
  CHECK(f.is_finite());

  const EPSet c = EPSet::cofinite_excluding({0, 3});
  CHECK_FALSE(c.contains(3));
  CHECK(c.contains(4));
  CHECK(c.is_cofinite());

  const EPSet evens = EPSet::residue_class(2, {0});
  CHECK(evens.contains(0));
  CHECK_FALSE(evens.contains(7));
  CHECK(evens.is_infinite());
  CHECK_FALSE(evens.is_cofinite());

  const EPSet tail = EPSet::at_least(5);
  CHECK_FALSE(tail.contains(4));
  CHECK(tail.contains(5));
  CHECK(EPSet::at_least(0) == EPSet::naturals());
}

TEST_CASE("make validates its arguments") {
  CHECK_THROWS_AS(EPSet::make({}, 0, {}), PreconditionError);
  CHECK_THROWS_AS(EPSet::make({}, 3, {3}), PreconditionError);
}

TEST_CASE("canonical form folds periods and trims prefixes") {
  // period 4 with residues {0,2} is really period 2 with residue {0}
  const EPSet folded = EPSet::make({}, 4, {0, 2});
  CHECK(folded.period() == 2);
  CHECK(folded.residues() == std::vector<std::uint64_t>{0});

  // a prefix that repeats the tail pattern contributes nothing
  const EPSet trimmed = EPSet::make({true, false, true, false}, 2, {0});
  CHECK(trimmed.prefix_len() == 0);
  CHECK(trimmed == EPSet::residue_class(2, {0}));

  // one flipped bit keeps exactly the prefix up to that bit
  const EPSet kept = EPSet::make({true, true, true, false}, 2, {0});
  CHECK(kept.prefix_len() == 2);
  CHECK(kept.contains(1));
  CHECK_FALSE(kept.contains(3));
}

TEST_CASE("intersection of residue classes multiplies the period") {
  const EPSet evens = EPSet::residue_class(2, {0});
  const EPSet threes = EPSet::residue_class(3, {0});
  const EPSet sixes = intersection(evens, threes);
  CHECK(sixes == EPSet::residue_class(6, {0}));
  CHECK(sixes.period() == 6);
}

TEST_CASE("union keeps isolated points in the prefix") {
  const EPSet u = union_of(EPSet::finite_set({1}), EPSet::residue_class(2, {0}));
  CHECK(u.contains(0));
  CHECK(u.contains(1));
  CHECK(u.contains(2));
  CHECK_FALSE(u.contains(3));
  CHECK(u.period() == 2);
}

TEST_CASE("boolean operations agree with the membership table") {
  std::mt19937_64 g(2024);
  for (int round = 0; round < 300; ++round) {
    const EPSet a = random_epset(g, 6, 12);
    const EPSet b = random_epset(g, 6, 12);
    const std::uint64_t window = testutil::joint_window(a, b) + 8;

    const EPSet meet = intersection(a, b);
    const EPSet join = union_of(a, b);
    const EPSet diff = difference(a, b);
    const EPSet comp = complement(a);
    for (std::uint64_t n = 0; n < window; ++n) {
      CHECK(meet.contains(n) == (a.contains(n) && b.contains(n)));
      CHECK(join.contains(n) == (a.contains(n) || b.contains(n)));
      CHECK(diff.contains(n) == (a.contains(n) && !b.contains(n)));
      CHECK(comp.contains(n) == !a.contains(n));
    }
    CHECK(is_superset(a, meet));
    CHECK(is_superset(join, a));
    CHECK(is_superset(a, b) == difference(b, a).is_empty());
  }
}

TEST_CASE("superset is containment of every member") {
  std::mt19937_64 g(77);
  for (int round = 0; round < 200; ++round) {
    const EPSet a = random_epset(g, 5, 10);
    const EPSet b = random_epset(g, 5, 10);
    const std::uint64_t window = testutil::joint_window(a, b);
    bool contained = true;
    for (std::uint64_t n = 0; n < window; ++n) {
      if (b.contains(n) && !a.contains(n)) contained = false;
    }
    CHECK(is_superset(a, b) == contained);
  }
}

TEST_CASE("structural equality is denotational equality") {
  std::mt19937_64 g(5150);
  int equal_seen = 0;
  for (int round = 0; round < 400; ++round) {
    const EPSet a = random_epset(g, 4, 8);
    const EPSet b = random_epset(g, 4, 8);
    const std::uint64_t window = testutil::joint_window(a, b);
    bool same = true;
    for (std::uint64_t n = 0; n < window; ++n) {
      if (a.contains(n) != b.contains(n)) same = false;
    }
    CHECK((a == b) == same);
    if (same) ++equal_seen;
  }
  // the generator repeats small shapes often enough for collisions
  CHECK(equal_seen > 0);
}

TEST_CASE("canonical period admits no further fold") {
  std::mt19937_64 g(31);
  for (int round = 0; round < 300; ++round) {
    const EPSet a = random_epset(g, 6, 12);
    const auto& tail = a.tail_bits();
    const std::uint64_t p = a.period();
    for (std::uint64_t d = 1; d < p; ++d) {
      if (p % d != 0) continue;
      bool folds = true;
      for (std::uint64_t r = 0; r < p; ++r) {
        if (tail[r] != tail[r % d]) folds = false;
      }
      CHECK_FALSE(folds);
    }
    // minimal prefix: its last bit must disagree with the tail pattern
    if (a.prefix_len() > 0) {
      const std::uint64_t last = a.prefix_len() - 1;
      CHECK(a.prefix_bits()[last] != tail[last % p]);
    }
  }
}

TEST_CASE("tail bits use absolute residues") {
  std::mt19937_64 g(99);
  for (int round = 0; round < 200; ++round) {
    const EPSet a = random_epset(g, 6, 12);
    for (std::uint64_t n = a.prefix_len(); n < a.prefix_len() + 3 * a.period(); ++n) {
      CHECK(a.contains(n) == a.tail_bits()[n % a.period()]);
    }
    std::vector<std::uint64_t> expect;
    for (std::uint64_t r = 0; r < a.period(); ++r) {
      if (a.tail_bits()[r]) expect.push_back(r);
    }
    CHECK(a.residues() == expect);
  }
}

TEST_CASE("finiteness classification matches the bitmap") {
  std::mt19937_64 g(123);
  for (int round = 0; round < 300; ++round) {
    const EPSet a = random_epset(g, 5, 9);
    CHECK(a.is_finite() == testutil::bitmap_is_finite(a));
    CHECK(a.is_infinite() == !a.is_finite());
    CHECK(a.is_cofinite() == testutil::bitmap_is_finite(complement(a)));
    const auto first = a.first_element();
    std::optional<std::uint64_t> expect;
    for (std::uint64_t n = 0; n < a.prefix_len() + a.period() && !expect; ++n) {
      if (a.contains(n)) expect = n;
    }
    CHECK(first == expect);
    CHECK(a.is_empty() == !first.has_value());
  }
}

TEST_CASE("aligned period beyond the cap raises a resource error") {
  const EPSet a = EPSet::residue_class(9973, {1});
  const EPSet b = EPSet::residue_class(9974, {1});
  CHECK_THROWS_AS(intersection(a, b), ResourceError);
  CHECK_THROWS_AS(union_of(a, b, 100), ResourceError);
  CHECK_NOTHROW(intersection(a, b, 9973 * 9974));
  CHECK(checked_lcm(6, 4, 100) == 12);
  CHECK_THROWS_AS(checked_lcm(1'000'000'007, 998'244'353, 1'000'000'000'000ULL), ResourceError);
}
