#include <doctest.h>

#include <random>

#include "testutil.hpp"
#include "ultrapower/error.hpp"
#include "ultrapower/hyper.hpp"

using namespace ultrapower;
using testutil::q;
using testutil::z;

namespace {

const UltrafilterTrace kZero{ResidueSelector::zero()};
const UltrafilterTrace kLast{ResidueSelector::minus_one()};

EPSeq iseq(std::vector<std::int64_t> prefix, std::vector<std::int64_t> cycle) {
  std::vector<Element> p, c;
  for (const auto v : prefix) p.push_back(z(v));
  for (const auto v : cycle) c.push_back(z(v));
  return EPSeq(testutil::ints(), std::move(p), std::move(c));
}

}  // namespace

TEST_CASE("sequence canonicalization folds repeated cycles") {
  const EPSeq folded = iseq({}, {4, 7, 4, 7});
  CHECK(folded.cycle().size() == 2);
  CHECK(folded == iseq({}, {4, 7}));
  CHECK(EPSeq::constant(q(3)).cycle().size() == 1);
}

TEST_CASE("sequence canonicalization rebases redundant prefixes") {
  // x, y, x, y, ... is the pure cycle [x, y] even when written with a prefix
  const EPSeq rotated = iseq({5}, {6, 5});
  CHECK(rotated.prefix().empty());
  CHECK(rotated.cycle().size() == 2);
  CHECK(rotated.value_at(0) == z(5));
  CHECK(rotated.value_at(1) == z(6));
  CHECK(rotated == iseq({}, {5, 6}));

  const EPSeq kept = iseq({9}, {6, 5});
  CHECK(kept.prefix().size() == 1);
}

TEST_CASE("values read the prefix then the cycle") {
  std::mt19937_64 g(11);
  for (int round = 0; round < 100; ++round) {
    std::vector<Element> prefix, cycle;
    const auto np = testutil::pick(g, 0, 4);
    const auto nc = 1 + testutil::pick(g, 0, 4);
    for (std::uint64_t i = 0; i < np; ++i) prefix.push_back(testutil::random_element(g, testutil::rats()));
    for (std::uint64_t i = 0; i < nc; ++i) cycle.push_back(testutil::random_element(g, testutil::rats()));
    const EPSeq s(testutil::rats(), prefix, cycle);
    for (std::uint64_t n = 0; n < np + 3 * nc; ++n) {
      const Element expect = n < np ? prefix[n] : cycle[(n - np) % nc];
      CHECK(s.value_at(n) == expect);
    }
  }
}

TEST_CASE("sequence construction validates carrier and cycle") {
  CHECK_THROWS_AS(EPSeq(testutil::ints(), {}, {q(1)}), DescriptorMismatchError);
  CHECK_THROWS_AS(EPSeq(testutil::ints(), {q(1)}, {z(1)}), DescriptorMismatchError);
  CHECK_THROWS_AS(EPSeq(testutil::ints(), {z(1)}, {}), PreconditionError);
}

TEST_CASE("index sets of the worked cycle pair") {
  const EPSeq a = iseq({}, {1, 2, 3});
  const EPSeq b = iseq({}, {3, 2, 1});
  CHECK(index_set_leq(a, b) == EPSet::make({}, 3, {0, 1}));
  CHECK(index_set_eq(a, b) == EPSet::residue_class(3, {1}));
  CHECK(index_set_lt(a, b) == EPSet::residue_class(3, {0}));
  CHECK(index_set(Relation::Leq, b, a) == EPSet::make({}, 3, {1, 2}));
}

TEST_CASE("index sets agree with pointwise evaluation") {
  std::mt19937_64 g(23);
  const std::vector<OrderedSetPtr> carriers = {testutil::rats(), testutil::ints(),
                                               OrderedSet::finite({"a", "b", "c"})};
  for (const auto& carrier : carriers) {
    for (int round = 0; round < 60; ++round) {
      const EPSeq a = testutil::random_seq(g, carrier);
      const EPSeq b = testutil::random_seq(g, carrier);
      for (const Relation rel : {Relation::Leq, Relation::Lt, Relation::Eq}) {
        const EPSet set = index_set(rel, a, b);
        for (std::uint64_t n = 0; n < 40; ++n) {
          CHECK(set.contains(n) == relation_holds(rel, a.value_at(n), b.value_at(n)));
        }
      }
    }
  }
}

TEST_CASE("index sets require a shared carrier") {
  CHECK_THROWS_AS(index_set_leq(iseq({}, {1}), EPSeq::constant(q(1))), DescriptorMismatchError);
}

TEST_CASE("class equality depends on the selector") {
  const EPSeq alternating = iseq({}, {0, 1});
  const auto a = HyperPoint::from_seq(alternating);
  const auto zero_const = HyperPoint::from_seq(iseq({}, {0}));
  CHECK(hyper_equal(kZero, a, zero_const));
  CHECK_FALSE(hyper_equal(kLast, a, zero_const));
  CHECK(hyper_compare(kLast, a, zero_const) == std::strong_ordering::greater);
}

TEST_CASE("comparison of the worked example") {
  const auto a = HyperPoint::from_seq(iseq({}, {0, 2}));
  const auto b = HyperPoint::from_seq(iseq({}, {1}));
  CHECK(hyper_compare(kZero, a, b) == std::strong_ordering::less);
  CHECK(hyper_compare(kLast, a, b) == std::strong_ordering::greater);
}

TEST_CASE("finite rewrites never move the class") {
  std::mt19937_64 g(37);
  for (int round = 0; round < 100; ++round) {
    const EPSeq a = testutil::random_seq(g, testutil::rats());
    const EPSeq b = testutil::random_seq(g, testutil::rats());
    std::vector<std::pair<std::uint64_t, Element>> changes;
    for (int i = 0; i < 3; ++i) {
      changes.emplace_back(testutil::pick(g, 0, 12), testutil::random_element(g, testutil::rats()));
    }
    const EPSeq a2 = testutil::with_mutations(a, changes);
    for (const auto* u : {&kZero, &kLast}) {
      CHECK(hyper_equal(*u, HyperPoint::from_seq(a), HyperPoint::from_seq(a2)));
      CHECK(hyper_compare(*u, HyperPoint::from_seq(a), HyperPoint::from_seq(b)) ==
            hyper_compare(*u, HyperPoint::from_seq(a2), HyperPoint::from_seq(b)));
    }
  }
}

TEST_CASE("rewrites on a rejected class keep equality, on an accepted class break it") {
  std::mt19937_64 g(43);
  for (int round = 0; round < 100; ++round) {
    const EPSeq a = testutil::random_seq(g, testutil::ints());
    const std::uint64_t p = 2 + testutil::pick(g, 0, 4);
    const std::uint64_t r = testutil::pick(g, 0, p - 1);
    // a value outside the range random_seq draws from
    const Element foreign = z(1000);
    const EPSeq changed = testutil::mutate_on_class(a, p, r, foreign);
    const bool rejected = !kZero.decide(EPSet::residue_class(p, {r}));
    CHECK(hyper_equal(kZero, HyperPoint::from_seq(a), HyperPoint::from_seq(changed)) == rejected);
  }
}

TEST_CASE("hyper order is total, antisymmetric, and transitive") {
  std::mt19937_64 g(53);
  const std::vector<OrderedSetPtr> carriers = {testutil::rats(), testutil::ints(),
                                               OrderedSet::finite({"a", "b", "c"})};
  for (const auto& carrier : carriers) {
    for (int round = 0; round < 70; ++round) {
      const auto a = HyperPoint::from_seq(testutil::random_seq(g, carrier));
      const auto b = HyperPoint::from_seq(testutil::random_seq(g, carrier));
      const auto c = HyperPoint::from_seq(testutil::random_seq(g, carrier));
      const auto ab = hyper_compare(kZero, a, b);
      const auto ba = hyper_compare(kZero, b, a);
      CHECK((ab == 0 ? ba == 0 : ab != ba));
      CHECK((ab == 0) == hyper_equal(kZero, a, b));
      if (ab != std::strong_ordering::greater &&
          hyper_compare(kZero, b, c) != std::strong_ordering::greater) {
        CHECK(hyper_compare(kZero, a, c) != std::strong_ordering::greater);
      }
      // the verdict is exactly the decision on the matching index set
      const auto& sa = a.seq();
      const auto& sb = b.seq();
      if (ab == std::strong_ordering::less) CHECK(kZero.decide(index_set_lt(sa, sb)));
      if (ab == std::strong_ordering::equal) CHECK(kZero.decide(index_set_eq(sa, sb)));
      if (ab == std::strong_ordering::greater) CHECK(kZero.decide(index_set_lt(sb, sa)));
    }
  }
}

TEST_CASE("constant embedding is order preserving") {
  std::mt19937_64 g(61);
  for (int round = 0; round < 80; ++round) {
    const Element x = testutil::random_element(g, testutil::rats());
    const Element y = testutil::random_element(g, testutil::rats());
    const auto verdict = hyper_compare(kZero, embed_constant(x), embed_constant(y));
    CHECK(verdict == compare(x, y));
  }
}

TEST_CASE("opaque points refuse decisions without certificates") {
  const auto f = [](std::uint64_t n) { return testutil::z(static_cast<std::int64_t>(n)); };
  const auto p = HyperPoint::opaque(f, 50, testutil::ints(), "ramp");
  CHECK_FALSE(p.is_ep());
  CHECK(p.value_at(3) == z(3));
  CHECK(p.sampling_bound() == 50);
  CHECK_THROWS_AS(p.value_at(51), PreconditionError);
  CHECK_THROWS_AS(p.seq(), PreconditionError);
  CHECK_THROWS_AS(hyper_compare(kZero, p, embed_constant(z(0))), PreconditionError);
  CHECK_THROWS_AS(hyper_equal(kZero, p, p), PreconditionError);

  const auto wrong = HyperPoint::opaque([](std::uint64_t) { return testutil::q(1); }, 10,
                                        testutil::ints(), "mismatch");
  CHECK_THROWS_AS(wrong.value_at(0), DescriptorMismatchError);
}

TEST_CASE("sample indices walk the prefix then the selected class") {
  const EPSet support = EPSet::make({true, true, false, false}, 3, {0});
  const auto idx = certificate_sample_indices(kZero, support, 100);
  CHECK(idx == std::vector<std::uint64_t>{0, 1, 6, 9, 12});
  const auto clipped = certificate_sample_indices(kZero, support, 7);
  CHECK(clipped == std::vector<std::uint64_t>{0, 1, 6});
  const auto pure = certificate_sample_indices(kZero, EPSet::residue_class(3, {0}), 100);
  CHECK(pure == std::vector<std::uint64_t>{0, 3, 6});
  for (const auto n : idx) CHECK(support.contains(n));
}

TEST_CASE("exact certificates decide on the whole support") {
  const auto one = embed_constant(z(1));
  const auto zero_pt = embed_constant(z(0));

  const Certificate good{Relation::Leq, zero_pt, one, EPSet::naturals(), "good"};
  const auto report = verify_certificate(kZero, good);
  CHECK(report.verified());
  CHECK(report.exact);
  CHECK_FALSE(report.sampling_bound_applied.has_value());
  CHECK_NOTHROW(compare_with_certificate(kZero, good));

  // claim false everywhere: first violation is index 0
  const Certificate bad{Relation::Leq, one, zero_pt, EPSet::naturals(), "bad"};
  const auto bad_report = verify_certificate(kZero, bad);
  CHECK_FALSE(bad_report.verified());
  CHECK(bad_report.support_accepted);
  CHECK(bad_report.violation_index == 0);
  CHECK_THROWS_AS(compare_with_certificate(kZero, bad), FalsifiedCertificateError);
  try {
    compare_with_certificate(kZero, bad);
  } catch (const FalsifiedCertificateError& e) {
    CHECK(e.index == 0);
  }
}

TEST_CASE("support outside the trace invalidates the certificate") {
  const Certificate cert{Relation::Leq, embed_constant(z(0)), embed_constant(z(1)),
                         EPSet::residue_class(2, {1}), "odd-support"};
  const auto report = verify_certificate(kZero, cert);
  CHECK_FALSE(report.verified());
  CHECK_FALSE(report.support_accepted);
  CHECK_THROWS_AS(compare_with_certificate(kZero, cert), InvalidCertificateError);
}

TEST_CASE("accepted support with a pointwise gap is falsified at its first index") {
  // eq holds only on evens; claiming it on all of N fails first at 1
  const EPSeq alternating = iseq({}, {0, 1});
  const Certificate cert{Relation::Eq, HyperPoint::from_seq(alternating),
                         embed_constant(z(0)), EPSet::naturals(), "everywhere"};
  try {
    compare_with_certificate(kZero, cert);
    CHECK(false);
  } catch (const FalsifiedCertificateError& e) {
    CHECK(e.index == 1);
  }
}

TEST_CASE("sampled certificates check the declared indices") {
  const EPSeq ramp_down = iseq({}, {0});
  const auto opaque = HyperPoint::opaque(
      [](std::uint64_t n) { return testutil::z(n % 3 == 0 ? 5 : -5); }, 60, testutil::ints(),
      "spikes");

  const Certificate good{Relation::Leq, HyperPoint::from_seq(ramp_down), opaque,
                         EPSet::residue_class(3, {0}), "on-spikes"};
  const auto report = verify_certificate(kZero, good);
  CHECK(report.verified());
  CHECK_FALSE(report.exact);
  CHECK(report.sampling_bound_applied == 60);
  CHECK(report.checked_indices == std::vector<std::uint64_t>{0, 3, 6});

  const Certificate bad{Relation::Lt, opaque, HyperPoint::from_seq(ramp_down),
                        EPSet::residue_class(3, {0}), "backwards"};
  try {
    compare_with_certificate(kZero, bad);
    CHECK(false);
  } catch (const FalsifiedCertificateError& e) {
    CHECK(e.index == 0);
  }
}

TEST_CASE("certificates reject mismatched carriers") {
  const Certificate cert{Relation::Leq, embed_constant(z(0)), embed_constant(q(1)),
                         EPSet::naturals(), "cross"};
  CHECK_THROWS_AS(verify_certificate(kZero, cert), DescriptorMismatchError);
}
