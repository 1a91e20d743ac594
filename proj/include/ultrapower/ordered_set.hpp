#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ultrapower/numeric.hpp"

namespace ultrapower {

class OrderedSet;
using OrderedSetPtr = std::shared_ptr<const OrderedSet>;

enum class SetKind { Finite, Integers, Rationals, LexProduct };

/// Descriptor of a linearly ordered carrier. Immutable and shared by the
/// elements living in it. The supported carriers are finite label lists
/// (ordered by list position), the integers, the rationals, and
/// lexicographic products of two carriers.
class OrderedSet {
public:
  static OrderedSetPtr finite(std::vector<std::string> labels);
  static OrderedSetPtr integers();
  static OrderedSetPtr rationals();
  static OrderedSetPtr lex_product(OrderedSetPtr left, OrderedSetPtr right);

  SetKind kind() const { return kind_; }
  // Finite only.
  const std::vector<std::string>& labels() const;
  std::size_t finite_size() const { return labels().size(); }
  // LexProduct only.
  const OrderedSetPtr& left() const;
  const OrderedSetPtr& right() const;

  std::string describe() const;

private:
  explicit OrderedSet(SetKind kind) : kind_(kind) {}

  SetKind kind_;
  std::vector<std::string> labels_;
  OrderedSetPtr left_;
  OrderedSetPtr right_;
};

// Structural identity of carriers. Elements interoperate exactly when their
// descriptors agree under this relation.
bool same_order(const OrderedSet& a, const OrderedSet& b);
bool same_order(const OrderedSetPtr& a, const OrderedSetPtr& b);

/// One element of a carrier. The payload variant matches the descriptor
/// kind: an index into the finite label list, an exact integer, an exact
/// rational, or a pair of elements of the factor carriers.
class Element {
public:
  static Element finite(OrderedSetPtr set, std::size_t index);
  static Element of_int(OrderedSetPtr set, Int value);
  static Element of_rat(OrderedSetPtr set, Rat value);
  static Element pair(OrderedSetPtr set, Element first, Element second);

  const OrderedSetPtr& set() const { return set_; }

  std::size_t finite_index() const;
  const Int& int_value() const;
  const Rat& rat_value() const;
  const Element& first() const;
  const Element& second() const;
  const std::string& label() const;  // Finite only

  std::string to_string() const;

private:
  struct LexPair {
    std::shared_ptr<const Element> first;
    std::shared_ptr<const Element> second;
  };

  Element(OrderedSetPtr set, std::variant<std::size_t, Int, Rat, LexPair> value)
      : set_(std::move(set)), value_(std::move(value)) {}

  OrderedSetPtr set_;
  std::variant<std::size_t, Int, Rat, LexPair> value_;
};

// Total order on a shared carrier; throws DescriptorMismatchError when the
// carriers differ. Lex products compare the first coordinate, then the
// second.
std::strong_ordering compare(const Element& a, const Element& b);

inline bool operator==(const Element& a, const Element& b) {
  return compare(a, b) == std::strong_ordering::equal;
}
inline bool operator<(const Element& a, const Element& b) {
  return compare(a, b) == std::strong_ordering::less;
}
inline bool operator<=(const Element& a, const Element& b) {
  return compare(a, b) != std::strong_ordering::greater;
}

// Structural order predicates. The lex product rule implemented here:
// writing the product as L x R,
//   (1) when R has two or more elements, R must be dense, and
//   (2) when L has two or more elements, R must lack a maximum or lack a
//       minimum, or L itself must be dense.
// Both conditions together are equivalent to density of the product, and
// adjacent_pair below returns a witnessing empty interval whenever either
// fails.
bool is_dense(const OrderedSetPtr& set);
bool has_minimum(const OrderedSetPtr& set);
bool has_maximum(const OrderedSetPtr& set);
bool has_two_elements(const OrderedSetPtr& set);

Element minimum_element(const OrderedSetPtr& set);  // throws when absent
Element maximum_element(const OrderedSetPtr& set);  // throws when absent

// A fixed representative element, used when any value of the carrier will
// do: first label, 0, 0/1, or the pair of representatives.
Element canonical_element(const OrderedSetPtr& set);

// Some element strictly above (below) the given one, when one exists.
std::optional<Element> any_greater(const Element& x);
std::optional<Element> any_less(const Element& x);

// Deterministic interior point of ]a,b[. Rationals take the midpoint in
// lowest terms; lex products recurse per the density rule above. Throws
// PreconditionError when the carrier is not dense or a >= b.
Element density_pick(const Element& a, const Element& b);

// Adjacent pair p < q with empty open interval ]p,q[, exactly when the
// carrier is not dense.
std::optional<std::pair<Element, Element>> adjacent_pair(const OrderedSetPtr& set);

enum class MonotoneDirection { Longest, NonDecreasing, NonIncreasing };

// Indices of a longest monotone subsequence, strictly monotone when
// want_strict is set (which then requires pairwise distinct inputs). The
// result length is at least ceil(sqrt(n)). Direction Longest returns
// whichever direction wins, preferring the non-decreasing one on ties.
std::vector<std::size_t> monotone_subsequence(std::span<const Element> xs, bool want_strict,
                                              MonotoneDirection direction = MonotoneDirection::Longest);

}  // namespace ultrapower
