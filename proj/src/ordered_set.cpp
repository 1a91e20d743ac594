#include "ultrapower/ordered_set.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ultrapower/error.hpp"

namespace ultrapower {

OrderedSetPtr OrderedSet::finite(std::vector<std::string> labels) {
  if (labels.empty()) {
    throw PreconditionError("finite carrier needs at least one element");
  }
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw PreconditionError("duplicate label '" + label + "' in finite carrier");
    }
  }
  auto set = std::shared_ptr<OrderedSet>(new OrderedSet(SetKind::Finite));
  set->labels_ = std::move(labels);
  return set;
}

OrderedSetPtr OrderedSet::integers() {
  static const OrderedSetPtr instance(new OrderedSet(SetKind::Integers));
  return instance;
}

OrderedSetPtr OrderedSet::rationals() {
  static const OrderedSetPtr instance(new OrderedSet(SetKind::Rationals));
  return instance;
}

OrderedSetPtr OrderedSet::lex_product(OrderedSetPtr left, OrderedSetPtr right) {
  if (!left || !right) {
    throw PreconditionError("lex product factors must be present");
  }
  auto set = std::shared_ptr<OrderedSet>(new OrderedSet(SetKind::LexProduct));
  set->left_ = std::move(left);
  set->right_ = std::move(right);
  return set;
}

const std::vector<std::string>& OrderedSet::labels() const {
  if (kind_ != SetKind::Finite) {
    throw PreconditionError("labels() requires a finite carrier");
  }
  return labels_;
}

const OrderedSetPtr& OrderedSet::left() const {
  if (kind_ != SetKind::LexProduct) {
    throw PreconditionError("left() requires a lex product");
  }
  return left_;
}

const OrderedSetPtr& OrderedSet::right() const {
  if (kind_ != SetKind::LexProduct) {
    throw PreconditionError("right() requires a lex product");
  }
  return right_;
}

std::string OrderedSet::describe() const {
  switch (kind_) {
    case SetKind::Integers:
      return "integers";
    case SetKind::Rationals:
      return "rationals";
    case SetKind::Finite: {
      std::ostringstream out;
      out << "finite{";
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (i) out << "<";
        out << labels_[i];
      }
      out << "}";
      return out.str();
    }
    case SetKind::LexProduct:
      return "lex(" + left_->describe() + ", " + right_->describe() + ")";
  }
  return "?";
}

bool same_order(const OrderedSet& a, const OrderedSet& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SetKind::Integers:
    case SetKind::Rationals:
      return true;
    case SetKind::Finite:
      return a.labels() == b.labels();
    case SetKind::LexProduct:
      return same_order(*a.left(), *b.left()) && same_order(*a.right(), *b.right());
  }
  return false;
}

bool same_order(const OrderedSetPtr& a, const OrderedSetPtr& b) {
  if (!a || !b) return false;
  return same_order(*a, *b);
}

namespace {

void require_kind(const OrderedSetPtr& set, SetKind kind, const char* what) {
  if (!set) throw PreconditionError("element without a carrier");
  if (set->kind() != kind) {
    throw DescriptorMismatchError(std::string(what) + " does not match carrier " + set->describe());
  }
}

}  // namespace

Element Element::finite(OrderedSetPtr set, std::size_t index) {
  require_kind(set, SetKind::Finite, "finite index");
  if (index >= set->finite_size()) {
    throw PreconditionError("label index out of range for " + set->describe());
  }
  return Element(std::move(set), index);
}

Element Element::of_int(OrderedSetPtr set, Int value) {
  require_kind(set, SetKind::Integers, "integer value");
  return Element(std::move(set), std::move(value));
}

Element Element::of_rat(OrderedSetPtr set, Rat value) {
  require_kind(set, SetKind::Rationals, "rational value");
  return Element(std::move(set), std::move(value));
}

Element Element::pair(OrderedSetPtr set, Element first, Element second) {
  require_kind(set, SetKind::LexProduct, "pair value");
  if (!same_order(set->left(), first.set()) || !same_order(set->right(), second.set())) {
    throw DescriptorMismatchError("pair coordinates do not match the factors of " + set->describe());
  }
  LexPair pair{std::make_shared<const Element>(std::move(first)),
               std::make_shared<const Element>(std::move(second))};
  return Element(std::move(set), std::move(pair));
}

std::size_t Element::finite_index() const {
  if (const auto* index = std::get_if<std::size_t>(&value_)) return *index;
  throw PreconditionError("not a finite-carrier element");
}

const Int& Element::int_value() const {
  if (const auto* value = std::get_if<Int>(&value_)) return *value;
  throw PreconditionError("not an integer element");
}

const Rat& Element::rat_value() const {
  if (const auto* value = std::get_if<Rat>(&value_)) return *value;
  throw PreconditionError("not a rational element");
}

const Element& Element::first() const {
  if (const auto* pair = std::get_if<LexPair>(&value_)) return *pair->first;
  throw PreconditionError("not a lex pair element");
}

const Element& Element::second() const {
  if (const auto* pair = std::get_if<LexPair>(&value_)) return *pair->second;
  throw PreconditionError("not a lex pair element");
}

const std::string& Element::label() const { return set_->labels()[finite_index()]; }

std::string Element::to_string() const {
  switch (set_->kind()) {
    case SetKind::Finite:
      return label();
    case SetKind::Integers:
      return format_int(int_value());
    case SetKind::Rationals:
      return format_rat(rat_value());
    case SetKind::LexProduct:
      return "(" + first().to_string() + ", " + second().to_string() + ")";
  }
  return "?";
}

std::strong_ordering compare(const Element& a, const Element& b) {
  if (!same_order(a.set(), b.set())) {
    throw DescriptorMismatchError("cannot compare elements of " + a.set()->describe() + " and " +
                                  b.set()->describe());
  }
  switch (a.set()->kind()) {
    case SetKind::Finite:
      return a.finite_index() <=> b.finite_index();
    case SetKind::Integers: {
      const auto& x = a.int_value();
      const auto& y = b.int_value();
      if (x < y) return std::strong_ordering::less;
      if (y < x) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case SetKind::Rationals: {
      const auto& x = a.rat_value();
      const auto& y = b.rat_value();
      if (x < y) return std::strong_ordering::less;
      if (y < x) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case SetKind::LexProduct: {
      const auto head = compare(a.first(), b.first());
      if (head != std::strong_ordering::equal) return head;
      return compare(a.second(), b.second());
    }
  }
  throw PreconditionError("unknown carrier kind");
}

bool has_two_elements(const OrderedSetPtr& set) {
  switch (set->kind()) {
    case SetKind::Finite:
      return set->finite_size() >= 2;
    case SetKind::Integers:
    case SetKind::Rationals:
      return true;
    case SetKind::LexProduct:
      return has_two_elements(set->left()) || has_two_elements(set->right());
  }
  return false;
}

bool has_minimum(const OrderedSetPtr& set) {
  switch (set->kind()) {
    case SetKind::Finite:
      return true;
    case SetKind::Integers:
    case SetKind::Rationals:
      return false;
    case SetKind::LexProduct:
      return has_minimum(set->left()) && has_minimum(set->right());
  }
  return false;
}

bool has_maximum(const OrderedSetPtr& set) {
  switch (set->kind()) {
    case SetKind::Finite:
      return true;
    case SetKind::Integers:
    case SetKind::Rationals:
      return false;
    case SetKind::LexProduct:
      return has_maximum(set->left()) && has_maximum(set->right());
  }
  return false;
}

bool is_dense(const OrderedSetPtr& set) {
  switch (set->kind()) {
    case SetKind::Finite:
      // A singleton is vacuously dense: no pair a < b exists.
      return set->finite_size() <= 1;
    case SetKind::Integers:
      return false;
    case SetKind::Rationals:
      return true;
    case SetKind::LexProduct: {
      const auto& l = set->left();
      const auto& r = set->right();
      const bool inner_ok = !has_two_elements(r) || is_dense(r);
      const bool outer_ok =
          !has_two_elements(l) || !has_maximum(r) || !has_minimum(r) || is_dense(l);
      return inner_ok && outer_ok;
    }
  }
  return false;
}

Element minimum_element(const OrderedSetPtr& set) {
  switch (set->kind()) {
    case SetKind::Finite:
      return Element::finite(set, 0);
    case SetKind::LexProduct:
      return Element::pair(set, minimum_element(set->left()), minimum_element(set->right()));
    default:
      throw PreconditionError(set->describe() + " has no minimum");
  }
}

Element maximum_element(const OrderedSetPtr& set) {
  switch (set->kind()) {
    case SetKind::Finite:
      return Element::finite(set, set->finite_size() - 1);
    case SetKind::LexProduct:
      return Element::pair(set, maximum_element(set->left()), maximum_element(set->right()));
    default:
      throw PreconditionError(set->describe() + " has no maximum");
  }
}

Element canonical_element(const OrderedSetPtr& set) {
  switch (set->kind()) {
    case SetKind::Finite:
      return Element::finite(set, 0);
    case SetKind::Integers:
      return Element::of_int(set, Int(0));
    case SetKind::Rationals:
      return Element::of_rat(set, Rat(0));
    case SetKind::LexProduct:
      return Element::pair(set, canonical_element(set->left()), canonical_element(set->right()));
  }
  throw PreconditionError("unknown carrier kind");
}

std::optional<Element> any_greater(const Element& x) {
  const auto& set = x.set();
  switch (set->kind()) {
    case SetKind::Finite: {
      const std::size_t index = x.finite_index();
      if (index + 1 < set->finite_size()) return Element::finite(set, index + 1);
      return std::nullopt;
    }
    case SetKind::Integers:
      return Element::of_int(set, x.int_value() + 1);
    case SetKind::Rationals:
      return Element::of_rat(set, x.rat_value() + 1);
    case SetKind::LexProduct: {
      if (auto above = any_greater(x.second())) {
        return Element::pair(set, x.first(), std::move(*above));
      }
      if (auto head = any_greater(x.first())) {
        return Element::pair(set, std::move(*head), canonical_element(set->right()));
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<Element> any_less(const Element& x) {
  const auto& set = x.set();
  switch (set->kind()) {
    case SetKind::Finite: {
      const std::size_t index = x.finite_index();
      if (index > 0) return Element::finite(set, index - 1);
      return std::nullopt;
    }
    case SetKind::Integers:
      return Element::of_int(set, x.int_value() - 1);
    case SetKind::Rationals:
      return Element::of_rat(set, x.rat_value() - 1);
    case SetKind::LexProduct: {
      if (auto below = any_less(x.second())) {
        return Element::pair(set, x.first(), std::move(*below));
      }
      if (auto head = any_less(x.first())) {
        return Element::pair(set, std::move(*head), canonical_element(set->right()));
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Element density_pick(const Element& a, const Element& b) {
  const auto& set = a.set();
  if (!same_order(set, b.set())) {
    throw DescriptorMismatchError("density pick across different carriers");
  }
  if (!is_dense(set)) {
    throw PreconditionError("no interior point: " + set->describe() + " is not dense");
  }
  if (compare(a, b) != std::strong_ordering::less) {
    throw PreconditionError("no interior point: interval bounds are not strictly ordered");
  }
  switch (set->kind()) {
    case SetKind::Rationals:
      return Element::of_rat(set, (a.rat_value() + b.rat_value()) / 2);
    case SetKind::LexProduct: {
      const auto head = compare(a.first(), b.first());
      if (head == std::strong_ordering::equal) {
        return Element::pair(set, a.first(), density_pick(a.second(), b.second()));
      }
      if (auto above = any_greater(a.second())) {
        return Element::pair(set, a.first(), std::move(*above));
      }
      if (auto below = any_less(b.second())) {
        return Element::pair(set, b.first(), std::move(*below));
      }
      return Element::pair(set, density_pick(a.first(), b.first()),
                           canonical_element(set->right()));
    }
    default:
      // Dense non-product carriers are exactly the rationals and singleton
      // finite sets; the latter admit no a < b, so this is unreachable.
      throw PreconditionError("no interior point available in " + set->describe());
  }
}

std::optional<std::pair<Element, Element>> adjacent_pair(const OrderedSetPtr& set) {
  switch (set->kind()) {
    case SetKind::Finite:
      if (set->finite_size() >= 2) {
        return std::make_pair(Element::finite(set, 0), Element::finite(set, 1));
      }
      return std::nullopt;
    case SetKind::Integers:
      return std::make_pair(Element::of_int(set, Int(0)), Element::of_int(set, Int(1)));
    case SetKind::Rationals:
      return std::nullopt;
    case SetKind::LexProduct: {
      const auto& l = set->left();
      const auto& r = set->right();
      if (has_two_elements(r) && !is_dense(r)) {
        auto inner = adjacent_pair(r);
        const Element head = canonical_element(l);
        return std::make_pair(Element::pair(set, head, inner->first),
                              Element::pair(set, head, inner->second));
      }
      if (has_two_elements(l) && has_maximum(r) && has_minimum(r) && !is_dense(l)) {
        auto outer = adjacent_pair(l);
        return std::make_pair(Element::pair(set, outer->first, maximum_element(r)),
                              Element::pair(set, outer->second, minimum_element(r)));
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

// Longest chain by quadratic dynamic programming; fine at window scale.
std::vector<std::size_t> longest_chain(std::span<const Element> xs, bool strict, bool increasing) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> best(n, 1);
  std::vector<std::size_t> prev(n, n);
  std::size_t arg_best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto order = compare(xs[j], xs[i]);
      const bool ok = increasing ? (strict ? order == std::strong_ordering::less
                                           : order != std::strong_ordering::greater)
                                 : (strict ? order == std::strong_ordering::greater
                                           : order != std::strong_ordering::less);
      if (ok && best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
        prev[i] = j;
      }
    }
    if (best[i] > best[arg_best]) arg_best = i;
  }
  std::vector<std::size_t> indices;
  for (std::size_t i = arg_best; i != n; i = prev[i]) {
    indices.push_back(i);
    if (prev[i] == n) break;
  }
  std::reverse(indices.begin(), indices.end());
  return indices;
}

}  // namespace

std::vector<std::size_t> monotone_subsequence(std::span<const Element> xs, bool want_strict,
                                              MonotoneDirection direction) {
  if (xs.empty()) {
    throw PreconditionError("monotone subsequence of an empty list");
  }
  if (want_strict) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        if (compare(xs[i], xs[j]) == std::strong_ordering::equal) {
          throw PreconditionError("strict mode requires pairwise distinct entries");
        }
      }
    }
  }
  switch (direction) {
    case MonotoneDirection::NonDecreasing:
      return longest_chain(xs, want_strict, true);
    case MonotoneDirection::NonIncreasing:
      return longest_chain(xs, want_strict, false);
    case MonotoneDirection::Longest: {
      auto up = longest_chain(xs, want_strict, true);
      auto down = longest_chain(xs, want_strict, false);
      return down.size() > up.size() ? down : up;
    }
  }
  throw PreconditionError("unknown direction");
}

}  // namespace ultrapower
