#include "ultrapower/hyper.hpp"

#include <algorithm>

#include "ultrapower/error.hpp"

namespace ultrapower {

namespace {

// (a - b) mod d for unsigned arguments
std::uint64_t mod_diff(std::uint64_t a, std::uint64_t b, std::uint64_t d) {
  return (a % d + d - b % d) % d;
}

}  // namespace

EPSeq::EPSeq(OrderedSetPtr set, std::vector<Element> prefix, std::vector<Element> cycle)
    : set_(std::move(set)), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (!set_) throw PreconditionError("sequence without a carrier");
  if (cycle_.empty()) throw PreconditionError("sequence cycle must be non-empty");
  for (const Element& x : prefix_) {
    if (!same_order(x.set(), set_)) {
      throw DescriptorMismatchError("sequence entry does not belong to " + set_->describe());
    }
  }
  for (const Element& x : cycle_) {
    if (!same_order(x.set(), set_)) {
      throw DescriptorMismatchError("sequence entry does not belong to " + set_->describe());
    }
  }
  canonicalize();
}

void EPSeq::canonicalize() {
  const std::size_t p = cycle_.size();
  std::size_t d = p;
  for (std::size_t cand = 1; cand + cand <= p; ++cand) {
    if (p % cand) continue;
    bool folds = true;
    for (std::size_t i = cand; i < p && folds; ++i) folds = cycle_[i] == cycle_[i % cand];
    if (folds) {
      d = cand;
      break;
    }
  }
  if (d != p) cycle_.resize(d, cycle_.front());
  // Dropping the last prefix entry shifts the cycle's phase back by one, so
  // membership of that entry in the eventual part is tested at phase -1
  // relative to the current base offset.
  const std::size_t base = prefix_.size();
  std::size_t keep = base;
  while (keep > 0 && prefix_[keep - 1] == cycle_[mod_diff(keep - 1, base, d)]) --keep;
  if (keep != base) {
    std::vector<Element> rebased;
    rebased.reserve(d);
    for (std::size_t i = 0; i < d; ++i) rebased.push_back(cycle_[mod_diff(keep + i, base, d)]);
    cycle_ = std::move(rebased);
    prefix_.resize(keep, cycle_.front());
  }
}

EPSeq EPSeq::constant(Element value) {
  OrderedSetPtr set = value.set();
  return EPSeq(std::move(set), {}, {std::move(value)});
}

Element EPSeq::value_at(std::uint64_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return cycle_[(n - prefix_.size()) % cycle_.size()];
}

bool EPSeq::operator==(const EPSeq& other) const {
  return same_order(set_, other.set_) && prefix_ == other.prefix_ && cycle_ == other.cycle_;
}

HyperPoint HyperPoint::from_seq(EPSeq seq) {
  HyperPoint point(seq.set(), "ep");
  point.seq_ = std::move(seq);
  return point;
}

HyperPoint HyperPoint::opaque(std::function<Element(std::uint64_t)> values,
                              std::uint64_t sampling_bound, OrderedSetPtr set,
                              std::string description) {
  if (!values) throw PreconditionError("opaque point needs a value function");
  if (!set) throw PreconditionError("opaque point needs a carrier");
  HyperPoint point(std::move(set), std::move(description));
  point.values_ = std::make_shared<const std::function<Element(std::uint64_t)>>(std::move(values));
  point.bound_ = sampling_bound;
  return point;
}

const EPSeq& HyperPoint::seq() const {
  if (!seq_) throw PreconditionError("opaque point has no eventually periodic representative");
  return *seq_;
}

Element HyperPoint::value_at(std::uint64_t n) const {
  if (seq_) return seq_->value_at(n);
  if (n > bound_) {
    throw PreconditionError("index " + std::to_string(n) +
                            " is beyond the declared sampling bound " + std::to_string(bound_));
  }
  Element value = (*values_)(n);
  if (!same_order(value.set(), set_)) {
    throw DescriptorMismatchError("opaque point produced a value outside " + set_->describe());
  }
  return value;
}

std::string_view relation_name(Relation rel) {
  switch (rel) {
    case Relation::Leq:
      return "leq";
    case Relation::Lt:
      return "lt";
    case Relation::Eq:
      return "eq";
  }
  return "?";
}

bool relation_holds(Relation rel, const Element& a, const Element& b) {
  const auto order = compare(a, b);
  switch (rel) {
    case Relation::Leq:
      return order != std::strong_ordering::greater;
    case Relation::Lt:
      return order == std::strong_ordering::less;
    case Relation::Eq:
      return order == std::strong_ordering::equal;
  }
  return false;
}

EPSet index_set(Relation rel, const EPSeq& a, const EPSeq& b, std::uint64_t period_cap) {
  if (!same_order(a.set(), b.set())) {
    throw DescriptorMismatchError("sequences over different carriers have no joint index set");
  }
  const std::uint64_t n_prefix = std::max(a.prefix().size(), b.prefix().size());
  const std::uint64_t p = checked_lcm(a.cycle().size(), b.cycle().size(), period_cap);
  std::vector<bool> prefix(n_prefix);
  for (std::uint64_t n = 0; n < n_prefix; ++n) {
    prefix[n] = relation_holds(rel, a.value_at(n), b.value_at(n));
  }
  std::vector<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < p; ++r) {
    const std::uint64_t n = n_prefix + mod_diff(r, n_prefix, p);
    if (relation_holds(rel, a.value_at(n), b.value_at(n))) residues.push_back(r);
  }
  return EPSet::make(std::move(prefix), p, residues);
}

EPSet index_set_leq(const EPSeq& a, const EPSeq& b, std::uint64_t period_cap) {
  return index_set(Relation::Leq, a, b, period_cap);
}

EPSet index_set_lt(const EPSeq& a, const EPSeq& b, std::uint64_t period_cap) {
  return index_set(Relation::Lt, a, b, period_cap);
}

EPSet index_set_eq(const EPSeq& a, const EPSeq& b, std::uint64_t period_cap) {
  return index_set(Relation::Eq, a, b, period_cap);
}

namespace {

void require_ep(const HyperPoint& point) {
  if (!point.is_ep()) {
    throw PreconditionError(
        "comparison involving an opaque point is undecidable without a certificate");
  }
}

}  // namespace

bool hyper_equal(const UltrafilterTrace& u, const HyperPoint& a, const HyperPoint& b,
                 std::uint64_t period_cap) {
  require_ep(a);
  require_ep(b);
  return u.decide(index_set_eq(a.seq(), b.seq(), period_cap));
}

std::strong_ordering hyper_compare(const UltrafilterTrace& u, const HyperPoint& a,
                                   const HyperPoint& b, std::uint64_t period_cap) {
  require_ep(a);
  require_ep(b);
  if (u.decide(index_set_eq(a.seq(), b.seq(), period_cap))) return std::strong_ordering::equal;
  if (u.decide(index_set_lt(a.seq(), b.seq(), period_cap))) return std::strong_ordering::less;
  return std::strong_ordering::greater;
}

HyperPoint embed_constant(Element value) {
  return HyperPoint::from_seq(EPSeq::constant(std::move(value)));
}

std::vector<std::uint64_t> certificate_sample_indices(const UltrafilterTrace& u,
                                                      const EPSet& support, std::uint64_t bound) {
  std::vector<std::uint64_t> indices;
  const std::uint64_t n_prefix = support.prefix_len();
  for (std::uint64_t n = 0; n < n_prefix; ++n) {
    if (support.contains(n) && n <= bound) indices.push_back(n);
  }
  const std::uint64_t p = support.period();
  const std::uint64_t r = u.selector().residue_for(p);
  if (support.tail_bits()[r]) {
    const std::uint64_t first = n_prefix + (r % p + p - n_prefix % p) % p;
    for (std::uint64_t i = 0; i < 3; ++i) {
      const std::uint64_t n = first + i * p;
      if (n <= bound) indices.push_back(n);
    }
  }
  return indices;
}

CertificateReport verify_certificate(const UltrafilterTrace& u, const Certificate& c,
                                     std::uint64_t period_cap) {
  if (!same_order(c.lhs.set(), c.rhs.set())) {
    throw DescriptorMismatchError("certificate sides live over different carriers");
  }
  CertificateReport report;
  report.support_accepted = u.decide(c.support);
  if (c.lhs.is_ep() && c.rhs.is_ep()) {
    report.exact = true;
    const EPSet valid = index_set(c.claim, c.lhs.seq(), c.rhs.seq(), period_cap);
    const EPSet bad = difference(c.support, valid, period_cap);
    if (!bad.is_empty()) report.violation_index = *bad.first_element();
    report.checked_indices =
        certificate_sample_indices(u, c.support, std::numeric_limits<std::uint64_t>::max());
  } else {
    const std::uint64_t bound = std::min(c.lhs.sampling_bound(), c.rhs.sampling_bound());
    report.sampling_bound_applied = bound;
    report.checked_indices = certificate_sample_indices(u, c.support, bound);
    for (const std::uint64_t n : report.checked_indices) {
      if (!relation_holds(c.claim, c.lhs.value_at(n), c.rhs.value_at(n))) {
        report.violation_index = n;
        break;
      }
    }
  }
  return report;
}

CertificateReport compare_with_certificate(const UltrafilterTrace& u, const Certificate& c,
                                           std::uint64_t period_cap) {
  CertificateReport report = verify_certificate(u, c, period_cap);
  const std::string tag = c.label.empty() ? std::string("certificate") : c.label;
  if (!report.support_accepted) {
    throw InvalidCertificateError(tag + ": support rejected by the ultrafilter trace");
  }
  if (report.violation_index) {
    throw FalsifiedCertificateError(
        tag + ": claim " + std::string(relation_name(c.claim)) + " fails at index " +
            std::to_string(*report.violation_index),
        *report.violation_index);
  }
  return report;
}

}  // namespace ultrapower
