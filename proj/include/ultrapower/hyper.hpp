#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ultrapower/epset.hpp"
#include "ultrapower/ordered_set.hpp"
#include "ultrapower/ultrafilter.hpp"

namespace ultrapower {

// Eventually periodic sequence over an ordered carrier: the value at n is
// prefix[n] for n < |prefix|, else cycle[(n - |prefix|) mod |cycle|].
// Kept canonical (minimal cycle, then minimal prefix), so two EPSeqs are
// pointwise equal as sequences iff they compare equal structurally.
class EPSeq {
 public:
  EPSeq(OrderedSetPtr set, std::vector<Element> prefix, std::vector<Element> cycle);
  static EPSeq constant(Element value);

  const OrderedSetPtr& set() const { return set_; }
  const std::vector<Element>& prefix() const { return prefix_; }
  const std::vector<Element>& cycle() const { return cycle_; }
  Element value_at(std::uint64_t n) const;

  bool operator==(const EPSeq& other) const;

 private:
  void canonicalize();

  OrderedSetPtr set_;
  std::vector<Element> prefix_;
  std::vector<Element> cycle_;
};

// A point of the ultrapower: either the class of an EPSeq, with decidable
// order against other such points, or an opaque sequence that only admits
// certificate-backed claims, sampled up to a declared index bound.
class HyperPoint {
 public:
  static HyperPoint from_seq(EPSeq seq);
  static HyperPoint opaque(std::function<Element(std::uint64_t)> values,
                           std::uint64_t sampling_bound, OrderedSetPtr set,
                           std::string description);

  bool is_ep() const { return seq_.has_value(); }
  const EPSeq& seq() const;
  const OrderedSetPtr& set() const { return set_; }
  Element value_at(std::uint64_t n) const;
  std::uint64_t sampling_bound() const { return bound_; }
  const std::string& description() const { return description_; }

 private:
  HyperPoint(OrderedSetPtr set, std::string description)
      : set_(std::move(set)), description_(std::move(description)) {}

  OrderedSetPtr set_;
  std::optional<EPSeq> seq_;
  std::shared_ptr<const std::function<Element(std::uint64_t)>> values_;
  std::uint64_t bound_ = std::numeric_limits<std::uint64_t>::max();
  std::string description_;
};

enum class Relation { Leq, Lt, Eq };

std::string_view relation_name(Relation rel);
bool relation_holds(Relation rel, const Element& a, const Element& b);

// The exact set {n : a_n rel b_n} as a canonical EPSet.
EPSet index_set(Relation rel, const EPSeq& a, const EPSeq& b,
                std::uint64_t period_cap = kDefaultPeriodCap);
EPSet index_set_leq(const EPSeq& a, const EPSeq& b,
                    std::uint64_t period_cap = kDefaultPeriodCap);
EPSet index_set_lt(const EPSeq& a, const EPSeq& b,
                   std::uint64_t period_cap = kDefaultPeriodCap);
EPSet index_set_eq(const EPSeq& a, const EPSeq& b,
                   std::uint64_t period_cap = kDefaultPeriodCap);

// Class equality and order. Both points must be ep-backed; opaque points
// only support certificate-carried claims.
bool hyper_equal(const UltrafilterTrace& u, const HyperPoint& a, const HyperPoint& b,
                 std::uint64_t period_cap = kDefaultPeriodCap);
std::strong_ordering hyper_compare(const UltrafilterTrace& u, const HyperPoint& a,
                                   const HyperPoint& b,
                                   std::uint64_t period_cap = kDefaultPeriodCap);

HyperPoint embed_constant(Element value);

// A hyper-order claim together with an index set meant to witness it
// pointwise. The claim holds in the ultrapower when the support is accepted
// by the trace and the relation holds at every index of the support.
struct Certificate {
  Relation claim;
  HyperPoint lhs;
  HyperPoint rhs;
  EPSet support;
  std::string label;
};

struct CertificateReport {
  bool support_accepted = false;
  // Exact runs decide the claim on the whole support symbolically; sampled
  // runs check prefix indices plus three points of the selected class, up to
  // the opaque side's declared bound.
  bool exact = false;
  std::vector<std::uint64_t> checked_indices;
  std::optional<std::uint64_t> violation_index;
  std::optional<std::uint64_t> sampling_bound_applied;

  bool verified() const { return support_accepted && !violation_index.has_value(); }
};

// Indices a sampled verification touches: every member index within the
// support's prefix, then the first three members of the selected residue
// class of the eventual part, all clipped to the bound.
std::vector<std::uint64_t> certificate_sample_indices(const UltrafilterTrace& u,
                                                      const EPSet& support, std::uint64_t bound);

// Checks a certificate and reports without throwing.
CertificateReport verify_certificate(const UltrafilterTrace& u, const Certificate& c,
                                     std::uint64_t period_cap = kDefaultPeriodCap);

// Same check, but a rejected support raises InvalidCertificateError and a
// pointwise violation raises FalsifiedCertificateError naming the index.
CertificateReport compare_with_certificate(const UltrafilterTrace& u, const Certificate& c,
                                           std::uint64_t period_cap = kDefaultPeriodCap);

}  // namespace ultrapower
