#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ultrapower {

// Alignment of two eventually periodic sets costs lcm of their periods.
// Operations refuse to materialize windows beyond this cap.
inline constexpr std::uint64_t kDefaultPeriodCap = 10'000;

// Subset of the naturals that is periodic from some offset on: n < prefix_len
// is a member iff prefix_bits[n], and n >= prefix_len is a member iff
// n mod period lands in the residue set.
//
// Values are kept canonical: the period is the minimal one for the eventual
// part and the prefix is the shortest one after which membership is periodic.
// Two EPSets denote the same subset of the naturals iff they compare equal.
class EPSet {
 public:
  static EPSet make(std::vector<bool> prefix_bits, std::uint64_t period,
                    const std::vector<std::uint64_t>& residues);
  static EPSet naturals();
  static EPSet empty_set();
  static EPSet finite_set(const std::vector<std::uint64_t>& members);
  static EPSet cofinite_excluding(const std::vector<std::uint64_t>& holes);
  static EPSet residue_class(std::uint64_t modulus, std::uint64_t residue);
  // {n : n >= bound}
  static EPSet at_least(std::uint64_t bound);

  bool contains(std::uint64_t n) const;
  bool is_empty() const;
  bool is_finite() const;
  bool is_infinite() const { return !is_finite(); }
  bool is_cofinite() const;

  std::uint64_t prefix_len() const { return prefix_.size(); }
  std::uint64_t period() const { return tail_.size(); }
  const std::vector<bool>& prefix_bits() const { return prefix_; }
  // Eventual membership indexed by absolute residue: for n >= prefix_len,
  // contains(n) == tail_bits()[n % period()].
  const std::vector<bool>& tail_bits() const { return tail_; }
  std::vector<std::uint64_t> residues() const;

  std::optional<std::uint64_t> first_element() const;

  bool operator==(const EPSet&) const = default;

 private:
  EPSet() = default;
  void canonicalize();

  std::vector<bool> prefix_;
  std::vector<bool> tail_;
};

EPSet complement(const EPSet& k);
EPSet intersection(const EPSet& k, const EPSet& l,
                   std::uint64_t period_cap = kDefaultPeriodCap);
EPSet union_of(const EPSet& k, const EPSet& l,
               std::uint64_t period_cap = kDefaultPeriodCap);
EPSet difference(const EPSet& k, const EPSet& l,
                 std::uint64_t period_cap = kDefaultPeriodCap);
// true iff l is a subset of k
bool is_superset(const EPSet& k, const EPSet& l,
                 std::uint64_t period_cap = kDefaultPeriodCap);

// lcm(a, b) if it stays within cap, otherwise ResourceError.
std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap);

}  // namespace ultrapower
