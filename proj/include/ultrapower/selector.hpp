#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ultrapower {

struct SelectorEntry {
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;

  bool operator==(const SelectorEntry&) const = default;
};

// A coherent choice of one residue class per positive modulus:
// residue_for(m) < m, residue_for(1) = 0, and for all a, b
// residue_for(a * b) mod a == residue_for(a). Coherence is what makes the
// chosen classes pairwise intersect in an infinite set, so the induced
// ultrafilter trace on EPSets satisfies the filter axioms.
//
// Every selector is backed by one digit stream per prime (the residue mod
// q^e is the e lowest base-q digits), which yields coherence by construction.
class ResidueSelector {
 public:
  enum class Kind { Zero, MinusOne, Profinite, Table };

  // residue_for(m) = 0 for every m.
  static ResidueSelector zero();
  // residue_for(m) = m - 1 for every m.
  static ResidueSelector minus_one();
  // Pseudorandom digit streams derived from the seed; deterministic.
  static ResidueSelector profinite(std::uint64_t seed);
  // Pins residues for the listed moduli; primes not mentioned get digit 0,
  // as do digits above the pinned precision. Entries that force conflicting
  // digits for the same prime are rejected with ParseError.
  static ResidueSelector from_table(const std::vector<SelectorEntry>& entries);

  std::uint64_t residue_for(std::uint64_t modulus) const;

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  // Pinned prime-power constraints, one per prime, sorted by prime.
  const std::vector<SelectorEntry>& pins() const { return pins_; }
  std::string describe() const;

 private:
  explicit ResidueSelector(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::uint64_t seed_ = 0;
  std::vector<SelectorEntry> pins_;
};

}  // namespace ultrapower
