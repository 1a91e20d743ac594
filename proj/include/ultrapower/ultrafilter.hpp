#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "ultrapower/epset.hpp"
#include "ultrapower/selector.hpp"

namespace ultrapower {

// Decidable trace of a nonprincipal ultrafilter on the EPSet algebra.
// A set is accepted iff its eventual part contains the selector's residue
// class modulo the set's canonical period. On EPSets this decision satisfies
// the four ultrafilter axioms: superset closure, closure under intersection,
// every member infinite, and acceptance of exactly one of K and its
// complement. No full ultrafilter on all subsets is ever materialized.
class UltrafilterTrace {
 public:
  explicit UltrafilterTrace(ResidueSelector selector) : selector_(std::move(selector)) {}

  bool decide(const EPSet& k) const {
    return k.tail_bits()[selector_.residue_for(k.period())];
  }

  const ResidueSelector& selector() const { return selector_; }

 private:
  ResidueSelector selector_;
};

// true iff k is cofinite
bool frechet_contains(const EPSet& k);

// Membership of m in the family {M : K cap L subset of M for some cofinite L},
// the canonical filter extension generated by an infinite K together with the
// cofinite sets. On EPSets this reduces to K minus M being finite.
// Requires K infinite.
bool frechet_extension_contains(const EPSet& k, const EPSet& m,
                                std::uint64_t period_cap = kDefaultPeriodCap);

// Smallest index of a part accepted by u. The parts must cover the naturals;
// a genuine cover always has an accepted part, since the selected residue
// class modulo the joint period must land inside one of them.
std::size_t cover_select(const UltrafilterTrace& u, std::span<const EPSet> cover,
                         std::uint64_t period_cap = kDefaultPeriodCap);

struct AxiomCheckOptions {
  std::uint64_t samples = 1000;
  std::uint64_t max_prefix = 20;
  std::uint64_t max_period = 50;
  std::uint64_t seed = 0x5eed;
};

struct AxiomCheckResult {
  std::uint64_t samples = 0;
  // violations[i] counts failures of axiom i+1: superset closure,
  // intersection closure, members infinite, complement dichotomy
  std::array<std::uint64_t, 4> violations{};

  bool passed() const {
    return violations[0] == 0 && violations[1] == 0 && violations[2] == 0 && violations[3] == 0;
  }
};

AxiomCheckResult check_ultrafilter_axioms(const UltrafilterTrace& u,
                                          const AxiomCheckOptions& options = {});

EPSet random_epset(std::mt19937_64& rng, std::uint64_t max_prefix, std::uint64_t max_period);

}  // namespace ultrapower
