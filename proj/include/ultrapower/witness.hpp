#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultrapower/hyper.hpp"

namespace ultrapower {

enum class Strictness { Closed, Open };

struct ChainLevel {
  EPSeq lower;
  EPSeq upper;
};

// Nested hyper-intervals, one level per entry, deepest last. Closed chains
// satisfy lower_k <= lower_{k+1} <= upper_{k+1} <= upper_k in the hyper
// order and lower_1 <= upper_1; open chains sharpen the middle inequality
// to lower_k < upper_k at every level.
struct ChainDescriptor {
  OrderedSetPtr set;
  Strictness strictness;
  std::vector<ChainLevel> levels;

  std::size_t depth() const { return levels.size(); }
};

struct WitnessOptions {
  std::uint64_t period_cap = kDefaultPeriodCap;
};

// Full record of one constructive run: the nested level sets D_k, the level
// map alpha at the sampled indices, the constructed point, and one
// certificate per claimed inequality together with its verification.
struct WitnessTrace {
  std::vector<EPSet> d_sets;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> alpha_samples;
  HyperPoint witness;
  std::vector<Certificate> certificates;
  std::vector<CertificateReport> reports;
  std::uint64_t sample_window = 0;
  std::string summary;

  bool all_verified() const;
};

// Throws PreconditionError naming the offending level when the chain does
// not satisfy its declared nesting invariants under the given trace.
void validate_chain(const UltrafilterTrace& u, const ChainDescriptor& chain,
                    std::uint64_t period_cap = kDefaultPeriodCap);

// Common point of a closed interval chain. Emits, for each level k, the
// certificates lower_k <= witness and witness <= upper_k supported on
// D_k minus the indices below k.
WitnessTrace cantor_witness(const UltrafilterTrace& u, const ChainDescriptor& chain,
                            const WitnessOptions& options = {});

// Interior point of an open chain over a dense carrier; certificates assert
// strict inequalities on the same supports. Non-dense carriers are rejected
// before any chain validation.
WitnessTrace open_cantor_witness(const UltrafilterTrace& u, const ChainDescriptor& chain,
                                 const WitnessOptions& options = {});

struct DensityCounterexample {
  Element lower;
  Element upper;
  ChainDescriptor chain;
};

// For a non-dense carrier: an adjacent pair p < q plus the constant open
// chain between them, whose hyper-open-interval is empty. Returns nothing
// when the carrier is dense.
std::optional<DensityCounterexample> density_counterexample(const OrderedSetPtr& set,
                                                            std::size_t chain_depth = 3);

// Given strictly increasing thresholds t_1 < ... < t_K and an ep-backed
// upper bound of their embeddings, constructs a strictly smaller upper
// bound of the first floor(K/2) thresholds, refuting leastness. Requires
// K >= 2; the bound is checked against every threshold first.
WitnessTrace sup_refuter(const UltrafilterTrace& u, const std::vector<Element>& thresholds,
                         const HyperPoint& bound, const WitnessOptions& options = {});

// Order dual: strictly decreasing thresholds, ep-backed lower bound,
// strictly greater refuting bound.
WitnessTrace inf_refuter(const UltrafilterTrace& u, const std::vector<Element>& thresholds,
                         const HyperPoint& bound, const WitnessOptions& options = {});

struct CollapseOutcome {
  Element value;
  std::size_t part_index;
  // parts[j] = {n : a_n = t_j}, the level sets that cover the naturals
  std::vector<EPSet> parts;
};

// Every sequence over a finite carrier is equivalent to a constant one:
// selects the accepted level set and returns its value.
CollapseOutcome finite_collapse(const UltrafilterTrace& u, const EPSeq& a,
                                const WitnessOptions& options = {});

}  // namespace ultrapower
