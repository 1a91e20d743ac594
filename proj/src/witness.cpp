#include "ultrapower/witness.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

#include "ultrapower/error.hpp"

namespace ultrapower {

namespace {

// The D_k are nested, so the set of levels containing n is an initial
// segment {1..max} and alpha_n = min(n, max), or 0 off every level.
std::uint64_t alpha_at(const std::vector<EPSet>& d_sets, std::uint64_t n) {
  for (std::size_t k = d_sets.size(); k > 0; --k) {
    if (d_sets[k - 1].contains(n)) return std::min<std::uint64_t>(n, k);
  }
  return 0;
}

std::uint64_t witness_sampling_bound(const std::vector<EPSet>& supports, std::size_t depth) {
  std::uint64_t max_prefix = 0;
  std::uint64_t max_period = 1;
  for (const EPSet& s : supports) {
    max_prefix = std::max(max_prefix, s.prefix_len());
    max_period = std::max(max_period, s.period());
  }
  return max_prefix + 4 * max_period + 2 * depth + 16;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> collect_alpha_samples(
    const std::vector<EPSet>& d_sets, const std::vector<CertificateReport>& reports,
    std::size_t depth) {
  std::set<std::uint64_t> ns;
  for (std::uint64_t n = 0; n < 2 * depth + 4; ++n) ns.insert(n);
  for (const CertificateReport& r : reports) ns.insert(r.checked_indices.begin(), r.checked_indices.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;
  samples.reserve(ns.size());
  for (const std::uint64_t n : ns) samples.emplace_back(n, alpha_at(d_sets, n));
  return samples;
}

std::uint64_t trace_window(const std::vector<EPSet>& d_sets, std::size_t depth) {
  std::uint64_t max_prefix = 2 * depth + 2;
  std::uint64_t max_period = 1;
  for (const EPSet& s : d_sets) {
    max_prefix = std::max(max_prefix, s.prefix_len());
    max_period = std::max(max_period, s.period());
  }
  return max_prefix + 3 * max_period + 1;
}

std::string verdict_word(const CertificateReport& report) {
  if (report.verified()) return "verified";
  if (!report.support_accepted) return "support rejected";
  return "falsified at index " + std::to_string(*report.violation_index);
}

struct CantorContext {
  std::vector<ChainLevel> levels;
  std::vector<EPSet> d_sets;
  Element fallback;
  bool open;
};

WitnessTrace cantor_core(const UltrafilterTrace& u, const ChainDescriptor& chain, bool open,
                         const WitnessOptions& options) {
  const std::uint64_t cap = options.period_cap;
  if (open && !is_dense(chain.set)) {
    throw PreconditionError("open chain witness requires a dense carrier, got " +
                            chain.set->describe());
  }
  const Strictness wanted = open ? Strictness::Open : Strictness::Closed;
  if (chain.strictness != wanted) {
    throw PreconditionError(open ? "open witness requires an open chain"
                                 : "closed witness requires a closed chain");
  }
  validate_chain(u, chain, cap);
  const std::size_t depth = chain.depth();

  std::vector<EPSet> d_sets;
  d_sets.reserve(depth);
  d_sets.push_back(index_set(open ? Relation::Lt : Relation::Leq, chain.levels[0].lower,
                             chain.levels[0].upper, cap));
  for (std::size_t k = 2; k <= depth; ++k) {
    EPSet d = intersection(
        d_sets.back(), index_set_leq(chain.levels[k - 2].lower, chain.levels[k - 1].lower, cap),
        cap);
    d = intersection(
        d, index_set_leq(chain.levels[k - 1].upper, chain.levels[k - 2].upper, cap), cap);
    d = intersection(d,
                     index_set(open ? Relation::Lt : Relation::Leq, chain.levels[k - 1].lower,
                               chain.levels[k - 1].upper, cap),
                     cap);
    d_sets.push_back(std::move(d));
  }

  std::vector<EPSet> supports;
  supports.reserve(depth);
  for (std::size_t k = 1; k <= depth; ++k) {
    supports.push_back(intersection(d_sets[k - 1], EPSet::at_least(k), cap));
  }

  auto ctx = std::make_shared<const CantorContext>(
      CantorContext{chain.levels, d_sets, chain.levels[0].lower.value_at(0), open});
  auto values = [ctx](std::uint64_t n) -> Element {
    const std::uint64_t alpha = alpha_at(ctx->d_sets, n);
    if (alpha == 0) return ctx->fallback;
    const ChainLevel& level = ctx->levels[alpha - 1];
    if (!ctx->open) return level.lower.value_at(n);
    return density_pick(level.lower.value_at(n), level.upper.value_at(n));
  };
  HyperPoint witness =
      HyperPoint::opaque(values, witness_sampling_bound(supports, depth), chain.set,
                         open ? "open chain interior point" : "chain common point");

  const Relation claim = open ? Relation::Lt : Relation::Leq;
  std::vector<Certificate> certificates;
  std::vector<CertificateReport> reports;
  for (std::size_t k = 1; k <= depth; ++k) {
    certificates.push_back({claim, HyperPoint::from_seq(chain.levels[k - 1].lower), witness,
                            supports[k - 1], "level-" + std::to_string(k) + "-lower"});
    certificates.push_back({claim, witness, HyperPoint::from_seq(chain.levels[k - 1].upper),
                            supports[k - 1], "level-" + std::to_string(k) + "-upper"});
  }
  reports.reserve(certificates.size());
  for (const Certificate& c : certificates) reports.push_back(verify_certificate(u, c, cap));

  std::ostringstream summary;
  summary << (open ? "open" : "closed") << " chain of depth " << depth << " over "
          << chain.set->describe() << "\n";
  for (std::size_t i = 0; i < certificates.size(); ++i) {
    summary << certificates[i].label << ": " << verdict_word(reports[i]) << "\n";
  }

  return WitnessTrace{std::move(d_sets),
                      collect_alpha_samples(ctx->d_sets, reports, depth),
                      std::move(witness),
                      std::move(certificates),
                      std::move(reports),
                      trace_window(ctx->d_sets, depth),
                      summary.str()};
}

}  // namespace

bool WitnessTrace::all_verified() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CertificateReport& r) { return r.verified(); });
}

void validate_chain(const UltrafilterTrace& u, const ChainDescriptor& chain,
                    std::uint64_t period_cap) {
  if (!chain.set) throw PreconditionError("chain without a carrier");
  if (chain.levels.empty()) throw PreconditionError("chain must have at least one level");
  for (std::size_t k = 1; k <= chain.depth(); ++k) {
    if (!same_order(chain.levels[k - 1].lower.set(), chain.set) ||
        !same_order(chain.levels[k - 1].upper.set(), chain.set)) {
      throw DescriptorMismatchError("chain level " + std::to_string(k) +
                                    " is not over the chain's carrier");
    }
  }
  const bool open = chain.strictness == Strictness::Open;
  const auto level_point = [&](std::size_t k, bool upper) {
    return HyperPoint::from_seq(upper ? chain.levels[k - 1].upper : chain.levels[k - 1].lower);
  };
  const auto interval_ok = [&](std::size_t k) {
    const auto ord = hyper_compare(u, level_point(k, false), level_point(k, true), period_cap);
    return open ? ord == std::strong_ordering::less : ord != std::strong_ordering::greater;
  };
  if (!interval_ok(1)) {
    throw PreconditionError(std::string("malformed chain at level 1: lower ") +
                            (open ? "not strictly below" : "exceeds") + " upper");
  }
  for (std::size_t k = 1; k + 1 <= chain.depth(); ++k) {
    if (hyper_compare(u, level_point(k, false), level_point(k + 1, false), period_cap) ==
        std::strong_ordering::greater) {
      throw PreconditionError("malformed chain at level " + std::to_string(k + 1) +
                              ": lower bounds decrease");
    }
    if (!interval_ok(k + 1)) {
      throw PreconditionError("malformed chain at level " + std::to_string(k + 1) + ": lower " +
                              (open ? "not strictly below" : "exceeds") + " upper");
    }
    if (hyper_compare(u, level_point(k + 1, true), level_point(k, true), period_cap) ==
        std::strong_ordering::greater) {
      throw PreconditionError("malformed chain at level " + std::to_string(k + 1) +
                              ": upper bounds increase");
    }
  }
}

WitnessTrace cantor_witness(const UltrafilterTrace& u, const ChainDescriptor& chain,
                            const WitnessOptions& options) {
  return cantor_core(u, chain, false, options);
}

WitnessTrace open_cantor_witness(const UltrafilterTrace& u, const ChainDescriptor& chain,
                                 const WitnessOptions& options) {
  return cantor_core(u, chain, true, options);
}

std::optional<DensityCounterexample> density_counterexample(const OrderedSetPtr& set,
                                                            std::size_t chain_depth) {
  if (chain_depth == 0) throw PreconditionError("chain depth must be positive");
  if (is_dense(set)) return std::nullopt;
  const auto pair = adjacent_pair(set);
  if (!pair) throw Error("non-dense carrier without an adjacent pair");
  const EPSeq lower = EPSeq::constant(pair->first);
  const EPSeq upper = EPSeq::constant(pair->second);
  ChainDescriptor chain{set, Strictness::Open, {}};
  chain.levels.reserve(chain_depth);
  for (std::size_t k = 0; k < chain_depth; ++k) chain.levels.push_back({lower, upper});
  return DensityCounterexample{pair->first, pair->second, std::move(chain)};
}

namespace {

struct RefuterContext {
  std::vector<Element> thresholds;
  std::vector<EPSet> d_sets;
  EPSeq bound;
};

WitnessTrace refuter_core(const UltrafilterTrace& u, const std::vector<Element>& thresholds,
                          const HyperPoint& bound, bool sup, const WitnessOptions& options) {
  const std::uint64_t cap = options.period_cap;
  const char* side = sup ? "upper" : "lower";
  if (thresholds.size() < 2) {
    throw PreconditionError(
        "refuter needs at least two thresholds; the halved level map is degenerate below depth 2");
  }
  if (!bound.is_ep()) {
    throw PreconditionError(std::string("the ") + side + " bound must be ep-backed");
  }
  if (!same_order(thresholds.front().set(), bound.set())) {
    throw DescriptorMismatchError("thresholds and bound live over different carriers");
  }
  const std::size_t depth = thresholds.size();
  for (std::size_t k = 1; k < depth; ++k) {
    const auto ord = compare(thresholds[k - 1], thresholds[k]);
    if (ord != (sup ? std::strong_ordering::less : std::strong_ordering::greater)) {
      throw PreconditionError(std::string("thresholds must be strictly ") +
                              (sup ? "increasing" : "decreasing") + ", violated at position " +
                              std::to_string(k + 1));
    }
  }
  for (std::size_t k = 1; k <= depth; ++k) {
    const auto ord = hyper_compare(u, embed_constant(thresholds[k - 1]), bound, cap);
    const bool ok = sup ? ord != std::strong_ordering::greater : ord != std::strong_ordering::less;
    if (!ok) {
      throw PreconditionError(std::string(sup ? "not an upper" : "not a lower") +
                              " bound at level " + std::to_string(k));
    }
  }

  std::vector<EPSet> d_sets;
  d_sets.reserve(depth);
  for (std::size_t k = 1; k <= depth; ++k) {
    const EPSeq level = EPSeq::constant(thresholds[k - 1]);
    d_sets.push_back(sup ? index_set_leq(level, bound.seq(), cap)
                         : index_set_leq(bound.seq(), level, cap));
  }

  const std::size_t certified = depth / 2;
  std::vector<EPSet> supports;
  supports.reserve(certified + 1);
  for (std::size_t k = 1; k <= certified; ++k) {
    supports.push_back(intersection(d_sets[2 * k - 1], EPSet::at_least(2 * k), cap));
  }
  supports.push_back(intersection(d_sets[1], EPSet::at_least(2), cap));

  auto ctx =
      std::make_shared<const RefuterContext>(RefuterContext{thresholds, d_sets, bound.seq()});
  auto values = [ctx](std::uint64_t n) -> Element {
    const std::uint64_t alpha = alpha_at(ctx->d_sets, n);
    if (alpha < 2) return ctx->bound.value_at(n);
    return ctx->thresholds[alpha / 2 - 1];
  };
  HyperPoint witness = HyperPoint::opaque(
      values, witness_sampling_bound(supports, depth), bound.set(),
      sup ? "refuting upper bound" : "refuting lower bound");

  std::vector<Certificate> certificates;
  for (std::size_t k = 1; k <= certified; ++k) {
    const HyperPoint level = embed_constant(thresholds[k - 1]);
    if (sup) {
      certificates.push_back(
          {Relation::Leq, level, witness, supports[k - 1], "threshold-" + std::to_string(k)});
    } else {
      certificates.push_back(
          {Relation::Leq, witness, level, supports[k - 1], "threshold-" + std::to_string(k)});
    }
  }
  if (sup) {
    certificates.push_back({Relation::Lt, witness, bound, supports.back(), "strictly-below-bound"});
  } else {
    certificates.push_back({Relation::Lt, bound, witness, supports.back(), "strictly-above-bound"});
  }
  std::vector<CertificateReport> reports;
  reports.reserve(certificates.size());
  for (const Certificate& c : certificates) reports.push_back(verify_certificate(u, c, cap));

  std::ostringstream summary;
  summary << (sup ? "supremum" : "infimum") << " refutation, " << depth << " thresholds over "
          << bound.set()->describe() << "; the halved level map certifies thresholds 1.."
          << certified << "\n";
  for (std::size_t i = 0; i < certificates.size(); ++i) {
    summary << certificates[i].label << ": " << verdict_word(reports[i]) << "\n";
  }

  return WitnessTrace{std::move(d_sets),
                      collect_alpha_samples(ctx->d_sets, reports, depth),
                      std::move(witness),
                      std::move(certificates),
                      std::move(reports),
                      trace_window(ctx->d_sets, depth),
                      summary.str()};
}

}  // namespace

WitnessTrace sup_refuter(const UltrafilterTrace& u, const std::vector<Element>& thresholds,
                         const HyperPoint& bound, const WitnessOptions& options) {
  return refuter_core(u, thresholds, bound, true, options);
}

WitnessTrace inf_refuter(const UltrafilterTrace& u, const std::vector<Element>& thresholds,
                         const HyperPoint& bound, const WitnessOptions& options) {
  return refuter_core(u, thresholds, bound, false, options);
}

CollapseOutcome finite_collapse(const UltrafilterTrace& u, const EPSeq& a,
                                const WitnessOptions& options) {
  if (a.set()->kind() != SetKind::Finite) {
    throw PreconditionError("collapse requires a finite carrier, got " + a.set()->describe());
  }
  const std::uint64_t cap = options.period_cap;
  std::vector<EPSet> parts;
  parts.reserve(a.set()->finite_size());
  for (std::size_t j = 0; j < a.set()->finite_size(); ++j) {
    parts.push_back(index_set_eq(a, EPSeq::constant(Element::finite(a.set(), j)), cap));
  }
  const std::size_t index = cover_select(u, parts, cap);
  Element value = Element::finite(a.set(), index);
  if (!hyper_equal(u, HyperPoint::from_seq(a), embed_constant(value), cap)) {
    throw Error("collapse selected a non-equivalent constant; selector coherence is broken");
  }
  return CollapseOutcome{std::move(value), index, std::move(parts)};
}

}  // namespace ultrapower
