#include "ultrapower/ultrafilter.hpp"

#include "ultrapower/error.hpp"

namespace ultrapower {

bool frechet_contains(const EPSet& k) { return k.is_cofinite(); }

bool frechet_extension_contains(const EPSet& k, const EPSet& m, std::uint64_t period_cap) {
  if (k.is_finite()) {
    throw PreconditionError("frechet extension is defined over an infinite base set");
  }
  return difference(k, m, period_cap).is_finite();
}

std::size_t cover_select(const UltrafilterTrace& u, std::span<const EPSet> cover,
                         std::uint64_t period_cap) {
  EPSet joined = EPSet::empty_set();
  for (const EPSet& part : cover) joined = union_of(joined, part, period_cap);
  if (!(joined == EPSet::naturals())) {
    throw PreconditionError("the given parts do not cover the naturals");
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (u.decide(cover[i])) return i;
  }
  throw PreconditionError("no part accepted; selector coherence is broken");
}

EPSet random_epset(std::mt19937_64& rng, std::uint64_t max_prefix, std::uint64_t max_period) {
  const std::uint64_t period = std::uniform_int_distribution<std::uint64_t>(1, max_period)(rng);
  const std::uint64_t n_prefix = std::uniform_int_distribution<std::uint64_t>(0, max_prefix)(rng);
  std::bernoulli_distribution bit(0.5);
  std::vector<bool> prefix(n_prefix);
  for (std::uint64_t n = 0; n < n_prefix; ++n) prefix[n] = bit(rng);
  std::vector<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < period; ++r) {
    if (bit(rng)) residues.push_back(r);
  }
  return EPSet::make(std::move(prefix), period, residues);
}

AxiomCheckResult check_ultrafilter_axioms(const UltrafilterTrace& u,
                                          const AxiomCheckOptions& options) {
  AxiomCheckResult result;
  std::mt19937_64 rng(options.seed);
  const std::uint64_t cap = 4 * options.max_period * options.max_period + options.max_prefix + 64;
  for (std::uint64_t i = 0; i < options.samples; ++i) {
    const EPSet k = random_epset(rng, options.max_prefix, options.max_period);
    const EPSet l = random_epset(rng, options.max_prefix, options.max_period);
    const EPSet k_up = union_of(k, l, cap);
    if (u.decide(k) && !u.decide(k_up)) ++result.violations[0];
    if (u.decide(k) && u.decide(l) && !u.decide(intersection(k, l, cap))) ++result.violations[1];
    if (u.decide(k) && !k.is_infinite()) ++result.violations[2];
    if (u.decide(k) == u.decide(complement(k))) ++result.violations[3];
    ++result.samples;
  }
  return result;
}

}  // namespace ultrapower
