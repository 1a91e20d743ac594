#include "ultrapower/epset.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ultrapower/error.hpp"

namespace ultrapower {

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t q = a / g;
  if (b != 0 && q > cap / b) {
    throw ResourceError("aligned period lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                        ") exceeds the cap of " + std::to_string(cap));
  }
  const std::uint64_t result = q * b;
  if (result > cap) {
    throw ResourceError("aligned period " + std::to_string(result) + " exceeds the cap of " +
                        std::to_string(cap));
  }
  return result;
}

void EPSet::canonicalize() {
  const std::uint64_t p = tail_.size();
  std::uint64_t d = p;
  for (std::uint64_t cand = 1; cand + cand <= p; ++cand) {
    if (p % cand) continue;
    bool folds = true;
    for (std::uint64_t r = cand; r < p && folds; ++r) folds = tail_[r] == tail_[r % cand];
    if (folds) {
      d = cand;
      break;
    }
  }
  if (d != p) tail_.resize(d);
  while (!prefix_.empty() && prefix_.back() == tail_[(prefix_.size() - 1) % tail_.size()]) {
    prefix_.pop_back();
  }
}

EPSet EPSet::make(std::vector<bool> prefix_bits, std::uint64_t period,
                  const std::vector<std::uint64_t>& residues) {
  if (period == 0) {
    throw PreconditionError("period must be positive");
  }
  EPSet set;
  set.prefix_ = std::move(prefix_bits);
  set.tail_.assign(period, false);
  for (const std::uint64_t r : residues) {
    if (r >= period) {
      throw PreconditionError("residue " + std::to_string(r) + " is out of range for period " +
                              std::to_string(period));
    }
    set.tail_[r] = true;
  }
  set.canonicalize();
  return set;
}

EPSet EPSet::naturals() { return make({}, 1, {0}); }

EPSet EPSet::empty_set() { return make({}, 1, {}); }

EPSet EPSet::finite_set(const std::vector<std::uint64_t>& members) {
  std::uint64_t len = 0;
  for (const std::uint64_t n : members) len = std::max(len, n + 1);
  std::vector<bool> prefix(len, false);
  for (const std::uint64_t n : members) prefix[n] = true;
  return make(std::move(prefix), 1, {});
}

EPSet EPSet::cofinite_excluding(const std::vector<std::uint64_t>& holes) {
  std::uint64_t len = 0;
  for (const std::uint64_t n : holes) len = std::max(len, n + 1);
  std::vector<bool> prefix(len, true);
  for (const std::uint64_t n : holes) prefix[n] = false;
  return make(std::move(prefix), 1, {0});
}

EPSet EPSet::residue_class(std::uint64_t modulus, std::uint64_t residue) {
  if (modulus == 0) throw PreconditionError("modulus must be positive");
  if (residue >= modulus) {
    throw PreconditionError("residue " + std::to_string(residue) + " is out of range for modulus " +
                            std::to_string(modulus));
  }
  return make({}, modulus, {residue});
}

EPSet EPSet::at_least(std::uint64_t bound) {
  return make(std::vector<bool>(bound, false), 1, {0});
}

bool EPSet::contains(std::uint64_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return tail_[n % tail_.size()];
}

bool EPSet::is_finite() const {
  return std::none_of(tail_.begin(), tail_.end(), [](bool b) { return b; });
}

bool EPSet::is_cofinite() const {
  return std::all_of(tail_.begin(), tail_.end(), [](bool b) { return b; });
}

bool EPSet::is_empty() const {
  return is_finite() && std::none_of(prefix_.begin(), prefix_.end(), [](bool b) { return b; });
}

std::vector<std::uint64_t> EPSet::residues() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < tail_.size(); ++r) {
    if (tail_[r]) out.push_back(r);
  }
  return out;
}

std::optional<std::uint64_t> EPSet::first_element() const {
  for (std::uint64_t n = 0; n < prefix_.size(); ++n) {
    if (prefix_[n]) return n;
  }
  const std::uint64_t start = prefix_.size();
  for (std::uint64_t n = start; n < start + tail_.size(); ++n) {
    if (tail_[n % tail_.size()]) return n;
  }
  return std::nullopt;
}

namespace {

template <typename Combine>
EPSet pointwise(const EPSet& k, const EPSet& l, std::uint64_t period_cap, Combine combine) {
  const std::uint64_t p = checked_lcm(k.period(), l.period(), period_cap);
  const std::uint64_t n_prefix = std::max(k.prefix_len(), l.prefix_len());
  std::vector<bool> prefix(n_prefix);
  for (std::uint64_t n = 0; n < n_prefix; ++n) prefix[n] = combine(k.contains(n), l.contains(n));
  std::vector<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (combine(k.tail_bits()[r % k.period()], l.tail_bits()[r % l.period()])) {
      residues.push_back(r);
    }
  }
  return EPSet::make(std::move(prefix), p, residues);
}

}  // namespace

EPSet complement(const EPSet& k) {
  std::vector<bool> prefix = k.prefix_bits();
  prefix.flip();
  std::vector<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < k.period(); ++r) {
    if (!k.tail_bits()[r]) residues.push_back(r);
  }
  return EPSet::make(std::move(prefix), k.period(), residues);
}

EPSet intersection(const EPSet& k, const EPSet& l, std::uint64_t period_cap) {
  return pointwise(k, l, period_cap, [](bool a, bool b) { return a && b; });
}

EPSet union_of(const EPSet& k, const EPSet& l, std::uint64_t period_cap) {
  return pointwise(k, l, period_cap, [](bool a, bool b) { return a || b; });
}

EPSet difference(const EPSet& k, const EPSet& l, std::uint64_t period_cap) {
  return pointwise(k, l, period_cap, [](bool a, bool b) { return a && !b; });
}

bool is_superset(const EPSet& k, const EPSet& l, std::uint64_t period_cap) {
  return difference(l, k, period_cap).is_empty();
}

}  // namespace ultrapower
