#include "ultrapower/selector.hpp"

#include <algorithm>
#include <sstream>

#include "ultrapower/error.hpp"
#include "ultrapower/numeric.hpp"

namespace ultrapower {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct PrimePower {
  std::uint64_t prime;
  std::uint64_t value;  // prime^exponent
  std::uint64_t exponent;
};

std::vector<PrimePower> factorize(std::uint64_t m) {
  std::vector<PrimePower> factors;
  for (std::uint64_t d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
    if (m % d) continue;
    PrimePower pp{d, 1, 0};
    while (m % d == 0) {
      m /= d;
      pp.value *= d;
      ++pp.exponent;
    }
    factors.push_back(pp);
  }
  if (m > 1) factors.push_back({m, m, 1});
  return factors;
}

Int mod_inverse(const Int& a, const Int& m) {
  Int old_r = a % m, r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    const Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  Int inv = old_s % m;
  if (inv < 0) inv += m;
  return inv;
}

}  // namespace

ResidueSelector ResidueSelector::zero() { return ResidueSelector(Kind::Zero); }

ResidueSelector ResidueSelector::minus_one() { return ResidueSelector(Kind::MinusOne); }

ResidueSelector ResidueSelector::profinite(std::uint64_t seed) {
  ResidueSelector selector(Kind::Profinite);
  selector.seed_ = seed;
  return selector;
}

ResidueSelector ResidueSelector::from_table(const std::vector<SelectorEntry>& entries) {
  ResidueSelector selector(Kind::Table);
  for (const auto& entry : entries) {
    if (entry.modulus == 0) {
      throw ParseError("selector table modulus must be positive");
    }
    if (entry.residue >= entry.modulus) {
      throw ParseError("selector table residue " + std::to_string(entry.residue) +
                       " is out of range for modulus " + std::to_string(entry.modulus));
    }
    for (const auto& pp : factorize(entry.modulus)) {
      const std::uint64_t forced = entry.residue % pp.value;
      auto pin = std::find_if(selector.pins_.begin(), selector.pins_.end(),
                              [&](const SelectorEntry& p) { return p.modulus % pp.prime == 0; });
      if (pin == selector.pins_.end()) {
        selector.pins_.push_back({pp.value, forced});
        continue;
      }
      const std::uint64_t lo = std::min(pin->modulus, pp.value);
      if (pin->residue % lo != forced % lo) {
        throw ParseError("selector table is incoherent at prime " + std::to_string(pp.prime) +
                         ": residues " + std::to_string(pin->residue) + " mod " +
                         std::to_string(pin->modulus) + " and " + std::to_string(forced) +
                         " mod " + std::to_string(pp.value) + " disagree");
      }
      if (pp.value > pin->modulus) *pin = {pp.value, forced};
    }
  }
  std::sort(selector.pins_.begin(), selector.pins_.end(),
            [](const SelectorEntry& a, const SelectorEntry& b) { return a.modulus < b.modulus; });
  return selector;
}

std::uint64_t ResidueSelector::residue_for(std::uint64_t modulus) const {
  if (modulus == 0) throw PreconditionError("modulus must be positive");
  switch (kind_) {
    case Kind::Zero:
      return 0;
    case Kind::MinusOne:
      return modulus - 1;
    default:
      break;
  }
  Int x = 0;
  Int combined = 1;
  for (const auto& pp : factorize(modulus)) {
    std::uint64_t v = 0;
    if (kind_ == Kind::Profinite) {
      const std::uint64_t stream = splitmix64(seed_ ^ (pp.prime * 0x9E3779B97F4A7C15ULL));
      std::uint64_t power = 1;
      for (std::uint64_t i = 0; i < pp.exponent; ++i) {
        v += (splitmix64(stream + i) % pp.prime) * power;
        power *= pp.prime;
      }
    } else {
      auto pin = std::find_if(pins_.begin(), pins_.end(), [&](const SelectorEntry& p) {
        return p.modulus % pp.prime == 0;
      });
      if (pin != pins_.end()) {
        v = pp.value <= pin->modulus ? pin->residue % pp.value : pin->residue;
      }
    }
    // x' == x (mod combined), x' == v (mod pp.value); moduli coprime
    const Int t = ((Int(v) - x) % pp.value + pp.value) % pp.value;
    x += combined * ((t * mod_inverse(combined, Int(pp.value))) % pp.value);
    combined *= pp.value;
  }
  x %= combined;
  return x.convert_to<std::uint64_t>();
}

std::string ResidueSelector::describe() const {
  switch (kind_) {
    case Kind::Zero:
      return "zero";
    case Kind::MinusOne:
      return "minus-one";
    case Kind::Profinite:
      return "profinite:" + std::to_string(seed_);
    case Kind::Table: {
      std::ostringstream out;
      out << "table{";
      for (std::size_t i = 0; i < pins_.size(); ++i) {
        if (i) out << ",";
        out << pins_[i].modulus << "=" << pins_[i].residue;
      }
      out << "}";
      return out.str();
    }
  }
  return "?";
}

}  // namespace ultrapower
