#include "ultrapower/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ultrapower/error.hpp"
#include "ultrapower/numeric.hpp"

namespace ultrapower {

namespace {

[[noreturn]] void bad_document(const std::string& what) { throw ParseError(what); }

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

nlohmann::json seq_body_to_json(const EPSeq& s) {
  nlohmann::json prefix = nlohmann::json::array();
  for (const Element& x : s.prefix()) prefix.push_back(element_to_json(x));
  nlohmann::json cycle = nlohmann::json::array();
  for (const Element& x : s.cycle()) cycle.push_back(element_to_json(x));
  return {{"prefix", std::move(prefix)}, {"cycle", std::move(cycle)}};
}

EPSeq seq_body_from_json(const OrderedSetPtr& set, const nlohmann::json& j) {
  std::vector<Element> prefix;
  for (const auto& x : j.at("prefix")) prefix.push_back(element_from_json(set, x));
  std::vector<Element> cycle;
  for (const auto& x : j.at("cycle")) cycle.push_back(element_from_json(set, x));
  return EPSeq(set, std::move(prefix), std::move(cycle));
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  bad_document("expected an integer or a decimal string, got " + j.dump());
}

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  bad_document("expected a rational string, got " + j.dump());
}

}  // namespace

void require_schema(const nlohmann::json& j, std::string_view expected) {
  if (!j.is_object()) bad_document("document is not a JSON object");
  const auto it = j.find("schema");
  if (it == j.end()) return;
  if (!it->is_string() || it->get<std::string>() != expected) {
    bad_document("expected schema \"" + std::string(expected) + "\", got " + it->dump());
  }
}

nlohmann::json descriptor_to_json(const OrderedSetPtr& set) {
  nlohmann::json j{{"schema", std::string(kSetSchema)}};
  switch (set->kind()) {
    case SetKind::Integers:
      j["kind"] = "integers";
      break;
    case SetKind::Rationals:
      j["kind"] = "rationals";
      break;
    case SetKind::Finite:
      j["kind"] = "finite";
      j["elements"] = set->labels();
      break;
    case SetKind::LexProduct:
      j["kind"] = "lex_product";
      j["left"] = descriptor_to_json(set->left());
      j["right"] = descriptor_to_json(set->right());
      break;
  }
  return j;
}

OrderedSetPtr descriptor_from_json(const nlohmann::json& j) {
  return guarded("ordered set descriptor", [&]() -> OrderedSetPtr {
    require_schema(j, kSetSchema);
    const std::string kind = j.at("kind").get<std::string>();
    try {
      if (kind == "integers") return OrderedSet::integers();
      if (kind == "rationals") return OrderedSet::rationals();
      if (kind == "finite") {
        return OrderedSet::finite(j.at("elements").get<std::vector<std::string>>());
      }
      if (kind == "lex_product") {
        return OrderedSet::lex_product(descriptor_from_json(j.at("left")),
                                       descriptor_from_json(j.at("right")));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const PreconditionError& e) {
      bad_document(e.what());
    }
    bad_document("unknown carrier kind \"" + kind + "\"");
  });
}

nlohmann::json element_to_json(const Element& x) {
  switch (x.set()->kind()) {
    case SetKind::Finite:
      return x.label();
    case SetKind::Integers:
      return format_int(x.int_value());
    case SetKind::Rationals:
      return format_rat(x.rat_value());
    case SetKind::LexProduct:
      return nlohmann::json::array({element_to_json(x.first()), element_to_json(x.second())});
  }
  bad_document("unknown carrier kind");
}

Element element_from_json(const OrderedSetPtr& set, const nlohmann::json& j) {
  return guarded("element", [&] {
    switch (set->kind()) {
      case SetKind::Finite: {
        const std::string label = j.get<std::string>();
        const auto& labels = set->labels();
        const auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) {
          bad_document("label \"" + label + "\" is not in " + set->describe());
        }
        return Element::finite(set, static_cast<std::size_t>(it - labels.begin()));
      }
      case SetKind::Integers:
        return Element::of_int(set, int_from_json(j));
      case SetKind::Rationals:
        return Element::of_rat(set, rat_from_json(j));
      case SetKind::LexProduct: {
        if (!j.is_array() || j.size() != 2) {
          bad_document("lex pair must be a two-element array, got " + j.dump());
        }
        return Element::pair(set, element_from_json(set->left(), j[0]),
                             element_from_json(set->right(), j[1]));
      }
    }
    bad_document("unknown carrier kind");
  });
}

nlohmann::json epset_to_json(const EPSet& k) {
  nlohmann::json prefix = nlohmann::json::array();
  for (const bool b : k.prefix_bits()) prefix.push_back(b ? 1 : 0);
  return {{"schema", std::string(kEPSetSchema)},
          {"prefix", std::move(prefix)},
          {"period", k.period()},
          {"residues", k.residues()}};
}

EPSet epset_from_json(const nlohmann::json& j) {
  return guarded("epset", [&] {
    require_schema(j, kEPSetSchema);
    std::vector<bool> prefix;
    for (const auto& bit : j.at("prefix")) {
      if (bit.is_boolean()) {
        prefix.push_back(bit.get<bool>());
        continue;
      }
      const auto v = bit.get<std::uint64_t>();
      if (v > 1) bad_document("prefix bits must be 0 or 1");
      prefix.push_back(v == 1);
    }
    const auto period = j.at("period").get<std::uint64_t>();
    const auto residues = j.at("residues").get<std::vector<std::uint64_t>>();
    try {
      return EPSet::make(std::move(prefix), period, residues);
    } catch (const PreconditionError& e) {
      bad_document(e.what());
    }
  });
}

nlohmann::json seq_to_json(const EPSeq& s) {
  nlohmann::json j = seq_body_to_json(s);
  j["schema"] = std::string(kSeqSchema);
  j["set"] = descriptor_to_json(s.set());
  return j;
}

EPSeq seq_from_json(const nlohmann::json& j) {
  return guarded("sequence", [&] {
    require_schema(j, kSeqSchema);
    const OrderedSetPtr set = descriptor_from_json(j.at("set"));
    try {
      return seq_body_from_json(set, j);
    } catch (const PreconditionError& e) {
      bad_document(e.what());
    }
  });
}

nlohmann::json chain_to_json(const ChainDescriptor& chain) {
  nlohmann::json levels = nlohmann::json::array();
  for (const ChainLevel& level : chain.levels) {
    levels.push_back(
        {{"lower", seq_body_to_json(level.lower)}, {"upper", seq_body_to_json(level.upper)}});
  }
  return {{"schema", std::string(kChainSchema)},
          {"set", descriptor_to_json(chain.set)},
          {"strictness", chain.strictness == Strictness::Open ? "open" : "closed"},
          {"levels", std::move(levels)}};
}

ChainDescriptor chain_from_json(const nlohmann::json& j) {
  return guarded("chain", [&] {
    require_schema(j, kChainSchema);
    ChainDescriptor chain{descriptor_from_json(j.at("set")), Strictness::Closed, {}};
    if (j.contains("strictness")) {
      const std::string s = j.at("strictness").get<std::string>();
      if (s == "open") {
        chain.strictness = Strictness::Open;
      } else if (s != "closed") {
        bad_document("strictness must be \"open\" or \"closed\", got \"" + s + "\"");
      }
    }
    try {
      for (const auto& level : j.at("levels")) {
        chain.levels.push_back({seq_body_from_json(chain.set, level.at("lower")),
                                seq_body_from_json(chain.set, level.at("upper"))});
      }
    } catch (const PreconditionError& e) {
      bad_document(e.what());
    }
    return chain;
  });
}

nlohmann::json elements_to_json(const OrderedSetPtr& set, const std::vector<Element>& xs) {
  nlohmann::json elements = nlohmann::json::array();
  for (const Element& x : xs) elements.push_back(element_to_json(x));
  return {{"schema", std::string(kElementsSchema)},
          {"set", descriptor_to_json(set)},
          {"elements", std::move(elements)}};
}

std::pair<OrderedSetPtr, std::vector<Element>> elements_from_json(const nlohmann::json& j) {
  return guarded("element list", [&] {
    require_schema(j, kElementsSchema);
    const OrderedSetPtr set = descriptor_from_json(j.at("set"));
    std::vector<Element> xs;
    for (const auto& x : j.at("elements")) xs.push_back(element_from_json(set, x));
    return std::make_pair(set, std::move(xs));
  });
}

nlohmann::json selector_to_json(const ResidueSelector& s) {
  nlohmann::json j{{"schema", std::string(kSelectorSchema)}};
  switch (s.kind()) {
    case ResidueSelector::Kind::Zero:
      j["kind"] = "zero";
      break;
    case ResidueSelector::Kind::MinusOne:
      j["kind"] = "minus-one";
      break;
    case ResidueSelector::Kind::Profinite:
      j["kind"] = "profinite";
      j["seed"] = s.seed();
      break;
    case ResidueSelector::Kind::Table: {
      nlohmann::json entries = nlohmann::json::array();
      for (const SelectorEntry& pin : s.pins()) {
        entries.push_back({{"modulus", pin.modulus}, {"residue", pin.residue}});
      }
      j["kind"] = "table";
      j["entries"] = std::move(entries);
      break;
    }
  }
  return j;
}

ResidueSelector selector_from_json(const nlohmann::json& j) {
  return guarded("selector", [&] {
    require_schema(j, kSelectorSchema);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return ResidueSelector::zero();
    if (kind == "minus-one") return ResidueSelector::minus_one();
    if (kind == "profinite") return ResidueSelector::profinite(j.at("seed").get<std::uint64_t>());
    if (kind == "table") {
      std::vector<SelectorEntry> entries;
      for (const auto& entry : j.at("entries")) {
        entries.push_back({entry.at("modulus").get<std::uint64_t>(),
                           entry.at("residue").get<std::uint64_t>()});
      }
      return ResidueSelector::from_table(entries);
    }
    bad_document("unknown selector kind \"" + kind + "\"");
  });
}

namespace {

nlohmann::json side_to_json(const HyperPoint& point, const std::vector<std::uint64_t>& indices) {
  if (point.is_ep()) {
    nlohmann::json j = seq_body_to_json(point.seq());
    j["kind"] = "seq";
    return j;
  }
  nlohmann::json samples = nlohmann::json::array();
  for (const std::uint64_t n : indices) {
    samples.push_back(nlohmann::json::array({n, element_to_json(point.value_at(n))}));
  }
  return {{"kind", "sampled"},
          {"description", point.description()},
          {"bound", point.sampling_bound()},
          {"samples", std::move(samples)}};
}

}  // namespace

nlohmann::json certificate_to_json(const UltrafilterTrace& u, const Certificate& c) {
  const std::uint64_t bound = std::min(c.lhs.sampling_bound(), c.rhs.sampling_bound());
  const auto indices = certificate_sample_indices(u, c.support, bound);
  return {{"claim", std::string(relation_name(c.claim))},
          {"label", c.label},
          {"support", epset_to_json(c.support)},
          {"lhs", side_to_json(c.lhs, indices)},
          {"rhs", side_to_json(c.rhs, indices)}};
}

nlohmann::json certificate_report_to_json(const CertificateReport& r) {
  nlohmann::json j{{"support_accepted", r.support_accepted},
                   {"exact", r.exact},
                   {"checked_indices", r.checked_indices},
                   {"verified", r.verified()}};
  if (r.violation_index) j["violation_index"] = *r.violation_index;
  if (r.sampling_bound_applied) j["sampling_bound"] = *r.sampling_bound_applied;
  return j;
}

nlohmann::json trace_to_json(const UltrafilterTrace& u, const WitnessTrace& t) {
  nlohmann::json d_sets = nlohmann::json::array();
  for (const EPSet& d : t.d_sets) d_sets.push_back(epset_to_json(d));
  nlohmann::json alpha = nlohmann::json::array();
  std::vector<std::uint64_t> witness_indices;
  for (const auto& [n, a] : t.alpha_samples) {
    alpha.push_back(nlohmann::json::array({n, a}));
    witness_indices.push_back(n);
  }
  nlohmann::json certificates = nlohmann::json::array();
  for (std::size_t i = 0; i < t.certificates.size(); ++i) {
    nlohmann::json c = certificate_to_json(u, t.certificates[i]);
    c["verification"] = certificate_report_to_json(t.reports[i]);
    certificates.push_back(std::move(c));
  }
  return {{"witness", side_to_json(t.witness, witness_indices)},
          {"d_sets", std::move(d_sets)},
          {"alpha", std::move(alpha)},
          {"sample_window", t.sample_window},
          {"certificates", std::move(certificates)},
          {"all_verified", t.all_verified()},
          {"summary", t.summary}};
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string digest_string(std::string_view bytes) {
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(bytes);
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

std::string dump_canonical(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace ultrapower
