#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ultrapower/hyper.hpp"
#include "ultrapower/ordered_set.hpp"
#include "ultrapower/selector.hpp"
#include "ultrapower/witness.hpp"

namespace ultrapower {

inline constexpr std::string_view kSetSchema = "ultrapower.set/v1";
inline constexpr std::string_view kSeqSchema = "ultrapower.seq/v1";
inline constexpr std::string_view kEPSetSchema = "ultrapower.epset/v1";
inline constexpr std::string_view kChainSchema = "ultrapower.chain/v1";
inline constexpr std::string_view kElementsSchema = "ultrapower.elements/v1";
inline constexpr std::string_view kSelectorSchema = "ultrapower.selector/v1";
inline constexpr std::string_view kReportSchema = "ultrapower.report/v1";

// Emitters tag each document with its schema; parsers tolerate a missing
// schema field but reject a wrong one. All parse failures, including
// malformed JSON shapes, surface as ParseError.

nlohmann::json descriptor_to_json(const OrderedSetPtr& set);
OrderedSetPtr descriptor_from_json(const nlohmann::json& j);

// Elements serialize per carrier kind: finite as the label string,
// integers as decimal strings, rationals as "n" or "n/d", lex pairs as
// two-element arrays. Plain JSON integers are accepted on input.
nlohmann::json element_to_json(const Element& x);
Element element_from_json(const OrderedSetPtr& set, const nlohmann::json& j);

nlohmann::json epset_to_json(const EPSet& k);
EPSet epset_from_json(const nlohmann::json& j);

nlohmann::json seq_to_json(const EPSeq& s);
EPSeq seq_from_json(const nlohmann::json& j);

nlohmann::json chain_to_json(const ChainDescriptor& chain);
ChainDescriptor chain_from_json(const nlohmann::json& j);

nlohmann::json elements_to_json(const OrderedSetPtr& set, const std::vector<Element>& xs);
std::pair<OrderedSetPtr, std::vector<Element>> elements_from_json(const nlohmann::json& j);

nlohmann::json selector_to_json(const ResidueSelector& s);
ResidueSelector selector_from_json(const nlohmann::json& j);

// Opaque certificate sides are embedded as value samples at exactly the
// indices a verifier would touch, so documents are re-checkable offline.
nlohmann::json certificate_to_json(const UltrafilterTrace& u, const Certificate& c);
nlohmann::json certificate_report_to_json(const CertificateReport& r);
nlohmann::json trace_to_json(const UltrafilterTrace& u, const WitnessTrace& t);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_string(std::string_view bytes);

std::string read_file(const std::string& path);
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
void require_schema(const nlohmann::json& j, std::string_view expected);

// Sorted keys and a fixed indent, so equal documents give equal bytes.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace ultrapower
