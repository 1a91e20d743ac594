#include <chrono>
#include <ctime>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultrapower/error.hpp"
#include "ultrapower/hyper.hpp"
#include "ultrapower/ordered_set.hpp"
#include "ultrapower/selector.hpp"
#include "ultrapower/serialize.hpp"
#include "ultrapower/ultrafilter.hpp"
#include "ultrapower/witness.hpp"

namespace {

using namespace ultrapower;

constexpr int kExitVerified = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitCertificate = 4;
constexpr int kExitResource = 5;

struct GlobalOptions {
  std::string selector_spec = "zero";
  std::uint64_t period_cap = kDefaultPeriodCap;
  bool no_timestamp = false;
};

struct NamedInput {
  std::string name;
  std::string bytes;
  nlohmann::json json;
};

struct RunResult {
  nlohmann::json outcome;
  int exit_code = kExitVerified;
};

NamedInput load_input(const std::string& name, const std::string& path,
                      std::string_view expected_schema) {
  NamedInput input;
  input.name = name;
  input.bytes = read_file(path);
  input.json = parse_json_text(input.bytes, path);
  require_schema(input.json, expected_schema);
  return input;
}

ResidueSelector parse_selector(const std::string& spec) {
  if (spec == "zero") return ResidueSelector::zero();
  if (spec == "minus-one") return ResidueSelector::minus_one();
  if (spec.rfind("profinite:", 0) == 0) {
    const std::string seed_text = spec.substr(10);
    try {
      std::size_t used = 0;
      const unsigned long long seed = std::stoull(seed_text, &used);
      if (used != seed_text.size() || seed_text.empty()) throw std::invalid_argument(seed_text);
      return ResidueSelector::profinite(seed);
    } catch (const std::exception&) {
      throw ParseError("bad profinite seed \"" + seed_text + "\"");
    }
  }
  if (spec.rfind("table:", 0) == 0) {
    const std::string path = spec.substr(6);
    const nlohmann::json j = parse_json_text(read_file(path), path);
    require_schema(j, kSelectorSchema);
    return selector_from_json(j);
  }
  throw ParseError("unknown selector \"" + spec +
                   "\"; expected zero, minus-one, profinite:<seed>, or table:<path>");
}

std::string now_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

int emit_report(const GlobalOptions& g, const ResidueSelector& selector,
                const std::string& command, const std::vector<NamedInput>& inputs,
                const RunResult& result,
                std::chrono::steady_clock::time_point started) {
  nlohmann::json digests = nlohmann::json::object();
  for (const NamedInput& input : inputs) digests[input.name] = digest_string(input.bytes);
  nlohmann::json report{{"schema", std::string(kReportSchema)},
                        {"command", command},
                        {"selector", selector_to_json(selector)},
                        {"period_cap", g.period_cap},
                        {"inputs", std::move(digests)},
                        {"outcome", result.outcome},
                        {"verified", result.exit_code == kExitVerified}};
  if (!g.no_timestamp) {
    report["timestamp"] = now_utc();
    report["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
  }
  std::cout << dump_canonical(report);
  return result.exit_code;
}

RunResult run_compare(const UltrafilterTrace& u, std::uint64_t cap, const NamedInput& lhs,
                      const NamedInput& rhs) {
  const EPSeq a = seq_from_json(lhs.json);
  const EPSeq b = seq_from_json(rhs.json);
  const auto verdict = hyper_compare(u, HyperPoint::from_seq(a), HyperPoint::from_seq(b), cap);
  std::string word;
  EPSet deciding = EPSet::naturals();
  if (verdict == std::strong_ordering::equal) {
    word = "equal";
    deciding = index_set_eq(a, b, cap);
  } else if (verdict == std::strong_ordering::less) {
    word = "less";
    deciding = index_set_lt(a, b, cap);
  } else {
    word = "greater";
    deciding = index_set_lt(b, a, cap);
  }
  return {{{"verdict", word}, {"deciding_index_set", epset_to_json(deciding)}}, kExitVerified};
}

RunResult run_cantor(const UltrafilterTrace& u, std::uint64_t cap, const NamedInput& input,
                     bool open_flag, std::uint64_t depth) {
  ChainDescriptor chain = chain_from_json(input.json);
  if (open_flag) {
    if (input.json.contains("strictness") && chain.strictness == Strictness::Closed) {
      throw ParseError("chain document declares a closed chain but --open was given");
    }
    chain.strictness = Strictness::Open;
  }
  if (depth > 0) {
    if (depth > chain.depth()) {
      throw ParseError("--depth " + std::to_string(depth) + " exceeds the chain depth " +
                       std::to_string(chain.depth()));
    }
    chain.levels.erase(chain.levels.begin() + static_cast<std::ptrdiff_t>(depth),
                       chain.levels.end());
  }
  const WitnessOptions options{cap};
  const WitnessTrace trace = chain.strictness == Strictness::Open
                                 ? open_cantor_witness(u, chain, options)
                                 : cantor_witness(u, chain, options);
  return {trace_to_json(u, trace), trace.all_verified() ? kExitVerified : kExitCertificate};
}

RunResult run_refute(const UltrafilterTrace& u, std::uint64_t cap, const std::string& mode,
                     const NamedInput& thresholds_input, const NamedInput& bound_input,
                     std::uint64_t depth) {
  auto [set, thresholds] = elements_from_json(thresholds_input.json);
  const EPSeq bound_seq = seq_from_json(bound_input.json);
  if (depth > 0) {
    if (depth > thresholds.size()) {
      throw ParseError("--depth " + std::to_string(depth) + " exceeds the threshold count " +
                       std::to_string(thresholds.size()));
    }
    thresholds.erase(thresholds.begin() + static_cast<std::ptrdiff_t>(depth), thresholds.end());
  }
  const WitnessOptions options{cap};
  const HyperPoint bound = HyperPoint::from_seq(bound_seq);
  const WitnessTrace trace = mode == "sup" ? sup_refuter(u, thresholds, bound, options)
                                           : inf_refuter(u, thresholds, bound, options);
  return {trace_to_json(u, trace), trace.all_verified() ? kExitVerified : kExitCertificate};
}

RunResult run_collapse(const UltrafilterTrace& u, std::uint64_t cap, const NamedInput& input) {
  const EPSeq a = seq_from_json(input.json);
  const CollapseOutcome outcome = finite_collapse(u, a, WitnessOptions{cap});
  nlohmann::json parts = nlohmann::json::array();
  for (const EPSet& part : outcome.parts) parts.push_back(epset_to_json(part));
  return {{{"constant", element_to_json(outcome.value)},
           {"part_index", outcome.part_index},
           {"parts", std::move(parts)}},
          kExitVerified};
}

RunResult run_check_axioms(const UltrafilterTrace& u, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw ParseError("--samples must be positive");
  AxiomCheckOptions options;
  options.samples = samples;
  options.seed = seed;
  const AxiomCheckResult result = check_ultrafilter_axioms(u, options);
  return {{{"samples", result.samples},
           {"violations",
            {{"superset_closure", result.violations[0]},
             {"intersection_closure", result.violations[1]},
             {"members_infinite", result.violations[2]},
             {"complement_dichotomy", result.violations[3]}}},
           {"passed", result.passed()}},
          result.passed() ? kExitVerified : kExitCertificate};
}

RunResult run_counterexample(const NamedInput& input, std::uint64_t depth) {
  const OrderedSetPtr set = descriptor_from_json(input.json);
  const auto found = density_counterexample(set, depth);
  if (!found) {
    return {{{"dense", true}, {"counterexample", nullptr}}, kExitVerified};
  }
  return {{{"dense", false},
           {"lower", element_to_json(found->lower)},
           {"upper", element_to_json(found->upper)},
           {"chain", chain_to_json(found->chain)}},
          kExitVerified};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decidable ultrapower order: comparisons, chain witnesses, refuters"};
  app.require_subcommand(1);

  GlobalOptions g;
  const auto add_common = [&g](CLI::App* sub) {
    sub->add_option("--selector", g.selector_spec,
                    "zero | minus-one | profinite:<seed> | table:<path>")
        ->capture_default_str();
    sub->add_option("--period-cap", g.period_cap, "largest aligned period materialized")
        ->capture_default_str();
    sub->add_flag("--no-timestamp", g.no_timestamp, "omit timestamp and wall time from the report");
  };

  int exit_code = kExitVerified;
  const auto dispatch = [&](const std::string& command,
                            const std::function<std::pair<std::vector<NamedInput>, RunResult>(
                                const ResidueSelector&, const UltrafilterTrace&)>& body) {
    const auto started = std::chrono::steady_clock::now();
    const ResidueSelector selector = parse_selector(g.selector_spec);
    const UltrafilterTrace u(selector);
    auto [inputs, result] = body(selector, u);
    exit_code = emit_report(g, selector, command, inputs, result, started);
  };

  std::string compare_lhs, compare_rhs;
  CLI::App* compare = app.add_subcommand("compare", "order two sequence classes");
  compare->add_option("lhs", compare_lhs, "sequence document")->required();
  compare->add_option("rhs", compare_rhs, "sequence document")->required();
  add_common(compare);
  compare->callback([&] {
    dispatch("compare", [&](const ResidueSelector&, const UltrafilterTrace& u) {
      std::vector<NamedInput> inputs;
      inputs.push_back(load_input("lhs", compare_lhs, kSeqSchema));
      inputs.push_back(load_input("rhs", compare_rhs, kSeqSchema));
      RunResult result = run_compare(u, g.period_cap, inputs[0], inputs[1]);
      return std::make_pair(std::move(inputs), std::move(result));
    });
  });

  std::string cantor_chain;
  bool cantor_open = false;
  std::uint64_t cantor_depth = 0;
  CLI::App* cantor = app.add_subcommand("cantor", "construct a common point of a chain");
  cantor->add_option("chain", cantor_chain, "chain document")->required();
  cantor->add_flag("--open", cantor_open, "treat the chain as open and pick interior points");
  cantor->add_option("--depth", cantor_depth, "use only the first K levels");
  add_common(cantor);
  cantor->callback([&] {
    dispatch("cantor", [&](const ResidueSelector&, const UltrafilterTrace& u) {
      std::vector<NamedInput> inputs;
      inputs.push_back(load_input("chain", cantor_chain, kChainSchema));
      RunResult result = run_cantor(u, g.period_cap, inputs[0], cantor_open, cantor_depth);
      return std::make_pair(std::move(inputs), std::move(result));
    });
  });

  std::string refute_mode, refute_thresholds, refute_bound;
  std::uint64_t refute_depth = 0;
  CLI::App* refute = app.add_subcommand("refute", "refute least upper / greatest lower bounds");
  refute->add_option("mode", refute_mode, "sup or inf")
      ->required()
      ->check(CLI::IsMember({"sup", "inf"}));
  refute->add_option("thresholds", refute_thresholds, "element list document")->required();
  refute->add_option("bound", refute_bound, "sequence document for the bound")->required();
  refute->add_option("--depth", refute_depth, "use only the first K thresholds");
  add_common(refute);
  refute->callback([&] {
    dispatch("refute", [&](const ResidueSelector&, const UltrafilterTrace& u) {
      std::vector<NamedInput> inputs;
      inputs.push_back(load_input("thresholds", refute_thresholds, kElementsSchema));
      inputs.push_back(load_input("bound", refute_bound, kSeqSchema));
      RunResult result =
          run_refute(u, g.period_cap, refute_mode, inputs[0], inputs[1], refute_depth);
      return std::make_pair(std::move(inputs), std::move(result));
    });
  });

  std::string collapse_seq;
  CLI::App* collapse = app.add_subcommand("collapse", "collapse a finite-carrier sequence");
  collapse->add_option("sequence", collapse_seq, "sequence document over a finite carrier")
      ->required();
  add_common(collapse);
  collapse->callback([&] {
    dispatch("collapse", [&](const ResidueSelector&, const UltrafilterTrace& u) {
      std::vector<NamedInput> inputs;
      inputs.push_back(load_input("sequence", collapse_seq, kSeqSchema));
      RunResult result = run_collapse(u, g.period_cap, inputs[0]);
      return std::make_pair(std::move(inputs), std::move(result));
    });
  });

  std::uint64_t axiom_samples = 1000;
  std::uint64_t axiom_seed = 0x5eed;
  CLI::App* axioms = app.add_subcommand("check-axioms", "randomized ultrafilter axiom suite");
  axioms->add_option("--samples", axiom_samples, "number of random EPSets")
      ->capture_default_str();
  axioms->add_option("--seed", axiom_seed, "generator seed")->capture_default_str();
  add_common(axioms);
  axioms->callback([&] {
    dispatch("check-axioms", [&](const ResidueSelector&, const UltrafilterTrace& u) {
      RunResult result = run_check_axioms(u, axiom_samples, axiom_seed);
      return std::make_pair(std::vector<NamedInput>{}, std::move(result));
    });
  });

  std::string counter_set;
  std::uint64_t counter_depth = 3;
  CLI::App* counter =
      app.add_subcommand("counterexample", "empty open hyper-interval of a non-dense carrier");
  counter->add_option("set", counter_set, "ordered set descriptor document")->required();
  counter->add_option("--depth", counter_depth, "levels in the constant chain")
      ->capture_default_str();
  add_common(counter);
  counter->callback([&] {
    dispatch("counterexample", [&](const ResidueSelector&, const UltrafilterTrace&) {
      std::vector<NamedInput> inputs;
      inputs.push_back(load_input("set", counter_set, kSetSchema));
      RunResult result = run_counterexample(inputs[0], counter_depth);
      return std::make_pair(std::move(inputs), std::move(result));
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const FalsifiedCertificateError& e) {
    std::cerr << "certificate error: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const InvalidCertificateError& e) {
    std::cerr << "certificate error: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
