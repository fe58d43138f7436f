// epicheck: evaluate knowledge/unawareness operators over finite
// possibility-correspondence models, check the property catalog, trace the
// impossibility and preservation chains, generate seeded models, and fuzz
// for property counterexamples.
//
// Exit codes: 0 success (check: all properties hold; trace: chain preserved
// or trivially consistent; fuzz: counterexample found), 1 check/trace
// failure verdicts, 2 usage or input errors, 3 fuzz found no counterexample.
// Diagnostics go to stderr; data goes to stdout.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epi/epi.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

epi::Model load_model(const std::string& path) {
  epi::ParseResult parsed = epi::parse_model(read_input(path));
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics)
      std::cerr << path << ":" << d.line << ":" << d.column << ": "
                << d.message << "\n";
    throw UsageError("model file '" + path + "' did not parse");
  }
  return *parsed.model;
}

epi::Event parse_event_arg(const epi::StateSpace& space,
                           const std::string& literal) {
  epi::EventParse parsed = epi::parse_event_literal(space, literal);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics)
      std::cerr << "--event: column " << d.column << ": " << d.message << "\n";
    throw UsageError("event literal '" + literal + "' did not parse");
  }
  return *parsed.event;
}

epi::OperatorKind parse_kind(const std::string& name) {
  if (name == "std" || name == "standard") return epi::OperatorKind::standard;
  if (name == "rev" || name == "revised") return epi::OperatorKind::revised;
  throw UsageError("unknown kind '" + name + "' (expected std or rev)");
}

epi::ReportFormat parse_format(const std::string& name) {
  if (name == "text") return epi::ReportFormat::text;
  if (name == "structured") return epi::ReportFormat::structured;
  throw UsageError("unknown format '" + name +
                   "' (expected text or structured)");
}

epi::PropertyId parse_property(const std::string& name) {
  auto id = epi::property_from_string(name);
  if (!id) {
    std::string known;
    for (epi::PropertyId p : epi::kAllProperties) {
      if (!known.empty()) known += ", ";
      known += epi::to_string(p);
    }
    throw UsageError("unknown property '" + name + "' (known: " + known + ")");
  }
  return *id;
}

epi::ModelFamily parse_family(const std::string& name) {
  if (name == "general") return epi::ModelFamily::general;
  if (name == "partitional") return epi::ModelFamily::partitional;
  if (name == "reflexive") return epi::ModelFamily::reflexive;
  throw UsageError("unknown family '" + name +
                   "' (expected general, partitional or reflexive)");
}

// The six operator spellings, plus shell-friendly aliases for the primed
// forms.
struct OpSpec {
  epi::OperatorKind kind;
  enum class Fn { know, not_know, unaware } fn;
};

OpSpec parse_op(const std::string& name) {
  static const std::map<std::string, OpSpec> ops = {
      {"K", {epi::OperatorKind::standard, OpSpec::Fn::know}},
      {"K'", {epi::OperatorKind::revised, OpSpec::Fn::know}},
      {"Krev", {epi::OperatorKind::revised, OpSpec::Fn::know}},
      {"negK", {epi::OperatorKind::standard, OpSpec::Fn::not_know}},
      {"negK'", {epi::OperatorKind::revised, OpSpec::Fn::not_know}},
      {"negKrev", {epi::OperatorKind::revised, OpSpec::Fn::not_know}},
      {"U", {epi::OperatorKind::standard, OpSpec::Fn::unaware}},
      {"U'", {epi::OperatorKind::revised, OpSpec::Fn::unaware}},
      {"Urev", {epi::OperatorKind::revised, OpSpec::Fn::unaware}},
  };
  auto it = ops.find(name);
  if (it == ops.end())
    throw UsageError("unknown operator '" + name +
                     "' (expected K, K', negK, negK', U or U'; Krev/negKrev/"
                     "Urev are accepted aliases)");
  return it->second;
}

int run_eval(const std::string& model_path, const std::string& op_name,
             const std::string& event_literal, bool verbose,
             const std::string& format_name) {
  const epi::Model model = load_model(model_path);
  const epi::ReportFormat format = parse_format(format_name);
  const OpSpec op = parse_op(op_name);
  const epi::Event event = parse_event_arg(model.space(), event_literal);
  const auto& space = model.space();

  epi::Event result = space.empty_event();
  std::optional<epi::FixpointTrace> trace;
  switch (op.fn) {
    case OpSpec::Fn::know:
      result = epi::know(model, op.kind, event);
      break;
    case OpSpec::Fn::not_know:
      result = epi::not_know(model, op.kind, event);
      break;
    case OpSpec::Fn::unaware:
      trace = epi::unaware(model, op.kind, event);
      result = trace->result;
      break;
  }

  if (format == epi::ReportFormat::structured) {
    nlohmann::json doc;
    doc["format"] = 1;
    doc["op"] = op_name;
    doc["kind"] = epi::to_string(op.kind);
    doc["event"] = epi::event_to_json(space, event);
    doc["result"] = epi::event_to_json(space, result);
    if (trace && verbose) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& term : trace->terms)
        terms.push_back(epi::event_to_json(space, term));
      doc["terms"] = terms;
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  if (trace && verbose) {
    for (std::size_t i = 0; i < trace->terms.size(); ++i)
      std::cout << "term " << (i + 1) << " = "
                << epi::render_event(space, trace->terms[i]) << "\n";
  }
  std::cout << epi::render_event(space, result) << "\n";
  return 0;
}

int run_check(const std::string& model_path, const std::string& kind_name,
              const std::vector<std::string>& property_names,
              std::uint32_t samples, std::uint64_t seed,
              const std::string& format_name) {
  const epi::Model model = load_model(model_path);
  const epi::OperatorKind kind = parse_kind(kind_name);
  const epi::ReportFormat format = parse_format(format_name);

  epi::CheckBudget budget;
  budget.samples = samples;
  budget.seed = seed;

  std::vector<epi::PropertyReport> reports;
  if (property_names.empty()) {
    reports = epi::check_all(model, kind, budget);
  } else {
    for (const auto& name : property_names)
      reports.push_back(
          epi::check_property(model, kind, parse_property(name), budget));
  }

  std::cout << epi::render_report(model.space(), reports, format);
  for (const auto& report : reports)
    if (!report.holds) return 1;
  return 0;
}

int run_trace(const std::string& model_path, const std::string& chain,
              const std::string& event_literal,
              const std::string& format_name) {
  const epi::Model model = load_model(model_path);
  const epi::ReportFormat format = parse_format(format_name);

  epi::DerivationTrace trace;
  if (chain == "dlr") {
    if (event_literal.empty())
      throw UsageError("--chain dlr requires --event");
    trace = epi::trace_standard_chain(
        model, parse_event_arg(model.space(), event_literal));
  } else if (chain == "rdlr") {
    if (!event_literal.empty())
      throw UsageError("--chain rdlr takes no --event");
    trace = epi::trace_revised_chain(model);
  } else {
    throw UsageError("unknown chain '" + chain + "' (expected dlr or rdlr)");
  }

  std::cout << epi::render_report(model.space(), trace, format);
  return (trace.verdict == epi::TraceVerdict::preserved ||
          trace.verdict == epi::TraceVerdict::trivially_consistent)
             ? 0
             : 1;
}

int run_gen(unsigned states, std::uint64_t seed, double density,
            double p_empty, const std::string& family_name) {
  epi::GeneratorParams params;
  params.n_states = states;
  params.seed = seed;
  params.density = density;
  params.p_empty = p_empty;
  params.family = parse_family(family_name);
  std::cout << epi::render_model(epi::generate_model(params));
  return 0;
}

int run_fuzz(std::uint32_t models, unsigned states, std::uint64_t seed,
             const std::string& kind_name, const std::string& property_name,
             double density, double p_empty, const std::string& family_name,
             const std::string& format_name) {
  const epi::OperatorKind kind = parse_kind(kind_name);
  const epi::PropertyId property = parse_property(property_name);
  const epi::ReportFormat format = parse_format(format_name);
  const epi::ModelFamily family = parse_family(family_name);

  epi::SplitMix64 master(seed);
  for (std::uint32_t i = 0; i < models; ++i) {
    epi::GeneratorParams params;
    params.n_states = states;
    params.density = density;
    params.p_empty = p_empty;
    params.family = family;
    params.seed = master.next();
    const epi::Model model = epi::generate_model(params);
    const epi::PropertyReport report =
        epi::check_property(model, kind, property);
    if (report.holds) continue;

    if (format == epi::ReportFormat::structured) {
      nlohmann::json doc;
      doc["format"] = 1;
      doc["model_index"] = i;
      doc["model_seed"] = params.seed;
      doc["model"] = epi::render_model(model);
      doc["report"] = epi::report_to_json(model.space(), report);
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "counterexample (model " << i << ", seed " << params.seed
                << "):\n"
                << epi::render_model(model)
                << epi::render_report(model.space(), {report}, format);
    }
    return 0;
  }
  std::cerr << "no counterexample found in " << models << " models\n";
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "epicheck: knowledge and unawareness operators over finite "
      "possibility-correspondence models"};
  app.require_subcommand(1);

  std::string model_path;
  std::string format_name = "text";
  std::string op_name;
  std::string event_literal;
  bool verbose = false;
  std::string kind_name = "std";
  std::vector<std::string> property_names;
  std::uint32_t samples = 4096;
  std::uint64_t seed = 1;
  std::string chain;
  unsigned states = 4;
  double density = 0.5;
  double p_empty = 0.0;
  std::string family_name = "general";
  std::uint32_t fuzz_models = 1000;
  std::string fuzz_property;

  auto* eval = app.add_subcommand(
      "eval", "evaluate one operator application on a model");
  eval->add_option("model", model_path, "model file path, or - for stdin")
      ->required();
  eval->add_option("--op", op_name, "operator: K, K', negK, negK', U, U'")
      ->required();
  eval->add_option("--event", event_literal, "event literal, e.g. \"{a,b}\"")
      ->required();
  eval->add_flag("--verbose", verbose,
                 "for U/U': also print the fixpoint terms");
  eval->add_option("--format", format_name, "text or structured");

  auto* check =
      app.add_subcommand("check", "check properties of a model");
  check->add_option("model", model_path, "model file path, or - for stdin")
      ->required();
  check->add_option("--kind", kind_name, "operator kind: std or rev")
      ->required();
  check->add_option("--property", property_names,
                    "property id (repeatable; default: all)");
  check->add_option("--samples", samples,
                    "sample count used above the exhaustive caps");
  check->add_option("--seed", seed, "sampling seed");
  check->add_option("--format", format_name, "text or structured");

  auto* trace = app.add_subcommand(
      "trace", "trace the impossibility chain (dlr) or revised chain (rdlr)");
  trace->add_option("model", model_path, "model file path, or - for stdin")
      ->required();
  trace->add_option("--chain", chain, "dlr or rdlr")->required();
  trace->add_option("--event", event_literal,
                    "event literal (required for dlr, forbidden for rdlr)");
  trace->add_option("--format", format_name, "text or structured");

  auto* gen = app.add_subcommand("gen", "generate a seeded random model");
  gen->add_option("--states", states, "number of states (1..64)")->required();
  gen->add_option("--seed", seed, "generator seed")->required();
  gen->add_option("--density", density, "membership probability [0,1]");
  gen->add_option("--p-empty", p_empty, "empty-image probability [0,1]");
  gen->add_option("--family", family_name,
                  "general, partitional or reflexive");

  auto* fuzz = app.add_subcommand(
      "fuzz", "search seeded random models for a property counterexample");
  fuzz->add_option("--models", fuzz_models, "number of models to try")
      ->required();
  fuzz->add_option("--states", states, "number of states (1..64)")->required();
  fuzz->add_option("--seed", seed, "search seed")->required();
  fuzz->add_option("--kind", kind_name, "operator kind: std or rev")
      ->required();
  fuzz->add_option("--property", fuzz_property, "property id to attack")
      ->required();
  fuzz->add_option("--density", density, "membership probability [0,1]");
  fuzz->add_option("--p-empty", p_empty, "empty-image probability [0,1]");
  fuzz->add_option("--family", family_name,
                   "general, partitional or reflexive");
  fuzz->add_option("--format", format_name, "text or structured");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eval->parsed())
      return run_eval(model_path, op_name, event_literal, verbose,
                      format_name);
    if (check->parsed())
      return run_check(model_path, kind_name, property_names, samples, seed,
                       format_name);
    if (trace->parsed())
      return run_trace(model_path, chain, event_literal, format_name);
    if (gen->parsed())
      return run_gen(states, seed, density, p_empty, family_name);
    if (fuzz->parsed())
      return run_fuzz(fuzz_models, states, seed, kind_name, fuzz_property,
                      density, p_empty, family_name, format_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
