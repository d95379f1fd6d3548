#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance_suite.hpp"
#include "flagnest/classifier.hpp"
#include "flagnest/cohomology.hpp"
#include "flagnest/constructions.hpp"
#include "flagnest/errors.hpp"

namespace flagnest::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string format = "text";
  bool trace = false;
  std::string out_file;
  unsigned threads = 0;

  std::string diagram;
  std::string marked;
  std::string unmark;

  int max_rank = 0;
  std::string mode = "singletons";

  std::string variety;

  std::string construction;
  int n = 0;
  int trials = 100;
  std::uint64_t seed = 7;
};

json with_schema(const std::string& command, const json& body) {
  json doc = json::object();
  doc["schema"] = kSchema;
  doc["command"] = command;
  for (const auto& [k, v] : body.items()) doc[k] = v;
  return doc;
}

// Node labels are given on the raw diagram and moved to its canonical form (C2 -> B2, D3 -> A3).
NodeSet relabel(const std::string& diagram, const std::string& nodes) {
  return MarkedDiagram::parse(diagram + node_set_string(parse_node_set(nodes))).marked;
}

void write_decision_text(std::ostream& os, const NestingDecision& d, bool full) {
  os << "query  " << d.query.to_string() << "\n";
  os << "result " << to_string(d.result) << "\n";
  os << "trace\n";
  for (std::size_t i = 0; i < d.trace.size(); ++i) {
    const TraceStep& s = d.trace[i];
    std::string indent(static_cast<std::size_t>(2 * s.depth) + 2, ' ');
    os << indent << (i + 1) << ". " << s.rule << " [" << to_string(s.kind) << "]";
    if (s.proof_pattern) os << " (proof pattern)";
    os << "\n";
    if (full) {
      os << indent << "   anchor: " << s.anchor << "\n";
      if (!s.data.empty()) os << indent << "   data: " << s.data.dump() << "\n";
    }
  }
}

int do_classify(const Options& o, std::ostream& os) {
  DynkinDiagram d = DynkinDiagram::parse(o.diagram);
  NestingQuery q = NestingQuery::make(d, relabel(o.diagram, o.marked), relabel(o.diagram, o.unmark));
  NestingDecision dec = classify(q);
  if (o.format == "json")
    os << with_schema("classify", dec.to_json()).dump(2) << "\n";
  else
    write_decision_text(os, dec, o.trace);
  return kExitOk;
}

int do_enumerate(const Options& o, std::ostream& os) {
  EnumerationReport rep = enumerate(o.max_rank, parse_enumeration_mode(o.mode), o.threads);
  if (o.format == "json") {
    os << with_schema("enumerate", rep.to_json()).dump(2) << "\n";
    return kExitOk;
  }
  os << "max rank " << rep.max_rank << ", mode " << to_string(rep.mode) << "\n";
  os << "queries " << rep.queries << ", exists " << rep.exists << ", not exists " << rep.not_exists
     << ", terminal failures " << rep.terminal_failures << "\n";
  os << "nestings up to automorphism (" << rep.exists_set.size() << "):\n";
  for (const auto& q : rep.exists_set) os << "  " << q.to_string() << "\n";
  if (o.trace) {
    os << "terminal rules:\n";
    for (const auto& [rule, count] : rep.terminal_rules) os << "  " << rule << " " << count << "\n";
  }
  return kExitOk;
}

json ledger_json(const DegreeLedger& l) {
  json j;
  j["generator_degrees"] = l.generator_degrees;
  j["relation_degrees"] = l.relation_degrees;
  j["max_generator_degree"] = l.max_generator_degree;
  j["min_relation_degree"] = l.min_relation_degree ? json(*l.min_relation_degree) : json(nullptr);
  return j;
}

int do_explain(const Options& o, std::ostream& os) {
  MarkedDiagram v = MarkedDiagram::parse(o.variety);
  GradedPresentation p = presentation(v);
  json body;
  body["presentation"] = p.to_json();
  body["degree_ledger"] = ledger_json(degree_ledger(p));
  body["dimension"] = variety_dimension(v);
  if (o.format == "json") {
    os << with_schema("explain", body).dump(2) << "\n";
    return kExitOk;
  }
  const json& pj = body["presentation"];
  os << "variety " << v.to_string() << ", dimension " << body["dimension"].dump() << "\n";
  os << "generators";
  for (const auto& g : pj["generators"]) os << " " << g["name"].get<std::string>() << ":" << g["degree"].dump();
  os << "\n";
  os << "relations " << pj["relations"].size() << "\n";
  if (o.trace)
    for (std::size_t i = 0; i < pj["relations"].size(); ++i)
      os << "  " << (i < p.labels.size() ? p.labels[i] + ": " : "") << pj["relations"][i].dump() << "\n";
  os << "degree ledger: generators " << body["degree_ledger"]["generator_degrees"].dump() << ", relations "
     << body["degree_ledger"]["relation_degrees"].dump() << "\n";
  return kExitOk;
}

int do_verify(const Options& o, std::ostream& os) {
  ConstructionKind kind = parse_construction(o.construction);
  int n = o.n;
  if (n == 0) n = kind == ConstructionKind::D ? 4 : (kind == ConstructionKind::B3 ? 3 : 2);
  SectionReport rep = verify_section(kind, n, o.trials, o.seed);
  bool ok = rep.passed == rep.trials;
  json body;
  body["section"] = rep.to_json();
  body["seed"] = o.seed;
  std::optional<OctonionLawReport> oct;
  if (kind == ConstructionKind::B3) {
    oct = verify_octonion_laws(o.trials, o.seed);
    json oj;
    oj["trials"] = oct->trials;
    oj["composition_failures"] = oct->composition_failures;
    oj["alternativity_failures"] = oct->alternativity_failures;
    oj["conjugation_failures"] = oct->conjugation_failures;
    if (oct->witness) oj["witness"] = *oct->witness;
    body["octonion_laws"] = oj;
    ok = ok && oct->ok();
  }
  body["verdict"] = ok ? "pass" : "fail";
  if (o.format == "json") {
    os << with_schema("verify-construction", body).dump(2) << "\n";
  } else {
    os << to_string(kind) << " n=" << n << " seed=" << o.seed << ": " << rep.passed << "/" << rep.trials
       << " section trials pass";
    if (oct)
      os << "; octonion law failures "
         << (oct->composition_failures + oct->alternativity_failures + oct->conjugation_failures) << "/"
         << oct->trials;
    os << "\n" << (ok ? "pass" : "fail") << "\n";
    if (rep.witness) os << "witness: " << rep.witness->dump() << "\n";
    if (oct && oct->witness) os << "octonion witness: " << oct->witness->dump() << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

int do_self_check(const Options& o, std::ostream& os) {
  auto results = acceptance::run_all(o.threads);
  bool ok = acceptance::exit_status(results) == 0;
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      json j;
      j["id"] = r.id;
      j["name"] = r.name;
      j["tolerance"] = r.tolerance;
      j["passed"] = r.passed;
      j["documented_failure"] = r.documented_failure;
      j["detail"] = r.detail;
      j["diagnostics"] = r.diagnostics;
      arr.push_back(j);
    }
    json body;
    body["criteria"] = arr;
    body["ok"] = ok;
    os << with_schema("self-check", body).dump(2) << "\n";
  } else {
    acceptance::print(os, results, false);
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Nestings of partial flag varieties: classification, obstructions and constructions", "flagnest"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--trace", o.trace, "Show anchors and data of every step");
  app.add_option("--out", o.out_file, "Write the report to a file");
  app.add_option("--threads", o.threads, "Worker threads for enumeration (0 = all cores)");

  auto* classify_cmd = app.add_subcommand("classify", "Decide one nesting (D, I, J)");
  classify_cmd->add_option("--diagram", o.diagram, "Diagram, e.g. D5")->required();
  classify_cmd->add_option("--marked", o.marked, "Marked nodes I, e.g. 4 or (1,3)")->required();
  classify_cmd->add_option("--unmark", o.unmark, "Extra nodes J, e.g. 5")->required();

  auto* enum_cmd = app.add_subcommand("enumerate", "Classify every query up to a rank");
  enum_cmd->add_option("--max-rank", o.max_rank, "Largest rank")->required()->check(CLI::Range(2, 64));
  enum_cmd->add_option("--mode", o.mode, "singletons or all-subsets")
      ->check(CLI::IsMember({"singletons", "all-subsets"}));

  auto* explain_cmd = app.add_subcommand("explain", "Cohomology presentation of a variety");
  explain_cmd->add_option("variety", o.variety, "Marked diagram, e.g. B3(3)")->required();

  auto* verify_cmd = app.add_subcommand("verify-construction", "Randomized exact check of a section");
  verify_cmd->add_option("kind", o.construction, "A, B3 or D")->required()->check(CLI::IsMember({"A", "B3", "D"}));
  verify_cmd->add_option("--n", o.n, "Rank (default 2 for A, 4 for D)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trials", o.trials, "Number of samples")->check(CLI::Range(1, 1000000));
  verify_cmd->add_option("--seed", o.seed, "Random seed");

  auto* self_cmd = app.add_subcommand("self-check", "Run the acceptance suite");

  for (auto* sub : {classify_cmd, enum_cmd, explain_cmd, verify_cmd, self_cmd}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (*classify_cmd) code = do_classify(o, buffer);
    else if (*enum_cmd) code = do_enumerate(o, buffer);
    else if (*explain_cmd) code = do_explain(o, buffer);
    else if (*verify_cmd) code = do_verify(o, buffer);
    else code = do_self_check(o, buffer);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const UnsupportedInput& e) {
    err << "unsupported input: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const PreconditionError& e) {
    err << "unsupported input: " << e.what() << "\n";
    return kExitUnsupported;
  }

  if (o.out_file.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(o.out_file, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.out_file << "\n";
      return kExitFailure;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace flagnest::cli
