#include "cbiont/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cbiont/ingest.hpp"
#include "cbiont/query.hpp"
#include "cbiont/reasoner.hpp"
#include "cbiont/schema.hpp"
#include "cbiont/turtle.hpp"

namespace cbiont::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kViolationsFound = 3;

struct DataAbort {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataAbort{"cannot open file: " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataAbort{"cannot write file: " + path};
  out << content;
  if (!out) throw DataAbort{"write failed: " + path};
}

Graph load_kb(const std::string& path) {
  auto parsed = parse_turtle(read_file(path));
  if (!parsed.ok()) throw DataAbort{path + ":" + parsed.error().to_string()};
  return std::move(parsed.value().graph);
}

// Serialization prefixes for knowledge-base files; the cbidata entry tracks
// the active minting base.
PrefixMap kb_prefixes(const MintingScheme& scheme) {
  PrefixMap prefixes = vocab::standard_prefixes();
  prefixes.insert_or_assign("cbidata", scheme.base());
  return prefixes;
}

struct SchemaExportArgs {
  std::string format = "turtle";
  std::string output;
};

struct IngestArgs {
  std::string input;
  std::string kb_out;
  std::string merge_with;
};

struct InferArgs {
  std::string kb_in;
  std::string out;
};

struct ValidateArgs {
  std::string kb_in;
  bool pedantic = false;
  bool json = false;
};

struct QueryArgs {
  std::string kb_in;
  std::string query_file;
  int cq_id = 0;
  std::string session;
  std::string format = "tsv";
};

int run_schema_export(const SchemaExportArgs& args, std::ostream& out) {
  const Graph schema = build_schema();
  const std::string text = args.format == "turtle"
                               ? serialize_turtle(schema, vocab::standard_prefixes())
                               : serialize_ntriples(schema);
  if (args.output.empty())
    out << text;
  else
    write_file(args.output, text);
  return kOk;
}

int run_ingest(const IngestArgs& args, std::ostream& err) {
  const MintingScheme scheme = MintingScheme::from_environment();
  Graph kb;
  if (!args.merge_with.empty()) kb = load_kb(args.merge_with);
  auto report = ingest_file(args.input, kb, scheme);
  if (!report.ok()) {
    const IngestError& e = report.error();
    err << args.input << ": " << (e.path.empty() ? "" : e.path + ": ") << e.message << "\n";
    return kDataError;
  }
  write_file(args.kb_out, serialize_turtle(kb, kb_prefixes(scheme)));
  err << report.value().to_string();
  return report.value().failed == 0 ? kOk : kDataError;
}

int run_infer(const InferArgs& args) {
  const Graph kb = load_kb(args.kb_in);
  const Graph materialized = materialize(kb, build_schema());
  write_file(args.out, serialize_turtle(materialized, kb_prefixes(MintingScheme::standard())));
  return kOk;
}

int run_validate(const ValidateArgs& args, std::ostream& out) {
  const Graph kb = load_kb(args.kb_in);
  const auto violations = validate(kb, build_schema(), args.pedantic);
  out << (args.json ? violations_json(violations) : violations_text(violations));
  for (const Violation& violation : violations)
    if (violation.is_error()) return kViolationsFound;
  return kOk;
}

int run_query(const QueryArgs& args, std::ostream& out) {
  const Graph kb = load_kb(args.kb_in);
  SelectQuery query;
  if (!args.query_file.empty()) {
    auto parsed = parse_query(read_file(args.query_file));
    if (!parsed.ok()) throw DataAbort{args.query_file + ":" + parsed.error().to_string()};
    query = std::move(parsed.value());
  } else {
    std::optional<Iri> session;
    if (!args.session.empty()) {
      if (!Iri::valid(args.session)) throw DataAbort{"--session is not a valid IRI: " + args.session};
      session = Iri(args.session);
    }
    query = competency_query(args.cq_id, session);
  }
  const auto rows = evaluate(query, kb);
  out << (args.format == "tsv" ? results_tsv(query, rows) : results_json(query, rows));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CBIOnt collaborative-session knowledge base"};
  app.name("cbiont");
  app.require_subcommand(1);

  SchemaExportArgs schema_args;
  CLI::App* schema = app.add_subcommand("schema", "Work with the built-in ontology");
  schema->require_subcommand(1);
  CLI::App* schema_export =
      schema->add_subcommand("export", "Print or write the ontology TBox");
  schema_export->add_option("--format", schema_args.format, "Output format")
      ->check(CLI::IsMember({"turtle", "ntriples"}))
      ->capture_default_str();
  schema_export->add_option("-o,--output", schema_args.output, "Output file (default: stdout)");

  IngestArgs ingest_args;
  CLI::App* ingest =
      app.add_subcommand("ingest", "Convert a JSON session export into a Turtle knowledge base");
  ingest->add_option("--input", ingest_args.input, "JSON session export")->required();
  ingest->add_option("--kb-out", ingest_args.kb_out, "Output Turtle file")->required();
  ingest->add_option("--merge-with", ingest_args.merge_with,
                     "Existing knowledge base to load first");

  InferArgs infer_args;
  CLI::App* infer = app.add_subcommand("infer", "Materialize inferences over a knowledge base");
  infer->add_option("--kb", infer_args.kb_in, "Input Turtle knowledge base")->required();
  infer->add_option("--out", infer_args.out, "Output Turtle file")->required();

  ValidateArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "Check constraints over a knowledge base");
  validate->add_option("--kb", validate_args.kb_in, "Input Turtle knowledge base")->required();
  validate->add_flag("--pedantic", validate_args.pedantic,
                     "Also warn on multi-leaf typing under one hub class");
  validate->add_flag("--json", validate_args.json, "Report violations as JSON");

  QueryArgs query_args;
  CLI::App* query = app.add_subcommand("query", "Run a query against a knowledge base");
  query->add_option("--kb", query_args.kb_in, "Input Turtle knowledge base")->required();
  CLI::Option* query_file =
      query->add_option("--query", query_args.query_file, "Query file (.rq-style)");
  CLI::Option* cq = query->add_option("--cq", query_args.cq_id, "Competency question id (1..8)")
                        ->check(CLI::Range(1, 8));
  query->add_option("--session", query_args.session, "Session IRI for --cq");
  query->add_option("--format", query_args.format, "Result format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  query_file->excludes(cq);
  cq->excludes(query_file);

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  std::string program = "cbiont";
  argv.push_back(program.data());
  for (std::string& arg : storage) argv.push_back(arg.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "cbiont: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (schema_export->parsed()) return run_schema_export(schema_args, out);
    if (ingest->parsed()) return run_ingest(ingest_args, err);
    if (infer->parsed()) return run_infer(infer_args);
    if (validate->parsed()) return run_validate(validate_args, out);
    if (query->parsed()) {
      if (query_args.query_file.empty() && query_args.cq_id == 0) {
        err << "cbiont: query requires --query or --cq\n";
        return kUsageError;
      }
      return run_query(query_args, out);
    }
  } catch (const DataAbort& abort) {
    err << "cbiont: " << abort.message << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "cbiont: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace cbiont::cli
