#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cbiont/ingest.hpp"
#include "cbiont/query.hpp"
#include "cbiont/reasoner.hpp"
#include "cbiont/schema.hpp"
#include "support.hpp"

using namespace cbiont;
using namespace testsupport;
namespace v = vocab;

namespace {

// ---------------------------------------------------------------------------
// Independent oracle: enumerate every assignment of the query's variables
// over the terms occurring in the graph, keep the assignments under which all
// patterns are present and all filters hold, project, deduplicate, sort.
// ---------------------------------------------------------------------------

std::vector<Term> term_universe(const Graph& g) {
  std::set<Term> seen;
  for (const Triple& t : g) {
    seen.insert(Term(t.subject));
    seen.insert(Term(t.predicate));
    seen.insert(t.object);
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::string> query_variables(const SelectQuery& q) {
  std::set<std::string> names;
  for (const TriplePattern& p : q.patterns)
    for (const PatternTerm* pt : {&p.subject, &p.predicate, &p.object})
      if (const auto* var = std::get_if<Variable>(pt)) names.insert(var->name);
  return {names.begin(), names.end()};
}

std::vector<BindingSet> exhaustive_oracle(const SelectQuery& q, const Graph& g) {
  const std::vector<Term> universe = term_universe(g);
  const std::vector<std::string> vars = query_variables(q);

  std::set<std::vector<Term>> rows;

  std::map<std::string, Term> assignment;
  auto satisfied = [&]() {
    for (const TriplePattern& p : q.patterns) {
      auto ground = [&](const PatternTerm& pt) -> const Term& {
        if (const auto* var = std::get_if<Variable>(&pt)) return assignment.at(var->name);
        return std::get<Term>(pt);
      };
      const Term& s = ground(p.subject);
      const Term& pr = ground(p.predicate);
      const Term& o = ground(p.object);
      if (!s.is_iri() || !pr.is_iri()) return false;
      if (!g.contains(Triple(s.iri(), pr.iri(), o))) return false;
    }
    for (const Filter& f : q.filters) {
      const bool ok = std::visit(
          [&](const auto& filter) {
            const Term& bound = assignment.at(filter.var.name);
            using F = std::decay_t<decltype(filter)>;
            if constexpr (std::is_same_v<F, EqualityFilter>) {
              return bound == filter.value;
            } else {
              return std::find(filter.allowed.begin(), filter.allowed.end(), bound) !=
                     filter.allowed.end();
            }
          },
          f);
      if (!ok) return false;
    }
    return true;
  };

  auto enumerate = [&](auto&& self, std::size_t index) -> void {
    if (index == vars.size()) {
      if (!satisfied()) return;
      std::vector<Term> row;
      for (const Variable& var : q.projection) row.push_back(assignment.at(var.name));
      rows.insert(std::move(row));
      return;
    }
    for (const Term& term : universe) {
      assignment.emplace(vars[index], term);
      self(self, index + 1);
      assignment.erase(vars[index]);
    }
  };
  if (!universe.empty() || vars.empty()) enumerate(enumerate, 0);

  std::vector<BindingSet> out;
  for (const std::vector<Term>& row : rows) {
    std::vector<std::pair<Variable, Term>> entries;
    for (std::size_t i = 0; i < row.size(); ++i) entries.emplace_back(q.projection[i], row[i]);
    out.push_back(BindingSet(std::move(entries)));
  }
  return out;
}

bool same_rows(const std::vector<BindingSet>& a, const std::vector<BindingSet>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

// Random 1..3-pattern queries over a small vocabulary, sharing variables.
SelectQuery random_query(std::mt19937& rng, const Graph& g) {
  const std::vector<Term> universe = term_universe(g);
  std::uniform_int_distribution<int> pattern_count(1, 3);
  std::uniform_int_distribution<int> var_pick(0, 2);
  std::uniform_int_distribution<int> pct(0, 99);
  static const char* names[3] = {"x", "y", "z"};

  auto pick_term = [&]() -> Term {
    if (universe.empty()) return Term(pool_iri(rng));
    std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
    return universe[pick(rng)];
  };

  SelectQuery q;
  std::set<std::string> used;
  const int n = pattern_count(rng);
  for (int i = 0; i < n; ++i) {
    auto position = [&](bool object_position) -> PatternTerm {
      if (pct(rng) < 45) {
        const char* name = names[var_pick(rng)];
        used.insert(name);
        return Variable{name};
      }
      Term t = pick_term();
      if (!object_position && !t.is_iri()) return Variable{names[var_pick(rng)]};
      return t;
    };
    PatternTerm s = position(false), p = position(false), o = position(true);
    // Re-collect any variables introduced by the literal fallback above.
    for (const PatternTerm* pt : {&s, &p, &o})
      if (const auto* var = std::get_if<Variable>(pt)) used.insert(var->name);
    q.patterns.push_back(TriplePattern{std::move(s), std::move(p), std::move(o)});
  }

  std::vector<std::string> used_list(used.begin(), used.end());
  if (!used_list.empty()) {
    std::shuffle(used_list.begin(), used_list.end(), rng);
    std::uniform_int_distribution<std::size_t> proj_count(1, used_list.size());
    const std::size_t k = proj_count(rng);
    for (std::size_t i = 0; i < k; ++i) q.projection.push_back(Variable{used_list[i]});
    std::sort(q.projection.begin(), q.projection.end());

    if (pct(rng) < 30) {
      const Variable var{used_list[0]};
      if (pct(rng) < 50) {
        q.filters.push_back(EqualityFilter{var, pick_term()});
      } else {
        q.filters.push_back(InSetFilter{var, {pick_term(), pick_term(), pick_term()}});
      }
    }
  }
  return q;
}

Graph dense_graph(std::mt19937& rng, std::size_t max_triples) {
  std::uniform_int_distribution<std::size_t> size(1, max_triples);
  Graph g;
  const std::size_t n = size(rng);
  for (std::size_t i = 0; i < n; ++i)
    g.insert(Triple(pool_iri(rng, 10), pool_iri(rng, 5), pool_term(rng, 30)));
  return g;
}

SelectQuery parse_ok(const std::string& text) {
  auto q = parse_query(text);
  if (!q.ok()) FAIL(q.error().to_string());
  return std::move(q.value());
}

ParseError parse_bad(const std::string& text) {
  auto q = parse_query(text);
  REQUIRE_FALSE(q.ok());
  return q.error();
}

}  // namespace

TEST_CASE("evaluate on the empty graph returns nothing") {
  SelectQuery q;
  q.projection = {Variable{"s"}};
  q.patterns = {TriplePattern{Variable{"s"}, Term(v::rdf_type()), Term(v::cbi_session())}};
  CHECK(evaluate(q, Graph{}).empty());
}

TEST_CASE("evaluate matches the exhaustive oracle on random instances") {
  std::mt19937 rng(20240312);
  for (int round = 0; round < 100; ++round) {
    CAPTURE(round);
    const Graph g = dense_graph(rng, 100);
    const SelectQuery q = random_query(rng, g);
    const auto expected = exhaustive_oracle(q, g);
    const auto actual = evaluate(q, g);
    CHECK(same_rows(actual, expected));
  }
}

TEST_CASE("join order never affects the result set") {
  std::mt19937 rng(555);
  for (int round = 0; round < 30; ++round) {
    const Graph g = dense_graph(rng, 80);
    SelectQuery q = random_query(rng, g);
    const auto reference = evaluate(q, g);
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      std::shuffle(q.patterns.begin(), q.patterns.end(), rng);
      CHECK(same_rows(evaluate(q, g), reference));
    }
  }
}

TEST_CASE("projection soundness: rows substituted into patterns are present") {
  std::mt19937 rng(808);
  for (int round = 0; round < 30; ++round) {
    const Graph g = dense_graph(rng, 80);
    SelectQuery q = random_query(rng, g);
    // Project every variable so rows determine full assignments.
    q.projection.clear();
    for (const std::string& name : query_variables(q)) q.projection.push_back(Variable{name});
    if (q.projection.empty()) continue;
    for (const BindingSet& row : evaluate(q, g)) {
      for (const TriplePattern& p : q.patterns) {
        auto ground = [&](const PatternTerm& pt) -> Term {
          if (const auto* var = std::get_if<Variable>(&pt)) return *row.find(*var);
          return std::get<Term>(pt);
        };
        const Term s = ground(p.subject), pr = ground(p.predicate), o = ground(p.object);
        REQUIRE(s.is_iri());
        REQUIRE(pr.is_iri());
        CHECK(g.contains(Triple(s.iri(), pr.iri(), o)));
      }
    }
  }
}

TEST_CASE("ground queries act as containment checks") {
  Graph g;
  g.insert(Triple(Iri("http://x/s"), Iri("http://x/p"), Term(Iri("http://x/o"))));
  SelectQuery q;
  q.patterns = {TriplePattern{Term(Iri("http://x/s")), Term(Iri("http://x/p")),
                              Term(Iri("http://x/o"))}};
  CHECK(evaluate(q, g).size() == 1);  // one empty row
  CHECK(evaluate(q, g)[0].entries().empty());
  q.patterns.push_back(
      TriplePattern{Term(Iri("http://x/s")), Term(Iri("http://x/p")), Term(Iri("http://x/z"))});
  CHECK(evaluate(q, g).empty());
}

TEST_CASE("repeated variables within a pattern must agree") {
  Graph g;
  g.insert(Triple(Iri("http://x/a"), Iri("http://x/p"), Term(Iri("http://x/a"))));
  g.insert(Triple(Iri("http://x/a"), Iri("http://x/p"), Term(Iri("http://x/b"))));
  SelectQuery q;
  q.projection = {Variable{"n"}};
  q.patterns = {TriplePattern{Variable{"n"}, Term(Iri("http://x/p")), Variable{"n"}}};
  const auto rows = evaluate(q, g);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].entries()[0].second == Term(Iri("http://x/a")));
}

TEST_CASE("parse_query grammar") {
  const SelectQuery q = parse_ok("SELECT ?s WHERE { ?s a cbiont:CBI_Session }");
  REQUIRE(q.patterns.size() == 1);
  CHECK(std::get<Term>(q.patterns[0].predicate) == Term(v::rdf_type()));
  CHECK(std::get<Term>(q.patterns[0].object) == Term(v::cbi_session()));
  CHECK(q.projection.size() == 1);
  CHECK(q.projection[0].name == "s");

  const SelectQuery multi = parse_ok(
      "SELECT ?s ?k WHERE {\n"
      "  ?s cbiont:contains_remark ?r .\n"
      "  ?r cbiont:hasRemark ?k .\n"
      "  FILTER(?k = \"Comment\")\n"
      "}");
  CHECK(multi.patterns.size() == 2);
  REQUIRE(multi.filters.size() == 1);
  const auto* eq = std::get_if<EqualityFilter>(&multi.filters[0]);
  REQUIRE(eq != nullptr);
  CHECK(eq->var.name == "k");
  CHECK(eq->value == Term(Literal::string("Comment")));

  const SelectQuery in_set = parse_ok(
      "SELECT ?k WHERE { ?r cbiont:hasRemark ?k FILTER(?k IN (\"Question\", \"Answer\")) }");
  REQUIRE(in_set.filters.size() == 1);
  const auto* in = std::get_if<InSetFilter>(&in_set.filters[0]);
  REQUIRE(in != nullptr);
  CHECK(in->allowed.size() == 2);

  // Bracketed IRIs and trailing dot both parse.
  parse_ok("SELECT ?s WHERE { ?s <http://x/p> ?o . }");
}

TEST_CASE("parse_query error cases") {
  CHECK(parse_bad("SELECT ?x WHERE { }").kind == ParseErrorKind::semantic);
  CHECK(parse_bad("SELECT WHERE { ?s ?p ?o }").message.find("projection") != std::string::npos);
  const ParseError unused = parse_bad("SELECT ?ghost WHERE { ?s ?p ?o }");
  CHECK(unused.kind == ParseErrorKind::semantic);
  CHECK(unused.message.find("ghost") != std::string::npos);
  CHECK(parse_bad("SELECT ?s WHERE { ?s ?p ?o FILTER(?ghost = \"x\") }").kind ==
        ParseErrorKind::semantic);
  CHECK(parse_bad("ASK { ?s ?p ?o }").message.find("SELECT") != std::string::npos);
  CHECK(parse_bad("SELECT ?s WHERE { ?s unknown:p ?o }").kind == ParseErrorKind::semantic);
  CHECK(parse_bad("SELECT ?s WHERE { \"lit\" ?p ?o }").kind == ParseErrorKind::syntactic);
  CHECK(parse_bad("SELECT ?s WHERE { ?s ?p ?o } trailing").message.find("after query") !=
        std::string::npos);
}

TEST_CASE("competency catalog ids") {
  CHECK_THROWS_AS(competency_query(0, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(competency_query(9, std::nullopt), std::invalid_argument);
  for (int id = 1; id <= 8; ++id) {
    const SelectQuery with_session = competency_query(id, Iri("http://x/s"));
    CHECK_FALSE(with_session.projection.empty());
    CHECK_FALSE(with_session.patterns.empty());
    const SelectQuery open = competency_query(id, std::nullopt);
    CHECK(open.projection[0].name == "session");
    CHECK_FALSE(competency_question(id).empty());
  }
}

namespace {

// Ingested + materialized reference fixture, the CQ test bed.
struct Fixture {
  MintingScheme scheme = MintingScheme::standard();
  Graph kb;
  Iri session = Iri("http://bi4people.org/data/cbiont/session/insee-2024-03");

  Fixture() {
    auto rec = parse_session(read_file(fixture_path("reference_session.json")));
    REQUIRE(rec.ok());
    merge_into(kb, fixed_individuals(scheme));
    merge_into(kb, session_to_triples(rec.value(), scheme));
    kb = materialize(kb, build_schema());
  }

  std::vector<std::vector<std::string>> run(int id) {
    const SelectQuery q = competency_query(id, session);
    std::vector<std::vector<std::string>> out;
    for (const BindingSet& row : evaluate(q, kb)) {
      std::vector<std::string> rendered;
      for (const auto& [var, term] : row.entries()) rendered.push_back(term.ntriples());
      out.push_back(std::move(rendered));
    }
    return out;
  }
};

}  // namespace

TEST_CASE("competency questions on the reference fixture return the hand-derived rows") {
  Fixture fx;
  const std::string data = "http://bi4people.org/data/cbiont/";
  const std::string ont = "http://bi4people.org/ontology/cbiont#";

  // CQ1: location.
  CHECK(fx.run(1) ==
        std::vector<std::vector<std::string>>{{"<" + data + "place/Lyon>"}});

  // CQ2: date/time literal.
  CHECK(fx.run(2) == std::vector<std::vector<std::string>>{
                         {"\"2024-03-12T09:30:00Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime>"}});

  // CQ3: only the affiliated collaborator appears (no OPTIONAL support).
  CHECK(fx.run(3) == std::vector<std::vector<std::string>>{
                         {"<" + data + "agent/alice>", "<" + data + "agent/eric-lab>"}});

  // CQ4: the one remark of kind Answer.
  CHECK(fx.run(4) == std::vector<std::vector<std::string>>{
                         {"<" + data + "session/insee-2024-03/remark/2>",
                          "\"Auvergne-Rhone-Alpes, mostly Lyon.\""}});

  // CQ5: the form individual under its leaf class and the hub class.
  CHECK(fx.run(5) == std::vector<std::vector<std::string>>{
                         {"<" + data + "form/report_centric_discussion>", "<" + ont + "CBI_Form>"},
                         {"<" + data + "form/report_centric_discussion>",
                          "<" + ont + "Report_Centric_Discussion>"}});

  // CQ6: all three remark texts, sorted.
  CHECK(fx.run(6) == std::vector<std::vector<std::string>>{
                         {"\"Add a per-city breakdown next time.\""},
                         {"\"Auvergne-Rhone-Alpes, mostly Lyon.\""},
                         {"\"Which region drives the increase?\""}});

  // CQ7: research aspect individual.
  CHECK(fx.run(7) == std::vector<std::vector<std::string>>{
                         {"<" + data + "aspect/collaborative_data_presentation>"}});

  // CQ8: phase individual.
  CHECK(fx.run(8) ==
        std::vector<std::vector<std::string>>{{"<" + data + "phase/decision>"}});
}

TEST_CASE("CQ1 on a session without location returns no rows") {
  Fixture fx;
  const SelectQuery q = competency_query(1, Iri("http://bi4people.org/data/cbiont/session/ghost"));
  CHECK(evaluate(q, fx.kb).empty());
}

TEST_CASE("owned_by competency lookup returns every collaborator") {
  Fixture fx;
  SelectQuery q;
  q.projection = {Variable{"c"}};
  q.patterns = {TriplePattern{Term(fx.session), Term(v::owned_by()), Variable{"c"}}};
  const auto rows = evaluate(q, fx.kb);
  REQUIRE(rows.size() == 3);
  const std::string data = "http://bi4people.org/data/cbiont/";
  CHECK(rows[0].entries()[0].second == Term(Iri(data + "agent/alice")));
  CHECK(rows[1].entries()[0].second == Term(Iri(data + "agent/bob")));
  CHECK(rows[2].entries()[0].second == Term(Iri(data + "agent/eric-lab")));
}

TEST_CASE("result formatting") {
  SelectQuery q;
  q.projection = {Variable{"a"}, Variable{"b"}};
  std::vector<BindingSet> rows;
  rows.push_back(BindingSet({{Variable{"a"}, Term(Iri("http://x/1"))},
                             {Variable{"b"}, Term(Literal::string("v"))}}));
  CHECK(results_tsv(q, rows) == "?a\t?b\n<http://x/1>\t\"v\"\n");
  const std::string json = results_json(q, rows);
  CHECK(json.find("\"a\": \"<http://x/1>\"") != std::string::npos);
  CHECK(json.find("\"b\": \"\\\"v\\\"\"") != std::string::npos);
}
