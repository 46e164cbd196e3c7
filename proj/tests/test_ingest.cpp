#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "cbiont/ingest.hpp"
#include "cbiont/reasoner.hpp"
#include "cbiont/schema.hpp"
#include "support.hpp"

using namespace cbiont;
using namespace testsupport;
namespace v = vocab;

namespace {

const char* kMinimalRecord = R"({
  "id": "s-1",
  "title": "",
  "started_at": "2024-01-01T08:00:00Z",
  "phase": "pre_decision",
  "research_aspect": "collaborative_query_formulation",
  "form": "general_discussion",
  "collaborators": [{"id": "c1", "name": "One", "kind": "person"}],
  "remarks": []
})";

std::string with_field(const std::string& base, const std::string& needle,
                       const std::string& replacement) {
  std::string out = base;
  const auto pos = out.find(needle);
  REQUIRE(pos != std::string::npos);
  out.replace(pos, needle.size(), replacement);
  return out;
}

SessionRecord parse_ok(const std::string& text) {
  auto record = parse_session(text);
  if (!record.ok()) FAIL(record.error().path, ": ", record.error().message);
  return std::move(record.value());
}

IngestError parse_bad(const std::string& text) {
  auto record = parse_session(text);
  REQUIRE_FALSE(record.ok());
  return record.error();
}

}  // namespace

TEST_CASE("minimal record parses") {
  const SessionRecord rec = parse_ok(kMinimalRecord);
  CHECK(rec.id == "s-1");
  CHECK(rec.collaborators.size() == 1);
  CHECK(rec.remarks.empty());
  CHECK_FALSE(rec.location.has_value());
}

TEST_CASE("closed-set and referential violations carry JSON-pointer paths") {
  CHECK(parse_bad(with_field(kMinimalRecord, "\"pre_decision\"", "\"mid_decision\"")).path ==
        "/phase");
  CHECK(parse_bad(with_field(kMinimalRecord, "\"general_discussion\"", "\"karaoke\"")).path ==
        "/form");
  CHECK(parse_bad(with_field(kMinimalRecord, "\"2024-01-01T08:00:00Z\"", "\"last tuesday\""))
            .path == "/started_at");
  CHECK(parse_bad(with_field(kMinimalRecord, "\"remarks\": []",
                             "\"remarks\": [{\"kind\": \"question\", \"text\": \"?\", "
                             "\"author_id\": \"ghost\", \"at\": \"2024-01-01T08:05:00Z\"}]"))
            .path == "/remarks/0/author_id");
  CHECK(parse_bad(with_field(kMinimalRecord, "\"kind\": \"person\"",
                             "\"kind\": \"person\", \"nickname\": \"x\""))
            .path == "/collaborators/0/nickname");
  CHECK(parse_bad(with_field(kMinimalRecord, "\"kind\": \"person\"",
                             "\"kind\": \"person\", \"affiliation_id\": \"nowhere\""))
            .path == "/collaborators/0/affiliation_id");
  CHECK(parse_bad(with_field(
                      kMinimalRecord, "[{\"id\": \"c1\", \"name\": \"One\", \"kind\": \"person\"}]",
                      "[{\"id\": \"c1\", \"name\": \"One\", \"kind\": \"person\"}, "
                      "{\"id\": \"c1\", \"name\": \"Two\", \"kind\": \"group\"}]"))
            .path == "/collaborators/1/id");
  CHECK(parse_bad(with_field(kMinimalRecord, "\"title\": \"\",",
                             "\"title\": \"\", \"location\": {\"name\": \"HQ\", \"kind\": "
                             "\"physical\", \"lat\": 1.5},"))
            .path == "/location/long");
  CHECK(parse_bad("{ not json").path.empty());
}

TEST_CASE("a full single-collaborator record maps to exactly 13 triples") {
  const std::string text = with_field(
      kMinimalRecord, "\"title\": \"\",",
      "\"title\": \"\", \"location\": {\"name\": \"HQ\", \"kind\": \"physical\", "
      "\"lat\": 45.5, \"long\": 4.25},");
  const SessionRecord rec = parse_ok(text);
  const MintingScheme scheme = MintingScheme::standard();
  const Graph g = session_to_triples(rec, scheme);

  // Hand-enumerated expectation, rule by rule.
  const Iri session = scheme.session("s-1");
  const Iri agent = scheme.collaborator("c1");
  const Iri instant = scheme.instant("2024-01-01T08:00:00Z");
  const Iri place = scheme.place("HQ");
  Graph expected;
  expected.insert(Triple(session, v::rdf_type(), Term(v::cbi_session())));
  expected.insert(Triple(session, v::associated_with(),
                         Term(scheme.phase_individual(PhaseCode::pre_decision))));
  expected.insert(Triple(
      session, v::belongs_to(),
      Term(scheme.aspect_individual(AspectCode::collaborative_query_formulation))));
  expected.insert(
      Triple(session, v::has_type(), Term(scheme.form_individual(FormCode::general_discussion))));
  expected.insert(Triple(session, v::owned_by(), Term(agent)));
  expected.insert(Triple(agent, v::rdf_type(), Term(v::foaf_person())));
  expected.insert(Triple(session, v::has_time(), Term(instant)));
  expected.insert(Triple(instant, v::rdf_type(), Term(v::time_instant())));
  expected.insert(Triple(instant, v::time_in_xsd_date_time(),
                         Term(Literal("2024-01-01T08:00:00Z", v::xsd_date_time()))));
  expected.insert(Triple(session, v::has_location(), Term(place)));
  expected.insert(Triple(place, v::rdf_type(), Term(v::geo_spatial_thing())));
  expected.insert(Triple(place, v::geo_lat(), Term(Literal("45.5", v::xsd_decimal()))));
  expected.insert(Triple(place, v::geo_long(), Term(Literal("4.25", v::xsd_decimal()))));
  REQUIRE(expected.size() == 13);
  CHECK(graph_equal(g, expected));
}

TEST_CASE("remark kinds capitalize and validate cleanly") {
  const std::string text = with_field(
      kMinimalRecord, "\"remarks\": []",
      "\"remarks\": [{\"kind\": \"comment\", \"text\": \"fine\", \"author_id\": \"c1\", "
      "\"at\": \"2024-01-01T08:10:00Z\"}]");
  const SessionRecord rec = parse_ok(text);
  const MintingScheme scheme = MintingScheme::standard();
  const Graph g = session_to_triples(rec, scheme);

  const Iri remark = scheme.remark("s-1", 1);
  CHECK(g.contains(Triple(remark, v::has_remark(), Term(Literal::string("Comment")))));
  CHECK(g.contains(Triple(remark, v::rdf_type(), Term(v::remark()))));
  CHECK(g.contains(Triple(remark, v::authored_by(), Term(scheme.collaborator("c1")))));

  for (const Violation& violation : validate(g, build_schema()))
    CHECK_FALSE(violation.is_error());
}

TEST_CASE("sessions with distinct ids mint disjoint session and remark subjects") {
  const std::string remark_block =
      "\"remarks\": [{\"kind\": \"question\", \"text\": \"?\", \"author_id\": \"c1\", "
      "\"at\": \"2024-01-01T08:05:00Z\"}]";
  const SessionRecord a =
      parse_ok(with_field(kMinimalRecord, "\"remarks\": []", remark_block));
  const SessionRecord b = parse_ok(with_field(
      with_field(kMinimalRecord, "\"remarks\": []", remark_block), "\"s-1\"", "\"s-2\""));
  const MintingScheme scheme = MintingScheme::standard();
  const Graph ga = session_to_triples(a, scheme);
  const Graph gb = session_to_triples(b, scheme);

  std::set<std::string> subjects_a, subjects_b;
  for (const Triple& t : ga)
    if (t.subject.value().find("/session/") != std::string::npos)
      subjects_a.insert(t.subject.value());
  for (const Triple& t : gb)
    if (t.subject.value().find("/session/") != std::string::npos)
      subjects_b.insert(t.subject.value());
  CHECK_FALSE(subjects_a.empty());
  for (const std::string& s : subjects_a) CHECK(subjects_b.count(s) == 0);
}

TEST_CASE("minting percent-encodes and stays injective") {
  const MintingScheme scheme = MintingScheme::standard();
  CHECK(scheme.place("Lyon HQ").value() ==
        "http://bi4people.org/data/cbiont/place/Lyon%20HQ");
  CHECK(scheme.session("a/b").value() ==
        "http://bi4people.org/data/cbiont/session/a%2Fb");
  CHECK_FALSE(scheme.session("a/b") == scheme.session("a%2Fb"));
  CHECK_FALSE(scheme.collaborator("x") == scheme.session("x"));
  CHECK(percent_encode("été") == "%C3%A9t%C3%A9");
}

TEST_CASE("CBIONT_BASE_IRI overrides the minting base") {
  const MintingScheme scheme(Iri("http://other.example/data/"));
  CHECK(scheme.session("s").value() == "http://other.example/data/session/s");
  CHECK_THROWS_AS(MintingScheme(Iri("http://no-separator.example")), std::invalid_argument);
}

TEST_CASE("fixed_individuals emits the 15 leaf typing triples") {
  const MintingScheme scheme = MintingScheme::standard();
  const Graph g = fixed_individuals(scheme);
  CHECK(g.size() == 15);
  CHECK(g.contains(Triple(scheme.form_individual(FormCode::general_discussion), v::rdf_type(),
                          Term(v::general_discussion()))));
  CHECK(g.contains(Triple(scheme.phase_individual(PhaseCode::decision), v::rdf_type(),
                          Term(v::decision_phase()))));
}

TEST_CASE("ingest_file: additivity, isolation, idempotence") {
  const MintingScheme scheme = MintingScheme::standard();
  const std::string two_sessions =
      "[" + std::string(kMinimalRecord) + "," +
      with_field(kMinimalRecord, "\"s-1\"", "\"s-2\"") + "]";
  write_file("ingest_two.json", two_sessions);

  Graph kb;
  auto report = ingest_file("ingest_two.json", kb, scheme);
  REQUIRE(report.ok());
  CHECK(report.value().ok == 2);
  CHECK(report.value().failed == 0);
  CHECK(report.value().seeded == 15);
  REQUIRE(report.value().sessions.size() == 2);
  // Both sessions share the collaborator and instant, so the kb grows by the
  // union of the two emissions, plus the seeds.
  std::size_t union_size = 0;
  {
    Graph probe;
    merge_into(probe, session_to_triples(parse_ok(kMinimalRecord), scheme));
    merge_into(probe,
               session_to_triples(parse_ok(with_field(kMinimalRecord, "\"s-1\"", "\"s-2\"")),
                                  scheme));
    union_size = probe.size();
  }
  CHECK(kb.size() == union_size + 15);
  // Minimal record: 4 core + 2 collaborator + 3 time-block triples.
  CHECK(report.value().sessions[0].triples == 9);

  // Isolation: one valid, one invalid.
  const std::string mixed =
      "[" + with_field(kMinimalRecord, "\"s-1\"", "\"s-3\"") + "," +
      with_field(kMinimalRecord, "\"pre_decision\"", "\"mid_decision\"") + "]";
  write_file("ingest_mixed.json", mixed);
  Graph kb2;
  auto mixed_report = ingest_file("ingest_mixed.json", kb2, scheme);
  REQUIRE(mixed_report.ok());
  CHECK(mixed_report.value().ok == 1);
  CHECK(mixed_report.value().failed == 1);
  REQUIRE(mixed_report.value().sessions.size() == 2);
  CHECK(mixed_report.value().sessions[1].error.has_value());
  CHECK(mixed_report.value().sessions[1].error->path == "/1/phase");
  // The valid session is fully present.
  CHECK(kb2.contains(Triple(scheme.session("s-3"), v::rdf_type(), Term(v::cbi_session()))));
  // The invalid one contributed nothing.
  for (const Triple& t : kb2)
    CHECK(t.subject.value().find("/session/s-1") == std::string::npos);

  // Idempotence.
  const std::size_t before = kb.size();
  auto again = ingest_file("ingest_two.json", kb, scheme);
  REQUIRE(again.ok());
  CHECK(kb.size() == before);

  std::remove("ingest_two.json");
  std::remove("ingest_mixed.json");
}

TEST_CASE("ingest_file I/O and JSON errors") {
  Graph kb;
  const MintingScheme scheme = MintingScheme::standard();
  auto missing = ingest_file("does_not_exist.json", kb, scheme);
  REQUIRE_FALSE(missing.ok());

  write_file("broken.json", "{ \"id\": ");
  auto broken = ingest_file("broken.json", kb, scheme);
  REQUIRE_FALSE(broken.ok());
  CHECK(broken.error().message.find("parse error") != std::string::npos);
  std::remove("broken.json");
}

TEST_CASE("reference fixture maps to the documented 42 triples") {
  const SessionRecord rec = parse_ok(read_file(fixture_path("reference_session.json")));
  const MintingScheme scheme = MintingScheme::standard();
  const Graph g = session_to_triples(rec, scheme);
  CHECK(g.size() == 42);  // 18 session-level + 3 remarks x 8

  const Iri session = scheme.session("insee-2024-03");
  const Iri place = scheme.place("Lyon");
  CHECK(g.contains(Triple(session, v::has_location(), Term(place))));
  CHECK(g.contains(Triple(place, v::geo_lat(), Term(Literal("45.764", v::xsd_decimal())))));
  CHECK(g.contains(Triple(place, v::geo_long(), Term(Literal("4.8357", v::xsd_decimal())))));
  CHECK(g.contains(Triple(scheme.remark("insee-2024-03", 2), v::has_remark(),
                          Term(Literal::string("Answer")))));
  CHECK(g.contains(Triple(scheme.collaborator("alice"), v::affiliated_with(),
                          Term(scheme.collaborator("eric-lab")))));

  // No enumeration or datatype violations on the artifact's own output.
  Graph kb = g;
  merge_into(kb, fixed_individuals(scheme));
  for (const Violation& violation : validate(kb, build_schema(), /*pedantic=*/true))
    CHECK_FALSE(violation.is_error());
}
