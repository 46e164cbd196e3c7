#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cbiont/expected.hpp"
#include "cbiont/graph.hpp"

namespace cbiont {

// JSON-pointer-style location of the offending field, e.g. /remarks/0/author_id.
struct IngestError {
  std::string path;
  std::string message;
};

enum class PhaseCode { pre_decision, decision, post_decision };
enum class AspectCode {
  collaborative_query_formulation,
  collaborative_source_discovery,
  collaborative_data_acquisition,
  collaborative_data_integration,
  collaborative_data_presentation,
};
enum class FormCode {
  general_discussion,
  annotation,
  report_centric_discussion,
  visualizing_behavior,
  trend_analysis,
  task_coordination,
  information_sharing,
};
enum class CollaboratorKind { person, organization, group };
enum class RemarkKindCode { question, answer, comment };
enum class LocationKind { physical, virtual_location };

struct CollaboratorEntry {
  std::string id;
  std::string name;
  CollaboratorKind kind = CollaboratorKind::person;
  std::optional<std::string> affiliation_id;
};

struct RemarkEntry {
  RemarkKindCode kind = RemarkKindCode::comment;
  std::string text;
  std::string author_id;
  std::string at;  // ISO-8601 timestamp
};

struct LocationEntry {
  std::string name;
  LocationKind kind = LocationKind::physical;
  // Decimal-degree lexical forms; both present or both absent.
  std::optional<std::string> lat;
  std::optional<std::string> lon;
};

// One collaborative-session export record. The field-by-field contract lives
// in docs/session-export.md.
struct SessionRecord {
  std::string id;
  std::string title;
  std::string started_at;
  std::optional<LocationEntry> location;
  PhaseCode phase = PhaseCode::pre_decision;
  AspectCode research_aspect = AspectCode::collaborative_query_formulation;
  FormCode form = FormCode::general_discussion;
  std::vector<CollaboratorEntry> collaborators;
  std::vector<RemarkEntry> remarks;
};

// Deterministic IRI minting under the cbidata base namespace. Injective for
// distinct inputs; path segments are percent-encoded where needed.
class MintingScheme {
 public:
  explicit MintingScheme(Iri base);

  // Default base, or the CBIONT_BASE_IRI override when set in the environment.
  static MintingScheme standard();
  static MintingScheme from_environment();

  const Iri& base() const noexcept { return base_; }

  Iri session(const std::string& id) const;
  Iri collaborator(const std::string& id) const;
  Iri remark(const std::string& session_id, std::size_t ordinal) const;  // 1-based
  Iri place(const std::string& name) const;
  Iri instant(const std::string& timestamp) const;

  Iri phase_individual(PhaseCode code) const;
  Iri aspect_individual(AspectCode code) const;
  Iri form_individual(FormCode code) const;

 private:
  Iri base_;
};

std::string percent_encode(std::string_view raw);

// Strict parse of one session object: unknown fields are errors, enum codes
// are validated, timestamps are syntax-checked, remark authors and
// affiliations must resolve to collaborator entries.
Expected<SessionRecord, IngestError> parse_session(const std::string& json_text);

// The ABox triples of one session per the documented mapping. Emits link
// triples only; the fixed phase/aspect/form individuals' typing triples come
// from fixed_individuals().
Graph session_to_triples(const SessionRecord& rec, const MintingScheme& scheme);

// Typing triples for the 15 fixed leaf individuals (3 phases, 5 aspects,
// 7 forms), seeded once per knowledge base by ingest_file.
Graph fixed_individuals(const MintingScheme& scheme);

struct SessionOutcome {
  std::string id;     // record id, or "#<index>" when the id is unreadable
  std::size_t triples = 0;
  std::optional<IngestError> error;
};

struct IngestReport {
  std::size_t ok = 0;
  std::size_t failed = 0;
  std::size_t seeded = 0;  // fixed-individual triples newly added
  std::vector<SessionOutcome> sessions;

  std::string to_string() const;
};

// Reads a file containing one session object or an array of them and ingests
// into kb. Per session all-or-nothing: a failed session contributes no
// triples. Returns an error only for I/O or JSON syntax failures.
Expected<IngestReport, IngestError> ingest_file(const std::string& path, Graph& kb,
                                                const MintingScheme& scheme);

}  // namespace cbiont
