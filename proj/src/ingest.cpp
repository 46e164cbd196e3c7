#include "cbiont/ingest.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "cbiont/vocab.hpp"
#include "json.hpp"

namespace cbiont {

namespace {

namespace v = vocab;
using nlohmann::json;

const std::map<std::string, PhaseCode>& phase_codes() {
  static const std::map<std::string, PhaseCode> codes = {
      {"pre_decision", PhaseCode::pre_decision},
      {"decision", PhaseCode::decision},
      {"post_decision", PhaseCode::post_decision},
  };
  return codes;
}

const std::map<std::string, AspectCode>& aspect_codes() {
  static const std::map<std::string, AspectCode> codes = {
      {"collaborative_query_formulation", AspectCode::collaborative_query_formulation},
      {"collaborative_source_discovery", AspectCode::collaborative_source_discovery},
      {"collaborative_data_acquisition", AspectCode::collaborative_data_acquisition},
      {"collaborative_data_integration", AspectCode::collaborative_data_integration},
      {"collaborative_data_presentation", AspectCode::collaborative_data_presentation},
  };
  return codes;
}

const std::map<std::string, FormCode>& form_codes() {
  static const std::map<std::string, FormCode> codes = {
      {"general_discussion", FormCode::general_discussion},
      {"annotation", FormCode::annotation},
      {"report_centric_discussion", FormCode::report_centric_discussion},
      {"visualizing_behavior", FormCode::visualizing_behavior},
      {"trend_analysis", FormCode::trend_analysis},
      {"task_coordination", FormCode::task_coordination},
      {"information_sharing", FormCode::information_sharing},
  };
  return codes;
}

const char* phase_code_name(PhaseCode code) {
  switch (code) {
    case PhaseCode::pre_decision: return "pre_decision";
    case PhaseCode::decision: return "decision";
    case PhaseCode::post_decision: return "post_decision";
  }
  return "?";
}

const char* aspect_code_name(AspectCode code) {
  switch (code) {
    case AspectCode::collaborative_query_formulation: return "collaborative_query_formulation";
    case AspectCode::collaborative_source_discovery: return "collaborative_source_discovery";
    case AspectCode::collaborative_data_acquisition: return "collaborative_data_acquisition";
    case AspectCode::collaborative_data_integration: return "collaborative_data_integration";
    case AspectCode::collaborative_data_presentation: return "collaborative_data_presentation";
  }
  return "?";
}

const char* form_code_name(FormCode code) {
  switch (code) {
    case FormCode::general_discussion: return "general_discussion";
    case FormCode::annotation: return "annotation";
    case FormCode::report_centric_discussion: return "report_centric_discussion";
    case FormCode::visualizing_behavior: return "visualizing_behavior";
    case FormCode::trend_analysis: return "trend_analysis";
    case FormCode::task_coordination: return "task_coordination";
    case FormCode::information_sharing: return "information_sharing";
  }
  return "?";
}

const Iri& phase_class(PhaseCode code) {
  switch (code) {
    case PhaseCode::pre_decision: return v::pre_decision_phase();
    case PhaseCode::decision: return v::decision_phase();
    case PhaseCode::post_decision: return v::post_decision_phase();
  }
  return v::pre_decision_phase();
}

const Iri& aspect_class(AspectCode code) {
  switch (code) {
    case AspectCode::collaborative_query_formulation: return v::collaborative_query_formulation();
    case AspectCode::collaborative_source_discovery: return v::collaborative_source_discovery();
    case AspectCode::collaborative_data_acquisition: return v::collaborative_data_acquisition();
    case AspectCode::collaborative_data_integration: return v::collaborative_data_integration();
    case AspectCode::collaborative_data_presentation: return v::collaborative_data_presentation();
  }
  return v::collaborative_query_formulation();
}

const Iri& form_class(FormCode code) {
  switch (code) {
    case FormCode::general_discussion: return v::general_discussion();
    case FormCode::annotation: return v::annotation_form();
    case FormCode::report_centric_discussion: return v::report_centric_discussion();
    case FormCode::visualizing_behavior: return v::visualizing_behavior();
    case FormCode::trend_analysis: return v::trend_analysis();
    case FormCode::task_coordination: return v::task_coordination();
    case FormCode::information_sharing: return v::information_sharing();
  }
  return v::general_discussion();
}

const char* remark_kind_literal(RemarkKindCode code) {
  switch (code) {
    case RemarkKindCode::question: return "Question";
    case RemarkKindCode::answer: return "Answer";
    case RemarkKindCode::comment: return "Comment";
  }
  return "?";
}

bool two_digits(std::string_view s, std::size_t at, int max) {
  if (at + 2 > s.size()) return false;
  if (!std::isdigit(static_cast<unsigned char>(s[at])) ||
      !std::isdigit(static_cast<unsigned char>(s[at + 1])))
    return false;
  const int value = (s[at] - '0') * 10 + (s[at + 1] - '0');
  return value <= max;
}

// YYYY-MM-DDTHH:MM:SS(.digits)?(Z|±HH:MM)?
bool iso8601_timestamp(std::string_view s) {
  if (s.size() < 19) return false;
  for (int i = 0; i < 4; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  if (s[4] != '-' || !two_digits(s, 5, 12) || s[7] != '-' || !two_digits(s, 8, 31)) return false;
  if (s[10] != 'T') return false;
  if (!two_digits(s, 11, 23) || s[13] != ':' || !two_digits(s, 14, 59) || s[16] != ':' ||
      !two_digits(s, 17, 59))
    return false;
  std::size_t i = 19;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) return false;
  }
  if (i == s.size()) return true;
  if (s[i] == 'Z') return i + 1 == s.size();
  if (s[i] == '+' || s[i] == '-')
    return i + 6 == s.size() && two_digits(s, i + 1, 23) && s[i + 3] == ':' &&
           two_digits(s, i + 4, 59);
  return false;
}

struct DecodeAbort {
  IngestError err;
};

[[noreturn]] void bail(std::string path, std::string message) {
  throw DecodeAbort{IngestError{std::move(path), std::move(message)}};
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) bail(path + "/" + item.key(), "unknown field");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bail(path + "/" + key, "missing required field");
  return *it;
}

std::string require_string(const json& j, const std::string& path, const char* key,
                           bool non_empty = false) {
  const json& field = require(j, path, key);
  if (!field.is_string()) bail(path + "/" + key, "expected a string");
  std::string value = field.get<std::string>();
  if (non_empty && value.empty()) bail(path + "/" + key, "must not be empty");
  return value;
}

std::string require_timestamp(const json& j, const std::string& path, const char* key) {
  std::string value = require_string(j, path, key, true);
  if (!iso8601_timestamp(value))
    bail(path + "/" + key, "not an ISO-8601 timestamp (YYYY-MM-DDTHH:MM:SS[.s][Z|±HH:MM])");
  return value;
}

template <typename Code>
Code require_code(const json& j, const std::string& path, const char* key,
                  const std::map<std::string, Code>& codes) {
  const std::string value = require_string(j, path, key);
  auto it = codes.find(value);
  if (it == codes.end()) {
    std::string allowed;
    for (const auto& [name, _] : codes) allowed += (allowed.empty() ? "" : ", ") + name;
    bail(path + "/" + key, "'" + value + "' is not one of {" + allowed + "}");
  }
  return it->second;
}

LocationEntry decode_location(const json& j, const std::string& path) {
  if (!j.is_object()) bail(path, "expected an object");
  check_keys(j, path, {"name", "kind", "lat", "long"});
  LocationEntry loc;
  loc.name = require_string(j, path, "name", true);
  static const std::map<std::string, LocationKind> kinds = {
      {"physical", LocationKind::physical},
      {"virtual", LocationKind::virtual_location},
  };
  loc.kind = require_code(j, path, "kind", kinds);
  const bool has_lat = j.contains("lat");
  const bool has_long = j.contains("long");
  if (has_lat != has_long)
    bail(path + (has_lat ? "/long" : "/lat"), "lat and long must be given together");
  if (has_lat) {
    if (!j["lat"].is_number()) bail(path + "/lat", "expected a number");
    if (!j["long"].is_number()) bail(path + "/long", "expected a number");
    // Shortest round-trip rendering of the parsed double; deterministic.
    loc.lat = j["lat"].dump();
    loc.lon = j["long"].dump();
  }
  return loc;
}

SessionRecord decode_session(const json& j, const std::string& path) {
  if (!j.is_object()) bail(path.empty() ? "/" : path, "expected a session object");
  check_keys(j, path,
             {"id", "title", "started_at", "location", "phase", "research_aspect", "form",
              "collaborators", "remarks"});

  SessionRecord rec;
  rec.id = require_string(j, path, "id", true);
  rec.title = require_string(j, path, "title");
  rec.started_at = require_timestamp(j, path, "started_at");
  rec.phase = require_code(j, path, "phase", phase_codes());
  rec.research_aspect = require_code(j, path, "research_aspect", aspect_codes());
  rec.form = require_code(j, path, "form", form_codes());
  if (j.contains("location")) rec.location = decode_location(j["location"], path + "/location");

  const json& collaborators = require(j, path, "collaborators");
  if (!collaborators.is_array()) bail(path + "/collaborators", "expected an array");
  std::map<std::string, CollaboratorKind> by_id;
  for (std::size_t i = 0; i < collaborators.size(); ++i) {
    const std::string cpath = path + "/collaborators/" + std::to_string(i);
    const json& cj = collaborators[i];
    if (!cj.is_object()) bail(cpath, "expected an object");
    check_keys(cj, cpath, {"id", "name", "kind", "affiliation_id"});
    CollaboratorEntry entry;
    entry.id = require_string(cj, cpath, "id", true);
    entry.name = require_string(cj, cpath, "name");
    static const std::map<std::string, CollaboratorKind> kinds = {
        {"person", CollaboratorKind::person},
        {"organization", CollaboratorKind::organization},
        {"group", CollaboratorKind::group},
    };
    entry.kind = require_code(cj, cpath, "kind", kinds);
    if (cj.contains("affiliation_id"))
      entry.affiliation_id = require_string(cj, cpath, "affiliation_id", true);
    if (!by_id.emplace(entry.id, entry.kind).second)
      bail(cpath + "/id", "duplicate collaborator id '" + entry.id + "'");
    rec.collaborators.push_back(std::move(entry));
  }
  for (std::size_t i = 0; i < rec.collaborators.size(); ++i) {
    const CollaboratorEntry& entry = rec.collaborators[i];
    if (!entry.affiliation_id) continue;
    const std::string apath = path + "/collaborators/" + std::to_string(i) + "/affiliation_id";
    auto target = by_id.find(*entry.affiliation_id);
    if (target == by_id.end())
      bail(apath, "'" + *entry.affiliation_id + "' does not match any collaborator id");
    if (target->second != CollaboratorKind::organization)
      bail(apath, "affiliation target must be a collaborator of kind organization");
    if (entry.kind != CollaboratorKind::person)
      bail(apath, "only collaborators of kind person can carry an affiliation");
  }

  const json& remarks = require(j, path, "remarks");
  if (!remarks.is_array()) bail(path + "/remarks", "expected an array");
  for (std::size_t i = 0; i < remarks.size(); ++i) {
    const std::string rpath = path + "/remarks/" + std::to_string(i);
    const json& rj = remarks[i];
    if (!rj.is_object()) bail(rpath, "expected an object");
    check_keys(rj, rpath, {"kind", "text", "author_id", "at"});
    RemarkEntry entry;
    static const std::map<std::string, RemarkKindCode> kinds = {
        {"question", RemarkKindCode::question},
        {"answer", RemarkKindCode::answer},
        {"comment", RemarkKindCode::comment},
    };
    entry.kind = require_code(rj, rpath, "kind", kinds);
    entry.text = require_string(rj, rpath, "text");
    entry.author_id = require_string(rj, rpath, "author_id", true);
    entry.at = require_timestamp(rj, rpath, "at");
    if (!by_id.count(entry.author_id))
      bail(rpath + "/author_id", "'" + entry.author_id + "' does not match any collaborator id");
    rec.remarks.push_back(std::move(entry));
  }

  return rec;
}

const Iri& collaborator_class(CollaboratorKind kind) {
  switch (kind) {
    case CollaboratorKind::person: return v::foaf_person();
    case CollaboratorKind::organization: return v::foaf_organization();
    case CollaboratorKind::group: return v::foaf_group();
  }
  return v::foaf_person();
}

}  // namespace

std::string percent_encode(std::string_view raw) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    const bool unreserved = std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
    if (unreserved) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out;
}

MintingScheme::MintingScheme(Iri base) : base_(std::move(base)) {
  const char back = base_.value().back();
  if (back != '/' && back != '#')
    throw std::invalid_argument("minting base IRI must end in '/' or '#': " + base_.value());
}

MintingScheme MintingScheme::standard() { return MintingScheme(Iri(vocab::kCbidataNs)); }

MintingScheme MintingScheme::from_environment() {
  if (const char* base = std::getenv("CBIONT_BASE_IRI"); base && *base)
    return MintingScheme(Iri(base));
  return standard();
}

Iri MintingScheme::session(const std::string& id) const {
  return Iri(base_.value() + "session/" + percent_encode(id));
}
Iri MintingScheme::collaborator(const std::string& id) const {
  return Iri(base_.value() + "agent/" + percent_encode(id));
}
Iri MintingScheme::remark(const std::string& session_id, std::size_t ordinal) const {
  return Iri(base_.value() + "session/" + percent_encode(session_id) + "/remark/" +
             std::to_string(ordinal));
}
Iri MintingScheme::place(const std::string& name) const {
  return Iri(base_.value() + "place/" + percent_encode(name));
}
Iri MintingScheme::instant(const std::string& timestamp) const {
  // ISO-8601 timestamps contain only IRI-safe characters.
  return Iri(base_.value() + "time/" + timestamp);
}

Iri MintingScheme::phase_individual(PhaseCode code) const {
  return Iri(base_.value() + "phase/" + phase_code_name(code));
}
Iri MintingScheme::aspect_individual(AspectCode code) const {
  return Iri(base_.value() + "aspect/" + aspect_code_name(code));
}
Iri MintingScheme::form_individual(FormCode code) const {
  return Iri(base_.value() + "form/" + form_code_name(code));
}

Expected<SessionRecord, IngestError> parse_session(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    return IngestError{"", e.what()};
  }
  try {
    return decode_session(j, "");
  } catch (const DecodeAbort& abort) {
    return abort.err;
  }
}

Graph session_to_triples(const SessionRecord& rec, const MintingScheme& scheme) {
  Graph g;
  const Iri session = scheme.session(rec.id);

  g.insert(Triple(session, v::rdf_type(), Term(v::cbi_session())));
  g.insert(Triple(session, v::associated_with(), Term(scheme.phase_individual(rec.phase))));
  g.insert(Triple(session, v::belongs_to(), Term(scheme.aspect_individual(rec.research_aspect))));
  g.insert(Triple(session, v::has_type(), Term(scheme.form_individual(rec.form))));

  for (const CollaboratorEntry& entry : rec.collaborators) {
    const Iri agent = scheme.collaborator(entry.id);
    g.insert(Triple(session, v::owned_by(), Term(agent)));
    g.insert(Triple(agent, v::rdf_type(), Term(collaborator_class(entry.kind))));
    if (entry.affiliation_id)
      g.insert(Triple(agent, v::affiliated_with(),
                      Term(scheme.collaborator(*entry.affiliation_id))));
  }

  auto add_instant = [&](const Iri& subject, const std::string& timestamp) {
    const Iri instant = scheme.instant(timestamp);
    g.insert(Triple(subject, v::has_time(), Term(instant)));
    g.insert(Triple(instant, v::rdf_type(), Term(v::time_instant())));
    g.insert(Triple(instant, v::time_in_xsd_date_time(),
                    Term(Literal(timestamp, v::xsd_date_time()))));
  };
  add_instant(session, rec.started_at);

  if (rec.location) {
    const Iri place = scheme.place(rec.location->name);
    g.insert(Triple(session, v::has_location(), Term(place)));
    g.insert(Triple(place, v::rdf_type(), Term(v::geo_spatial_thing())));
    if (rec.location->lat) {
      g.insert(Triple(place, v::geo_lat(), Term(Literal(*rec.location->lat, v::xsd_decimal()))));
      g.insert(Triple(place, v::geo_long(), Term(Literal(*rec.location->lon, v::xsd_decimal()))));
    }
  }

  for (std::size_t i = 0; i < rec.remarks.size(); ++i) {
    const RemarkEntry& entry = rec.remarks[i];
    const Iri remark = scheme.remark(rec.id, i + 1);
    g.insert(Triple(session, v::contains_remark(), Term(remark)));
    g.insert(Triple(remark, v::rdf_type(), Term(v::remark())));
    g.insert(Triple(remark, v::has_remark(),
                    Term(Literal::string(remark_kind_literal(entry.kind)))));
    g.insert(Triple(remark, v::has_description(), Term(Literal::string(entry.text))));
    g.insert(Triple(remark, v::authored_by(), Term(scheme.collaborator(entry.author_id))));
    add_instant(remark, entry.at);
  }

  return g;
}

Graph fixed_individuals(const MintingScheme& scheme) {
  Graph g;
  for (PhaseCode code :
       {PhaseCode::pre_decision, PhaseCode::decision, PhaseCode::post_decision})
    g.insert(Triple(scheme.phase_individual(code), v::rdf_type(), Term(phase_class(code))));
  for (AspectCode code :
       {AspectCode::collaborative_query_formulation, AspectCode::collaborative_source_discovery,
        AspectCode::collaborative_data_acquisition, AspectCode::collaborative_data_integration,
        AspectCode::collaborative_data_presentation})
    g.insert(Triple(scheme.aspect_individual(code), v::rdf_type(), Term(aspect_class(code))));
  for (FormCode code :
       {FormCode::general_discussion, FormCode::annotation, FormCode::report_centric_discussion,
        FormCode::visualizing_behavior, FormCode::trend_analysis, FormCode::task_coordination,
        FormCode::information_sharing})
    g.insert(Triple(scheme.form_individual(code), v::rdf_type(), Term(form_class(code))));
  return g;
}

std::string IngestReport::to_string() const {
  std::ostringstream out;
  for (const SessionOutcome& s : sessions) {
    if (s.error) {
      out << "session " << s.id << ": failed at " << (s.error->path.empty() ? "/" : s.error->path)
          << ": " << s.error->message << "\n";
    } else {
      out << "session " << s.id << ": ok, " << s.triples << " triples\n";
    }
  }
  out << "seeded " << seeded << " fixed-individual triples\n";
  out << "summary: ok=" << ok << " failed=" << failed << "\n";
  return out.str();
}

Expected<IngestReport, IngestError> ingest_file(const std::string& path, Graph& kb,
                                                const MintingScheme& scheme) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return IngestError{"", "cannot open file: " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    return IngestError{"", e.what()};
  }

  const bool is_array = doc.is_array();
  if (!is_array && !doc.is_object())
    return IngestError{"", "expected a session object or an array of them"};

  IngestReport report;
  report.seeded = merge_into(kb, fixed_individuals(scheme));

  const std::size_t count = is_array ? doc.size() : 1;
  for (std::size_t i = 0; i < count; ++i) {
    const json& element = is_array ? doc[i] : doc;
    const std::string base_path = is_array ? "/" + std::to_string(i) : "";
    SessionOutcome outcome;
    if (element.is_object() && element.contains("id") && element["id"].is_string())
      outcome.id = element["id"].get<std::string>();
    else
      outcome.id = "#" + std::to_string(i);
    try {
      const SessionRecord rec = decode_session(element, base_path);
      const Graph triples = session_to_triples(rec, scheme);
      outcome.triples = triples.size();
      merge_into(kb, triples);
      ++report.ok;
    } catch (const DecodeAbort& abort) {
      outcome.error = abort.err;
      ++report.failed;
    }
    report.sessions.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace cbiont
