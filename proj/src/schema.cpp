#include "cbiont/schema.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cbiont/vocab.hpp"

namespace cbiont {

namespace {

namespace v = vocab;

Iri enum_datatype_node(const Iri& prop) { return Iri(prop.value() + "_values"); }
Iri enum_list_node(const Iri& prop, std::size_t i) {
  return Iri(prop.value() + "_values_" + std::to_string(i));
}

const char* defect_kind_name(DefectKind kind) {
  switch (kind) {
    case DefectKind::dangling_reference: return "dangling-reference";
    case DefectKind::missing_domain_or_range: return "missing-domain-or-range";
    case DefectKind::enumeration_on_non_data_property: return "enumeration-on-non-data-property";
    case DefectKind::subclass_cycle: return "subclass-cycle";
  }
  return "?";
}

// Index of the schema graph used by both the decoder and the validator.
struct SchemaIndex {
  std::set<Iri> classes;
  std::map<Iri, PropertyKind> properties;
  std::set<Iri> datatype_nodes;  // (d, rdf:type, rdfs:Datatype)

  explicit SchemaIndex(const Graph& g) {
    for (const Triple& t : g.match(std::nullopt, v::rdf_type(), Term(v::owl_class())))
      classes.insert(t.subject);
    for (const Triple& t : g.match(std::nullopt, v::rdf_type(), Term(v::owl_object_property())))
      properties.emplace(t.subject, PropertyKind::object);
    for (const Triple& t : g.match(std::nullopt, v::rdf_type(), Term(v::owl_datatype_property())))
      properties.emplace(t.subject, PropertyKind::data);
    for (const Triple& t : g.match(std::nullopt, v::rdf_type(), Term(v::owl_annotation_property())))
      properties.emplace(t.subject, PropertyKind::annotation);
    for (const Triple& t : g.match(std::nullopt, v::rdf_type(), Term(v::rdfs_datatype())))
      datatype_nodes.insert(t.subject);
  }

  bool declared_class(const Iri& iri) const { return classes.count(iri) != 0; }
  bool is_xsd(const Iri& iri) const {
    return iri.value().rfind(v::kXsdNs, 0) == 0;
  }
};

// Walks an owl:oneOf rdf list. Returns false on malformed structure.
bool decode_enum_list(const Graph& g, const Iri& head, std::vector<Literal>& out) {
  Iri node = head;
  std::set<Iri> seen;
  while (!(node == v::rdf_nil())) {
    if (!seen.insert(node).second) return false;  // rest-chain loop
    const auto firsts = g.match(node, v::rdf_first(), std::nullopt);
    const auto rests = g.match(node, v::rdf_rest(), std::nullopt);
    if (firsts.size() != 1 || rests.size() != 1) return false;
    if (!firsts[0].object.is_literal()) return false;
    if (!rests[0].object.is_iri()) return false;
    out.push_back(firsts[0].object.literal());
    node = rests[0].object.iri();
  }
  if (out.empty()) return false;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i] == out[j]) return false;
  return true;
}

// True for triples that belong to an enumeration's internal encoding and are
// regenerated by encode() from the DatatypeEnumeration axiom.
bool enumeration_internal(const Triple& t, const SchemaIndex& index) {
  if (t.predicate == v::rdf_first() || t.predicate == v::rdf_rest()) return true;
  if (t.predicate == v::owl_one_of()) return true;
  if (t.predicate == v::rdf_type() && t.object.is_iri() && t.object.iri() == v::rdfs_datatype())
    return true;
  (void)index;
  return false;
}

}  // namespace

std::string SchemaDefect::to_string() const {
  std::string out = defect_kind_name(kind);
  out += ":";
  for (const Iri& iri : subjects) out += " " + iri.ntriples();
  if (!detail.empty()) out += " — " + detail;
  return out;
}

Graph encode(const std::vector<SchemaAxiom>& axiom_list) {
  Graph g;
  for (const SchemaAxiom& axiom : axiom_list) {
    std::visit(
        [&](const auto& a) {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, ClassDecl>) {
            g.insert(Triple(a.cls, v::rdf_type(), Term(v::owl_class())));
          } else if constexpr (std::is_same_v<A, SubClassOf>) {
            g.insert(Triple(a.sub, v::rdfs_sub_class_of(), Term(a.sup)));
          } else if constexpr (std::is_same_v<A, PropertyDecl>) {
            const Iri& kind = a.kind == PropertyKind::object ? v::owl_object_property()
                              : a.kind == PropertyKind::data ? v::owl_datatype_property()
                                                             : v::owl_annotation_property();
            g.insert(Triple(a.prop, v::rdf_type(), Term(kind)));
          } else if constexpr (std::is_same_v<A, Domain>) {
            g.insert(Triple(a.prop, v::rdfs_domain(), Term(a.cls)));
          } else if constexpr (std::is_same_v<A, Range>) {
            g.insert(Triple(a.prop, v::rdfs_range(), Term(a.target)));
          } else if constexpr (std::is_same_v<A, DatatypeEnumeration>) {
            const Iri dt = enum_datatype_node(a.prop);
            g.insert(Triple(a.prop, v::rdfs_range(), Term(dt)));
            g.insert(Triple(dt, v::rdf_type(), Term(v::rdfs_datatype())));
            g.insert(Triple(dt, v::owl_one_of(), Term(enum_list_node(a.prop, 1))));
            for (std::size_t i = 0; i < a.allowed.size(); ++i) {
              const Iri cell = enum_list_node(a.prop, i + 1);
              g.insert(Triple(cell, v::rdf_first(), Term(a.allowed[i])));
              const Term rest = i + 1 < a.allowed.size()
                                    ? Term(enum_list_node(a.prop, i + 2))
                                    : Term(v::rdf_nil());
              g.insert(Triple(cell, v::rdf_rest(), rest));
            }
          } else if constexpr (std::is_same_v<A, Annotation>) {
            g.insert(Triple(a.subject, a.prop, Term(a.value)));
          }
        },
        axiom);
  }
  return g;
}

Expected<std::vector<SchemaAxiom>, SchemaDefect> axioms(const Graph& schema) {
  const SchemaIndex index(schema);
  std::vector<SchemaAxiom> out;

  auto dangling = [](std::string detail, std::vector<Iri> subjects) {
    return SchemaDefect{DefectKind::dangling_reference, std::move(subjects), std::move(detail)};
  };

  for (const Triple& t : schema) {
    if (t.predicate == v::rdf_type() && t.object.is_iri()) {
      const Iri& type = t.object.iri();
      if (type == v::owl_class()) {
        out.push_back(ClassDecl{t.subject});
        continue;
      }
      if (type == v::owl_object_property()) {
        out.push_back(PropertyDecl{t.subject, PropertyKind::object});
        continue;
      }
      if (type == v::owl_datatype_property()) {
        out.push_back(PropertyDecl{t.subject, PropertyKind::data});
        continue;
      }
      if (type == v::owl_annotation_property()) {
        out.push_back(PropertyDecl{t.subject, PropertyKind::annotation});
        continue;
      }
    }
    if (enumeration_internal(t, index)) continue;

    if (t.predicate == v::rdfs_sub_class_of()) {
      if (!t.object.is_iri())
        return dangling("subclass of a literal", {t.subject});
      const Iri& sup = t.object.iri();
      if (!index.declared_class(t.subject))
        return dangling("SubClassOf references undeclared class", {t.subject});
      if (!index.declared_class(sup))
        return dangling("SubClassOf references undeclared class", {sup});
      out.push_back(SubClassOf{t.subject, sup});
      continue;
    }
    if (t.predicate == v::rdfs_domain()) {
      if (!index.properties.count(t.subject))
        return dangling("domain on undeclared property", {t.subject});
      if (!t.object.is_iri() || !index.declared_class(t.object.iri()))
        return dangling("domain references undeclared class", {t.subject});
      out.push_back(Domain{t.subject, t.object.iri()});
      continue;
    }
    if (t.predicate == v::rdfs_range()) {
      if (!index.properties.count(t.subject))
        return dangling("range on undeclared property", {t.subject});
      if (!t.object.is_iri())
        return dangling("range must be an IRI", {t.subject});
      const Iri& target = t.object.iri();
      if (index.datatype_nodes.count(target)) {
        const auto one_of = schema.match(target, v::owl_one_of(), std::nullopt);
        if (one_of.size() == 1 && one_of[0].object.is_iri()) {
          std::vector<Literal> allowed;
          if (!decode_enum_list(schema, one_of[0].object.iri(), allowed))
            return dangling("malformed enumeration list", {target});
          out.push_back(DatatypeEnumeration{t.subject, std::move(allowed)});
          continue;
        }
      }
      if (!index.declared_class(target) && !index.is_xsd(target))
        return dangling("range references undeclared term", {target});
      out.push_back(Range{t.subject, target});
      continue;
    }

    // Annotation assertions carry a literal value and use a declared
    // annotation property.
    auto prop_it = index.properties.find(t.predicate);
    if (prop_it != index.properties.end() && prop_it->second == PropertyKind::annotation &&
        t.object.is_literal()) {
      out.push_back(Annotation{t.subject, t.predicate, t.object.literal()});
      continue;
    }

    return dangling("unrecognized schema triple: " + t.ntriples_line(), {t.subject});
  }
  return out;
}

Graph build_schema() {
  namespace v = vocab;
  std::vector<SchemaAxiom> ax;

  const std::vector<Iri> core_classes = {
      v::cbi_session(),  v::cbi_temporal_spatial_session(),
      v::collaborator(), v::cbi_form(),
      v::cbi_research_aspect(), v::cbi_phase(),
      v::remark(),
  };
  const std::vector<Iri> external_classes = {
      v::time_temporal_entity(), v::time_interval(), v::time_instant(),
      v::geo_spatial_thing(),    v::foaf_agent(),    v::foaf_person(),
      v::foaf_group(),           v::foaf_organization(),
  };
  for (const Iri& c : core_classes) ax.push_back(ClassDecl{c});
  for (const Iri& c : external_classes) ax.push_back(ClassDecl{c});
  for (const Iri& c : v::form_leaves()) ax.push_back(ClassDecl{c});
  for (const Iri& c : v::aspect_leaves()) ax.push_back(ClassDecl{c});
  for (const Iri& c : v::phase_leaves()) ax.push_back(ClassDecl{c});

  for (const Iri& c : v::form_leaves()) ax.push_back(SubClassOf{c, v::cbi_form()});
  for (const Iri& c : v::aspect_leaves()) ax.push_back(SubClassOf{c, v::cbi_research_aspect()});
  for (const Iri& c : v::phase_leaves()) ax.push_back(SubClassOf{c, v::cbi_phase()});

  // External alignments, in the stated directions: the external classes are
  // subclasses of the CBIOnt classes.
  ax.push_back(SubClassOf{v::time_temporal_entity(), v::cbi_temporal_spatial_session()});
  ax.push_back(SubClassOf{v::geo_spatial_thing(), v::cbi_temporal_spatial_session()});
  ax.push_back(SubClassOf{v::foaf_agent(), v::collaborator()});
  ax.push_back(SubClassOf{v::foaf_person(), v::foaf_agent()});
  ax.push_back(SubClassOf{v::foaf_group(), v::foaf_agent()});
  ax.push_back(SubClassOf{v::foaf_organization(), v::foaf_agent()});
  ax.push_back(SubClassOf{v::time_interval(), v::time_temporal_entity()});
  ax.push_back(SubClassOf{v::time_instant(), v::time_temporal_entity()});
  ax.push_back(SubClassOf{v::cbi_session(), v::cbi_temporal_spatial_session()});

  auto object_property = [&](const Iri& p, const Iri& domain, const Iri& range) {
    ax.push_back(PropertyDecl{p, PropertyKind::object});
    ax.push_back(Domain{p, domain});
    ax.push_back(Range{p, range});
  };
  object_property(v::owned_by(), v::cbi_session(), v::collaborator());
  object_property(v::associated_with(), v::cbi_session(), v::cbi_phase());
  object_property(v::belongs_to(), v::cbi_session(), v::cbi_research_aspect());
  object_property(v::has_type(), v::cbi_session(), v::cbi_form());
  object_property(v::contains_remark(), v::cbi_session(), v::remark());
  object_property(v::has_location(), v::cbi_session(), v::geo_spatial_thing());
  object_property(v::has_time(), v::cbi_session(), v::time_temporal_entity());
  object_property(v::affiliated_with(), v::foaf_person(), v::foaf_organization());
  object_property(v::authored_by(), v::remark(), v::collaborator());

  ax.push_back(PropertyDecl{v::has_remark(), PropertyKind::data});
  ax.push_back(Domain{v::has_remark(), v::remark()});
  ax.push_back(DatatypeEnumeration{
      v::has_remark(),
      {Literal::string("Question"), Literal::string("Answer"), Literal::string("Comment")}});

  ax.push_back(PropertyDecl{v::has_description(), PropertyKind::data});
  ax.push_back(Domain{v::has_description(), v::remark()});
  ax.push_back(Range{v::has_description(), v::xsd_string()});

  // Declarations for the external data properties the ingestion mapping uses,
  // so ingested knowledge bases validate without undeclared-term warnings.
  ax.push_back(PropertyDecl{v::time_in_xsd_date_time(), PropertyKind::data});
  ax.push_back(Domain{v::time_in_xsd_date_time(), v::time_instant()});
  ax.push_back(Range{v::time_in_xsd_date_time(), v::xsd_date_time()});
  ax.push_back(PropertyDecl{v::geo_lat(), PropertyKind::data});
  ax.push_back(Domain{v::geo_lat(), v::geo_spatial_thing()});
  ax.push_back(Range{v::geo_lat(), v::xsd_decimal()});
  ax.push_back(PropertyDecl{v::geo_long(), PropertyKind::data});
  ax.push_back(Domain{v::geo_long(), v::geo_spatial_thing()});
  ax.push_back(Range{v::geo_long(), v::xsd_decimal()});

  // Extension markers.
  ax.push_back(PropertyDecl{v::is_extension(), PropertyKind::annotation});
  const Literal true_lit("true", v::xsd_boolean());
  for (const Iri& x : {v::remark(), v::contains_remark(), v::has_location(), v::has_time(),
                       v::affiliated_with(), v::authored_by()})
    ax.push_back(Annotation{x, v::is_extension(), true_lit});

  return encode(ax);
}

namespace {

// Tarjan SCC over the subclass edges restricted to declared classes.
struct SccFinder {
  const std::map<Iri, std::vector<Iri>>& edges;
  std::map<Iri, int> index, low;
  std::set<Iri> on_stack;
  std::vector<Iri> stack;
  int counter = 0;
  std::vector<std::vector<Iri>> cycles;

  void strongconnect(const Iri& node) {
    index[node] = low[node] = counter++;
    stack.push_back(node);
    on_stack.insert(node);
    bool self_loop = false;
    if (auto it = edges.find(node); it != edges.end()) {
      for (const Iri& next : it->second) {
        if (next == node) self_loop = true;
        if (!index.count(next)) {
          strongconnect(next);
          low[node] = std::min(low[node], low[next]);
        } else if (on_stack.count(next)) {
          low[node] = std::min(low[node], index[next]);
        }
      }
    }
    if (low[node] == index[node]) {
      std::vector<Iri> component;
      while (true) {
        Iri top = stack.back();
        stack.pop_back();
        on_stack.erase(top);
        const bool done = top == node;
        component.push_back(std::move(top));
        if (done) break;
      }
      if (component.size() > 1 || self_loop) {
        std::sort(component.begin(), component.end());
        cycles.push_back(std::move(component));
      }
    }
  }
};

}  // namespace

std::vector<SchemaDefect> validate_schema(const Graph& schema) {
  const SchemaIndex index(schema);
  std::vector<SchemaDefect> defects;

  std::map<Iri, std::vector<Iri>> subclass_edges;
  for (const Triple& t : schema.match(std::nullopt, vocab::rdfs_sub_class_of(), std::nullopt)) {
    std::vector<Iri> undeclared;
    if (!index.declared_class(t.subject)) undeclared.push_back(t.subject);
    if (!t.object.is_iri()) {
      defects.push_back(SchemaDefect{DefectKind::dangling_reference, {t.subject},
                                     "subclass of a literal"});
      continue;
    }
    if (!index.declared_class(t.object.iri()) &&
        !(undeclared.size() == 1 && undeclared[0] == t.object.iri()))
      undeclared.push_back(t.object.iri());
    if (!undeclared.empty()) {
      defects.push_back(SchemaDefect{DefectKind::dangling_reference, undeclared,
                                     "SubClassOf references undeclared class"});
    }
    if (index.declared_class(t.subject) && index.declared_class(t.object.iri()))
      subclass_edges[t.subject].push_back(t.object.iri());
  }

  for (const auto& [prop, kind] : index.properties) {
    if (kind == PropertyKind::annotation) continue;
    const bool has_domain = !schema.match(prop, vocab::rdfs_domain(), std::nullopt).empty();
    const auto ranges = schema.match(prop, vocab::rdfs_range(), std::nullopt);
    if (!has_domain)
      defects.push_back(
          SchemaDefect{DefectKind::missing_domain_or_range, {prop}, "property has no domain"});
    if (ranges.empty())
      defects.push_back(SchemaDefect{DefectKind::missing_domain_or_range, {prop},
                                     "property has no range or enumeration"});
    for (const Triple& r : ranges) {
      if (r.object.is_iri() && index.datatype_nodes.count(r.object.iri()) &&
          kind != PropertyKind::data)
        defects.push_back(SchemaDefect{DefectKind::enumeration_on_non_data_property,
                                       {prop},
                                       "literal enumeration used on a non-data property"});
    }
  }

  SccFinder scc{subclass_edges, {}, {}, {}, {}, 0, {}};
  for (const auto& [node, _] : subclass_edges)
    if (!scc.index.count(node)) scc.strongconnect(node);
  for (auto& cycle : scc.cycles)
    defects.push_back(
        SchemaDefect{DefectKind::subclass_cycle, std::move(cycle), "subclass cycle"});

  return defects;
}

}  // namespace cbiont
