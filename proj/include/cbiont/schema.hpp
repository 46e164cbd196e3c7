#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cbiont/expected.hpp"
#include "cbiont/graph.hpp"

namespace cbiont {

// Typed view over TBox triples.

enum class PropertyKind { object, data, annotation };

struct ClassDecl { Iri cls; };
struct SubClassOf { Iri sub; Iri sup; };
struct PropertyDecl { Iri prop; PropertyKind kind; };
struct Domain { Iri prop; Iri cls; };
struct Range { Iri prop; Iri target; };
// Ordered, duplicate-free list of admissible literals for a data property.
struct DatatypeEnumeration { Iri prop; std::vector<Literal> allowed; };
// Marker triple, e.g. (has_location, cbiont:isExtension, "true"^^xsd:boolean).
struct Annotation { Iri subject; Iri prop; Literal value; };

using SchemaAxiom = std::variant<ClassDecl, SubClassOf, PropertyDecl, Domain, Range,
                                 DatatypeEnumeration, Annotation>;

enum class DefectKind {
  dangling_reference,
  missing_domain_or_range,
  enumeration_on_non_data_property,
  subclass_cycle,
};

struct SchemaDefect {
  DefectKind kind;
  std::vector<Iri> subjects;  // for cycles: the cycle's classes, sorted
  std::string detail;

  std::string to_string() const;
};

// Constructs the CBIOnt TBox: class declarations (core, leaf, and external
// classes), the subclass hierarchy and external alignment axioms, object and
// data properties with domains and ranges, the hasRemark literal enumeration,
// and extension-marker annotations. Deterministic pure constructor.
Graph build_schema();

// Lossless typed view of a schema graph; encode(axioms(g)) == g for graphs
// produced by build_schema. Fails on subclass/domain/range triples that
// reference undeclared terms.
Expected<std::vector<SchemaAxiom>, SchemaDefect> axioms(const Graph& schema);

// Re-encodes a typed axiom list as triples. Enumeration list nodes are named
// mechanically from the property IRI (<p>_values, <p>_values_1, ...).
Graph encode(const std::vector<SchemaAxiom>& axiom_list);

// Structural lint: dangling SubClassOf references, properties lacking a
// domain or a range/enumeration, enumerations on non-data properties, and
// subclass cycles. Defects are data, not failures.
std::vector<SchemaDefect> validate_schema(const Graph& schema);

}  // namespace cbiont
