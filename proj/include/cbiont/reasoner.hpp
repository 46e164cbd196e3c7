#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbiont/graph.hpp"

namespace cbiont {

// The fixed, closed rule set.
enum class RuleId {
  subclass_transitivity,  // A subClassOf B, B subClassOf C  =>  A subClassOf C
  type_propagation,       // x type A, A subClassOf B        =>  x type B
  domain_typing,          // x p y, domain(p, C)             =>  x type C
  range_typing,           // x p y, range(p, C), p object    =>  y type C
};

struct InferenceRule {
  RuleId id;
  std::string_view description;
};

std::span<const InferenceRule> inference_rules();

struct Violation {
  enum class Kind {
    enumeration_violation,
    datatype_violation,
    undeclared_term,    // warning-grade
    multi_leaf_typing,  // warning-grade, --pedantic only
  };

  Kind kind;
  Iri subject;
  std::optional<Iri> property;
  std::string detail;

  // Enumeration and datatype violations are errors; the rest are warnings.
  bool is_error() const {
    return kind == Kind::enumeration_violation || kind == Kind::datatype_violation;
  }
};

std::string_view violation_kind_name(Violation::Kind kind);

// Line-oriented and JSON reports (stable field names kind/subject/property/detail).
std::string violations_text(std::span<const Violation> violations);
std::string violations_json(std::span<const Violation> violations);

// Forward-chaining materialization: returns abox plus every fact derivable by
// exhaustive application of the four rules over abox and schema, to fixpoint.
// Reflexive subclass facts are never asserted. Throws std::invalid_argument
// if the schema has a subclass cycle.
Graph materialize(const Graph& abox, const Graph& schema);

// Same, with an explicit per-iteration rule application order. The result is
// independent of the order; tests exercise that.
Graph materialize(const Graph& abox, const Graph& schema, std::span<const RuleId> rule_order);

// Reflexive-transitive reachability over the schema's subClassOf edges.
bool is_subclass_of(const Iri& a, const Iri& b, const Graph& schema);

// Sorted subjects x with (x, rdf:type, c) present.
std::vector<Iri> instances_of(const Iri& c, const Graph& materialized);

// Constraint validation: literal-enumeration membership (case-sensitive,
// exact datatype), data-property range datatypes, undeclared predicates
// (warning-grade). With pedantic, also warns when an individual is typed
// under two or more leaves of the same CBIOnt hub class.
std::vector<Violation> validate(const Graph& abox, const Graph& schema, bool pedantic = false);

}  // namespace cbiont
