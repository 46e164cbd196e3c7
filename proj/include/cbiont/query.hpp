#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cbiont/expected.hpp"
#include "cbiont/graph.hpp"
#include "cbiont/turtle.hpp"

namespace cbiont {

struct Variable {
  std::string name;  // without the '?' sigil

  bool operator==(const Variable& other) const { return name == other.name; }
  auto operator<=>(const Variable& other) const { return name <=> other.name; }
};

// A pattern position: a concrete term or a variable. Predicates may not be
// literals; enforced at parse/eval time.
using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

struct EqualityFilter {
  Variable var;
  Term value;
};
struct InSetFilter {
  Variable var;
  std::vector<Term> allowed;
};
using Filter = std::variant<EqualityFilter, InSetFilter>;

// Basic graph pattern query with DISTINCT semantics (always on).
struct SelectQuery {
  std::vector<Variable> projection;
  std::vector<TriplePattern> patterns;
  std::vector<Filter> filters;
};

// One solution row; bindings are stored in projection order and are total
// over the projection.
class BindingSet {
 public:
  BindingSet() = default;
  BindingSet(std::vector<std::pair<Variable, Term>> bound) : bound_(std::move(bound)) {}

  const std::vector<std::pair<Variable, Term>>& entries() const noexcept { return bound_; }
  const Term* find(const Variable& v) const;

  bool operator==(const BindingSet& other) const;

 private:
  std::vector<std::pair<Variable, Term>> bound_;
};

// Evaluates the conjunctive pattern under set semantics. Join order follows
// pattern selectivity (most bound positions first) and never affects the
// result set. Rows are deduplicated after projection and sorted by the
// N-Triples rendering of the projected terms. A query whose patterns are all
// ground acts as a containment check: one empty row iff every pattern is
// present.
std::vector<BindingSet> evaluate(const SelectQuery& q, const Graph& g);

// Grammar: SELECT ?v1 ... WHERE { tp . tp . FILTER(?v = term)
// FILTER(?v IN (t1, t2)) } with prefixed names resolved against the standard
// prefix map and the same literal syntax as the Turtle subset.
Expected<SelectQuery, ParseError> parse_query(std::string_view text);

// The competency-question catalog, CQ1..CQ8. With a session IRI the query is
// anchored at that session; without one, a ?session variable is projected
// first. Throws std::invalid_argument for ids outside 1..8.
SelectQuery competency_query(int id, const std::optional<Iri>& session);

// Human-readable one-line description of each catalog entry.
std::string_view competency_question(int id);

// Result formatting. TSV: header of variable names, then one row per
// BindingSet, terms rendered as N-Triples. JSON: array of objects keyed by
// variable name, in projection order.
std::string results_tsv(const SelectQuery& q, std::span<const BindingSet> rows);
std::string results_json(const SelectQuery& q, std::span<const BindingSet> rows);

}  // namespace cbiont
