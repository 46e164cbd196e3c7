#pragma once

#include <string>
#include <string_view>

#include "cbiont/expected.hpp"
#include "cbiont/graph.hpp"
#include "cbiont/vocab.hpp"

namespace cbiont {

using vocab::PrefixMap;

enum class ParseErrorKind { lexical, syntactic, semantic };

// Position of the first offending character, 1-based.
struct ParseError {
  int line = 1;
  int column = 1;
  std::string message;
  ParseErrorKind kind = ParseErrorKind::syntactic;

  std::string to_string() const;
};

struct TurtleDocument {
  Graph graph;
  PrefixMap prefixes;  // final prefix map after all directives
};

// Parses the Turtle subset: @prefix directives, bracketed IRIs, prefixed
// names, the 'a' keyword, ';' and ',' abbreviations, string literals with
// ^^datatype or @lang, integer/boolean shorthand. Blank node labels are
// skolemized under urn:skolem: with a per-parse counter. Collections '()'
// and blank-node property lists '[]' are rejected as unsupported.
Expected<TurtleDocument, ParseError> parse_turtle(std::string_view text);

// Deterministic output: prefixes sorted by label, triples grouped by subject,
// everything ordered by N-Triples rendering. Output re-parses to an equal
// graph. IRIs are abbreviated when a prefix namespace applies and the
// remainder is a safe local name.
std::string serialize_turtle(const Graph& graph, const PrefixMap& prefixes);

// Canonical line format "<s> <p> <o> ." with the same literal quoting as the
// Turtle subset; serialize output is the sorted sequence of per-triple lines.
Expected<Graph, ParseError> parse_ntriples(std::string_view text);
std::string serialize_ntriples(const Graph& graph);

}  // namespace cbiont
