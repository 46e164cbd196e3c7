#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace cbiont {

// Absolute IRI. Two IRIs are equal iff their strings are codepoint-identical;
// no normalization is performed. Construction rejects strings that are not
// plausible absolute IRIs: empty, missing a scheme separator ':', or
// containing whitespace, control characters, or characters RFC 3987 forbids
// raw in an IRI (<>"{}|^`\). The last rule means the N-Triples rendering of
// an Iri is always '<' + value + '>' verbatim.
class Iri {
 public:
  explicit Iri(std::string value);

  const std::string& value() const noexcept { return value_; }
  std::string ntriples() const { return "<" + value_ + ">"; }

  static bool valid(std::string_view value) noexcept;

  // Total order identical to lexicographic order of the N-Triples rendering.
  int compare(const Iri& other) const noexcept;

  bool operator==(const Iri& other) const noexcept { return value_ == other.value_; }
  std::strong_ordering operator<=>(const Iri& other) const noexcept {
    const int c = compare(other);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

 private:
  std::string value_;
};

// RDF literal: lexical form plus datatype IRI, with an optional language tag.
// A language tag is present iff the datatype is rdf:langString. Datatype
// lexical spaces are not validated here (only the reasoner's rules check
// specific value sets). Equality is (lexical, datatype, lang) equality.
class Literal {
 public:
  // Typed literal. Throws std::invalid_argument if datatype is rdf:langString
  // (use lang_string for those).
  Literal(std::string lexical, Iri datatype);

  // Plain string literal; datatype xsd:string.
  static Literal string(std::string lexical);

  // Language-tagged string; datatype rdf:langString. The tag must be
  // BCP-47-shaped: [A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*.
  static Literal lang_string(std::string lexical, std::string lang);

  const std::string& lexical() const noexcept { return lexical_; }
  const Iri& datatype() const noexcept { return datatype_; }
  const std::optional<std::string>& lang() const noexcept { return lang_; }

  // Canonical N-Triples rendering, cached at construction. xsd:string
  // literals render without a datatype suffix.
  const std::string& ntriples() const noexcept { return rendered_; }

  int compare(const Literal& other) const noexcept { return rendered_.compare(other.rendered_); }

  bool operator==(const Literal& other) const noexcept { return rendered_ == other.rendered_; }
  std::strong_ordering operator<=>(const Literal& other) const noexcept {
    const int c = compare(other);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

  static bool valid_lang_tag(std::string_view tag) noexcept;

 private:
  Literal(std::string lexical, Iri datatype, std::optional<std::string> lang);

  std::string lexical_;
  Iri datatype_;
  std::optional<std::string> lang_;
  std::string rendered_;
};

// A node of the RDF universe: an IRI or a literal. There is no blank-node
// variant anywhere in the model; parsers skolemize blank nodes on sight.
class Term {
 public:
  Term(Iri iri) : node_(std::move(iri)) {}
  Term(Literal literal) : node_(std::move(literal)) {}

  bool is_iri() const noexcept { return node_.index() == 0; }
  bool is_literal() const noexcept { return node_.index() == 1; }

  const Iri& iri() const { return std::get<Iri>(node_); }
  const Literal& literal() const { return std::get<Literal>(node_); }

  std::string ntriples() const {
    return is_iri() ? iri().ntriples() : literal().ntriples();
  }

  // Lexicographic order of the N-Triples rendering. All literals precede all
  // IRIs because '"' < '<'.
  int compare(const Term& other) const noexcept;

  bool operator==(const Term& other) const noexcept;
  std::strong_ordering operator<=>(const Term& other) const noexcept {
    const int c = compare(other);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

 private:
  std::variant<Iri, Literal> node_;
};

// Escapes a string for inclusion between double quotes in N-Triples/Turtle
// output: \\ \" \n \r \t plus \u00XX for remaining control characters.
std::string escape_string_literal(std::string_view raw);

}  // namespace cbiont
