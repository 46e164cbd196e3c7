#include "cbiont/turtle.hpp"

#include <cctype>
#include <map>
#include <string>

#include "scanner.hpp"

namespace cbiont {

std::string ParseError::to_string() const {
  const char* k = kind == ParseErrorKind::lexical ? "lexical"
                  : kind == ParseErrorKind::syntactic ? "syntactic"
                                                      : "semantic";
  return std::to_string(line) + ":" + std::to_string(column) + ": " + k + " error: " + message;
}

namespace {

using lex::ParseAbort;
using lex::Scanner;
using lex::Tok;
using lex::Token;
using lex::fail;

// Blank-node skolemization with a per-parse counter, label-preserving within
// one document.
class SkolemTable {
 public:
  Iri resolve(const std::string& label) {
    auto it = table_.find(label);
    if (it != table_.end()) return it->second;
    Iri iri("urn:skolem:b" + std::to_string(++counter_));
    table_.emplace(label, iri);
    return iri;
  }

 private:
  std::map<std::string, Iri> table_;
  int counter_ = 0;
};

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : scan_(text) { advance(); }

  TurtleDocument parse() {
    while (cur_.type != Tok::end) {
      if (cur_.type == Tok::at_ident) {
        parse_directive();
      } else {
        parse_triples_block();
      }
    }
    return TurtleDocument{std::move(graph_), std::move(prefixes_)};
  }

 private:
  void advance() { cur_ = scan_.next(); }

  void expect_dot() {
    if (cur_.type != Tok::dot)
      fail(cur_.line, cur_.column, "expected '.'", ParseErrorKind::syntactic);
    advance();
  }

  void parse_directive() {
    if (cur_.text != "prefix")
      fail(cur_.line, cur_.column, "unsupported directive '@" + cur_.text + "'",
           ParseErrorKind::syntactic);
    advance();
    if (cur_.type != Tok::pname || !cur_.aux.empty())
      fail(cur_.line, cur_.column, "expected a namespace prefix ending in ':'",
           ParseErrorKind::syntactic);
    const std::string label = cur_.text;
    advance();
    if (cur_.type != Tok::iriref)
      fail(cur_.line, cur_.column, "expected a namespace IRI", ParseErrorKind::syntactic);
    const Iri ns(cur_.text);
    advance();
    expect_dot();
    prefixes_.insert_or_assign(label, ns);
  }

  Iri resolve_pname(const Token& tok) {
    auto it = prefixes_.find(tok.text);
    if (it == prefixes_.end())
      fail(tok.line, tok.column, "undeclared prefix '" + tok.text + ":'",
           ParseErrorKind::semantic);
    std::string expanded = it->second.value() + tok.aux;
    if (!Iri::valid(expanded))
      fail(tok.line, tok.column, "prefixed name does not expand to a valid IRI",
           ParseErrorKind::semantic);
    return Iri(std::move(expanded));
  }

  [[noreturn]] void unsupported_structure() {
    if (cur_.type == Tok::lparen || cur_.type == Tok::rparen)
      fail(cur_.line, cur_.column, "collection syntax '( )' is not supported",
           ParseErrorKind::syntactic);
    fail(cur_.line, cur_.column, "blank-node property lists '[ ]' are not supported",
         ParseErrorKind::syntactic);
  }

  Iri parse_subject() {
    switch (cur_.type) {
      case Tok::iriref: {
        Iri iri(cur_.text);
        advance();
        return iri;
      }
      case Tok::pname: {
        Iri iri = resolve_pname(cur_);
        advance();
        return iri;
      }
      case Tok::blank: {
        Iri iri = skolems_.resolve(cur_.text);
        advance();
        return iri;
      }
      case Tok::string_lit:
      case Tok::integer_lit:
      case Tok::boolean_lit:
        fail(cur_.line, cur_.column, "a literal cannot be the subject of a triple",
             ParseErrorKind::syntactic);
      case Tok::lparen:
      case Tok::rparen:
      case Tok::lbracket:
      case Tok::rbracket:
        unsupported_structure();
      default:
        fail(cur_.line, cur_.column, "expected a subject", ParseErrorKind::syntactic);
    }
  }

  Iri parse_predicate() {
    switch (cur_.type) {
      case Tok::kw_a:
        advance();
        return vocab::rdf_type();
      case Tok::iriref: {
        Iri iri(cur_.text);
        advance();
        return iri;
      }
      case Tok::pname: {
        Iri iri = resolve_pname(cur_);
        advance();
        return iri;
      }
      case Tok::blank:
        fail(cur_.line, cur_.column, "a blank node cannot be the predicate of a triple",
             ParseErrorKind::syntactic);
      case Tok::lparen:
      case Tok::lbracket:
        unsupported_structure();
      default:
        fail(cur_.line, cur_.column, "expected a predicate", ParseErrorKind::syntactic);
    }
  }

  Term parse_literal_object() {
    const Token str = cur_;
    advance();
    if (cur_.type == Tok::at_ident) {
      const Token tag = cur_;
      if (!Literal::valid_lang_tag(tag.text))
        fail(tag.line, tag.column, "malformed language tag '@" + tag.text + "'",
             ParseErrorKind::lexical);
      advance();
      return Literal::lang_string(str.text, tag.text);
    }
    if (cur_.type == Tok::hathat) {
      advance();
      Iri datatype = [&]() -> Iri {
        if (cur_.type == Tok::iriref) return Iri(cur_.text);
        if (cur_.type == Tok::pname) return resolve_pname(cur_);
        fail(cur_.line, cur_.column, "expected a datatype IRI after '^^'",
             ParseErrorKind::syntactic);
      }();
      if (datatype == vocab::rdf_lang_string())
        fail(cur_.line, cur_.column, "rdf:langString literals take '@tag', not '^^'",
             ParseErrorKind::semantic);
      advance();
      return Literal(str.text, std::move(datatype));
    }
    return Literal::string(str.text);
  }

  Term parse_object() {
    switch (cur_.type) {
      case Tok::iriref: {
        Iri iri(cur_.text);
        advance();
        return Term(std::move(iri));
      }
      case Tok::pname: {
        Iri iri = resolve_pname(cur_);
        advance();
        return Term(std::move(iri));
      }
      case Tok::blank: {
        Iri iri = skolems_.resolve(cur_.text);
        advance();
        return Term(std::move(iri));
      }
      case Tok::string_lit:
        return parse_literal_object();
      case Tok::integer_lit: {
        Term t = Literal(cur_.text, vocab::xsd_integer());
        advance();
        return t;
      }
      case Tok::boolean_lit: {
        Term t = Literal(cur_.text, vocab::xsd_boolean());
        advance();
        return t;
      }
      case Tok::lparen:
      case Tok::lbracket:
        unsupported_structure();
      default:
        fail(cur_.line, cur_.column, "expected an object", ParseErrorKind::syntactic);
    }
  }

  void parse_triples_block() {
    const Iri subject = parse_subject();
    while (true) {
      const Iri predicate = parse_predicate();
      while (true) {
        Term object = parse_object();
        graph_.insert(Triple(subject, predicate, std::move(object)));
        if (cur_.type != Tok::comma) break;
        advance();
      }
      if (cur_.type == Tok::semicolon) {
        advance();
        if (cur_.type == Tok::dot) break;  // trailing ';'
        continue;
      }
      break;
    }
    expect_dot();
  }

  Scanner scan_;
  Token cur_;
  Graph graph_;
  PrefixMap prefixes_;
  SkolemTable skolems_;
};

// N-Triples: same token stream, restricted grammar.
class NTriplesParser {
 public:
  explicit NTriplesParser(std::string_view text) : scan_(text) { advance(); }

  Graph parse() {
    while (cur_.type != Tok::end) {
      const Iri subject = parse_resource("subject");
      if (cur_.type != Tok::iriref) {
        if (turtle_only_token()) reject_turtle_form();
        fail(cur_.line, cur_.column, "expected a predicate IRI", ParseErrorKind::syntactic);
      }
      const Iri predicate(cur_.text);
      advance();
      Term object = parse_object();
      if (cur_.type != Tok::dot)
        fail(cur_.line, cur_.column, "expected '.'", ParseErrorKind::syntactic);
      advance();
      graph_.insert(Triple(subject, predicate, std::move(object)));
    }
    return std::move(graph_);
  }

 private:
  void advance() { cur_ = scan_.next(); }

  bool turtle_only_token() const {
    switch (cur_.type) {
      case Tok::pname:
      case Tok::kw_a:
      case Tok::integer_lit:
      case Tok::boolean_lit:
      case Tok::semicolon:
      case Tok::comma:
        return true;
      default:
        return false;
    }
  }

  [[noreturn]] void reject_turtle_form() {
    fail(cur_.line, cur_.column, "Turtle shorthand is not allowed in N-Triples",
         ParseErrorKind::syntactic);
  }

  Iri parse_resource(const char* what) {
    if (cur_.type == Tok::iriref) {
      Iri iri(cur_.text);
      advance();
      return iri;
    }
    if (cur_.type == Tok::blank) {
      Iri iri = skolems_.resolve(cur_.text);
      advance();
      return iri;
    }
    if (turtle_only_token()) reject_turtle_form();
    fail(cur_.line, cur_.column, std::string("expected a ") + what + " IRI",
         ParseErrorKind::syntactic);
  }

  Term parse_object() {
    if (cur_.type == Tok::iriref || cur_.type == Tok::blank) return Term(parse_resource("object"));
    if (cur_.type == Tok::string_lit) {
      const Token str = cur_;
      advance();
      if (cur_.type == Tok::at_ident) {
        const Token tag = cur_;
        if (!Literal::valid_lang_tag(tag.text))
          fail(tag.line, tag.column, "malformed language tag '@" + tag.text + "'",
               ParseErrorKind::lexical);
        advance();
        return Literal::lang_string(str.text, tag.text);
      }
      if (cur_.type == Tok::hathat) {
        advance();
        if (cur_.type != Tok::iriref)
          fail(cur_.line, cur_.column, "expected a datatype IRI after '^^'",
               ParseErrorKind::syntactic);
        Iri datatype(cur_.text);
        if (datatype == vocab::rdf_lang_string())
          fail(cur_.line, cur_.column, "rdf:langString literals take '@tag', not '^^'",
               ParseErrorKind::semantic);
        advance();
        return Literal(str.text, std::move(datatype));
      }
      return Literal::string(str.text);
    }
    if (turtle_only_token()) reject_turtle_form();
    fail(cur_.line, cur_.column, "expected an object", ParseErrorKind::syntactic);
  }

  Scanner scan_;
  Token cur_;
  Graph graph_;
  SkolemTable skolems_;
};

bool safe_local_name(std::string_view local) {
  if (local.empty()) return false;
  const char first = local.front();
  if (!(std::isalpha(static_cast<unsigned char>(first)) || first == '_')) return false;
  for (char c : local)
    if (!lex::word_char(c)) return false;
  return true;
}

bool integer_lexical(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

namespace detail {

// Longest-namespace abbreviation; ties (one namespace under two labels)
// resolve to the lexicographically smallest label. Falls back to <...>.
std::string turtle_iri(const Iri& iri, const PrefixMap& prefixes) {
  const std::string* best_label = nullptr;
  std::size_t best_len = 0;
  for (const auto& [label, ns] : prefixes) {
    const std::string& n = ns.value();
    if (n.size() <= best_len) continue;
    if (iri.value().size() <= n.size() || iri.value().compare(0, n.size(), n) != 0) continue;
    if (!safe_local_name(std::string_view(iri.value()).substr(n.size()))) continue;
    best_label = &label;
    best_len = n.size();
  }
  if (!best_label) return iri.ntriples();
  return *best_label + ":" + iri.value().substr(best_len);
}

std::string turtle_term(const Term& term, const PrefixMap& prefixes) {
  if (term.is_iri()) return turtle_iri(term.iri(), prefixes);
  const Literal& lit = term.literal();
  if (lit.datatype() == vocab::xsd_integer() && integer_lexical(lit.lexical()))
    return lit.lexical();
  if (lit.datatype() == vocab::xsd_boolean() &&
      (lit.lexical() == "true" || lit.lexical() == "false"))
    return lit.lexical();
  std::string out = "\"" + escape_string_literal(lit.lexical()) + "\"";
  if (lit.lang()) {
    out += "@" + *lit.lang();
  } else if (!(lit.datatype() == vocab::xsd_string())) {
    out += "^^" + turtle_iri(lit.datatype(), prefixes);
  }
  return out;
}

}  // namespace detail

Expected<TurtleDocument, ParseError> parse_turtle(std::string_view text) {
  try {
    return TurtleParser(text).parse();
  } catch (const ParseAbort& abort) {
    return abort.err;
  }
}

Expected<Graph, ParseError> parse_ntriples(std::string_view text) {
  try {
    return NTriplesParser(text).parse();
  } catch (const ParseAbort& abort) {
    return abort.err;
  }
}

std::string serialize_ntriples(const Graph& graph) {
  std::string out;
  for (const Triple& t : graph) {
    out += t.ntriples_line();
    out += '\n';
  }
  return out;
}

std::string serialize_turtle(const Graph& graph, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& [label, ns] : prefixes)
    out += "@prefix " + label + ": <" + ns.value() + "> .\n";

  bool first_block = true;
  auto it = graph.begin();
  while (it != graph.end()) {
    const Iri& subject = it->subject;
    if (!first_block || !prefixes.empty()) out += '\n';
    first_block = false;
    out += detail::turtle_iri(subject, prefixes);

    bool first_predicate = true;
    while (it != graph.end() && it->subject == subject) {
      const Iri& predicate = it->predicate;
      out += first_predicate ? " " : " ;\n    ";
      first_predicate = false;
      out += predicate == vocab::rdf_type() ? "a" : detail::turtle_iri(predicate, prefixes);
      bool first_object = true;
      while (it != graph.end() && it->subject == subject && it->predicate == predicate) {
        out += first_object ? " " : ", ";
        first_object = false;
        out += detail::turtle_term(it->object, prefixes);
        ++it;
      }
    }
    out += " .\n";
  }
  return out;
}

}  // namespace cbiont
