#include "cbiont/query.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "scanner.hpp"

namespace cbiont {

namespace {

namespace v = vocab;
using lex::ParseAbort;
using lex::Scanner;
using lex::Tok;
using lex::Token;
using lex::fail;

bool is_variable(const PatternTerm& pt) { return std::holds_alternative<Variable>(pt); }

const Variable& as_variable(const PatternTerm& pt) { return std::get<Variable>(pt); }
const Term& as_term(const PatternTerm& pt) { return std::get<Term>(pt); }

int bound_positions(const TriplePattern& p) {
  return int(!is_variable(p.subject)) + int(!is_variable(p.predicate)) +
         int(!is_variable(p.object));
}

using Bindings = std::map<std::string, Term>;

// Resolves one pattern position against the current bindings: a concrete
// term, a bound variable's value, or unbound.
const Term* resolve(const PatternTerm& pt, const Bindings& bindings) {
  if (!is_variable(pt)) return &as_term(pt);
  auto it = bindings.find(as_variable(pt).name);
  return it == bindings.end() ? nullptr : &it->second;
}

bool filters_pass(const std::vector<Filter>& filters, const Bindings& bindings) {
  for (const Filter& f : filters) {
    const bool ok = std::visit(
        [&](const auto& filter) {
          auto it = bindings.find(filter.var.name);
          if (it == bindings.end()) return false;  // unreachable for well-formed queries
          using F = std::decay_t<decltype(filter)>;
          if constexpr (std::is_same_v<F, EqualityFilter>) {
            return it->second == filter.value;
          } else {
            return std::find(filter.allowed.begin(), filter.allowed.end(), it->second) !=
                   filter.allowed.end();
          }
        },
        f);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

const Term* BindingSet::find(const Variable& v) const {
  for (const auto& [var, term] : bound_)
    if (var == v) return &term;
  return nullptr;
}

bool BindingSet::operator==(const BindingSet& other) const { return bound_ == other.bound_; }

std::vector<BindingSet> evaluate(const SelectQuery& q, const Graph& g) {
  // Static join order: most bound positions first; stable on ties.
  std::vector<std::size_t> order(q.patterns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bound_positions(q.patterns[a]) > bound_positions(q.patterns[b]);
  });

  std::set<std::vector<Term>> rows;

  Bindings bindings;
  auto emit = [&] {
    if (!filters_pass(q.filters, bindings)) return;
    std::vector<Term> row;
    row.reserve(q.projection.size());
    for (const Variable& var : q.projection) {
      auto it = bindings.find(var.name);
      if (it == bindings.end()) return;  // unreachable for well-formed queries
      row.push_back(it->second);
    }
    rows.insert(std::move(row));
  };

  auto step = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      emit();
      return;
    }
    const TriplePattern& pattern = q.patterns[order[depth]];
    const Term* s = resolve(pattern.subject, bindings);
    const Term* p = resolve(pattern.predicate, bindings);
    const Term* o = resolve(pattern.object, bindings);
    // A bound literal can never occupy subject or predicate position.
    if (s && !s->is_iri()) return;
    if (p && !p->is_iri()) return;

    const auto matches = g.match(s ? std::optional<Iri>(s->iri()) : std::nullopt,
                                 p ? std::optional<Iri>(p->iri()) : std::nullopt,
                                 o ? std::optional<Term>(*o) : std::nullopt);
    for (const Triple& t : matches) {
      // Bind the unbound variable positions, respecting repeated variables
      // within the pattern.
      std::vector<std::string> bound_here;
      bool consistent = true;
      auto bind = [&](const PatternTerm& pt, const Term& value) {
        if (!consistent || !is_variable(pt)) return;
        const std::string& name = as_variable(pt).name;
        auto it = bindings.find(name);
        if (it != bindings.end()) {
          consistent = it->second == value;
          return;
        }
        bindings.emplace(name, value);
        bound_here.push_back(name);
      };
      bind(pattern.subject, Term(t.subject));
      bind(pattern.predicate, Term(t.predicate));
      bind(pattern.object, t.object);
      if (consistent) self(self, depth + 1);
      for (const std::string& name : bound_here) bindings.erase(name);
    }
  };
  step(step, 0);

  std::vector<BindingSet> out;
  out.reserve(rows.size());
  for (const std::vector<Term>& row : rows) {
    std::vector<std::pair<Variable, Term>> entries;
    entries.reserve(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) entries.emplace_back(q.projection[i], row[i]);
    out.push_back(BindingSet(std::move(entries)));
  }
  return out;
}

namespace {

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : scan_(text) { advance(); }

  SelectQuery parse() {
    expect_word("SELECT");
    while (cur_.type == Tok::variable) {
      projection_tokens_.push_back(cur_);
      query_.projection.push_back(Variable{cur_.text});
      advance();
    }
    if (query_.projection.empty())
      fail(cur_.line, cur_.column, "expected at least one projection variable",
           ParseErrorKind::syntactic);
    expect_word("WHERE");
    if (cur_.type != Tok::lbrace)
      fail(cur_.line, cur_.column, "expected '{'", ParseErrorKind::syntactic);
    const Token lbrace = cur_;
    advance();

    while (cur_.type != Tok::rbrace && !is_filter_keyword()) {
      query_.patterns.push_back(parse_pattern());
      if (cur_.type == Tok::dot) {
        advance();
        continue;
      }
      break;
    }
    while (is_filter_keyword()) parse_filter();
    if (cur_.type != Tok::rbrace)
      fail(cur_.line, cur_.column, "expected '.', 'FILTER' or '}'", ParseErrorKind::syntactic);
    advance();
    if (cur_.type != Tok::end)
      fail(cur_.line, cur_.column, "unexpected content after query", ParseErrorKind::syntactic);

    if (query_.patterns.empty())
      fail(lbrace.line, lbrace.column, "empty pattern set", ParseErrorKind::semantic);
    check_variable_use();
    return std::move(query_);
  }

 private:
  void advance() { cur_ = scan_.next(); }

  bool is_filter_keyword() const { return cur_.type == Tok::word && cur_.text == "FILTER"; }

  void expect_word(const char* word) {
    if (cur_.type != Tok::word || cur_.text != word)
      fail(cur_.line, cur_.column, std::string("expected '") + word + "'",
           ParseErrorKind::syntactic);
    advance();
  }

  Iri resolve_pname(const Token& tok) {
    const PrefixMap& prefixes = vocab::standard_prefixes();
    auto it = prefixes.find(tok.text);
    if (it == prefixes.end())
      fail(tok.line, tok.column,
           "unknown prefix '" + tok.text + ":' (queries use the standard prefix map)",
           ParseErrorKind::semantic);
    std::string expanded = it->second.value() + tok.aux;
    if (!Iri::valid(expanded))
      fail(tok.line, tok.column, "prefixed name does not expand to a valid IRI",
           ParseErrorKind::semantic);
    return Iri(std::move(expanded));
  }

  Term parse_term(bool allow_literal) {
    switch (cur_.type) {
      case Tok::iriref: {
        Term t{Iri(cur_.text)};
        advance();
        return t;
      }
      case Tok::pname: {
        Term t{resolve_pname(cur_)};
        advance();
        return t;
      }
      case Tok::string_lit: {
        if (!allow_literal)
          fail(cur_.line, cur_.column, "a literal is not allowed here", ParseErrorKind::syntactic);
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
          if (datatype == v::rdf_lang_string())
            fail(cur_.line, cur_.column, "rdf:langString literals take '@tag', not '^^'",
                 ParseErrorKind::semantic);
          advance();
          return Literal(str.text, std::move(datatype));
        }
        return Literal::string(str.text);
      }
      case Tok::integer_lit: {
        if (!allow_literal)
          fail(cur_.line, cur_.column, "a literal is not allowed here", ParseErrorKind::syntactic);
        Term t{Literal(cur_.text, v::xsd_integer())};
        advance();
        return t;
      }
      case Tok::boolean_lit: {
        if (!allow_literal)
          fail(cur_.line, cur_.column, "a literal is not allowed here", ParseErrorKind::syntactic);
        Term t{Literal(cur_.text, v::xsd_boolean())};
        advance();
        return t;
      }
      default:
        fail(cur_.line, cur_.column, "expected an IRI, prefixed name or literal",
             ParseErrorKind::syntactic);
    }
  }

  PatternTerm parse_position(bool is_predicate, bool is_object) {
    if (cur_.type == Tok::variable) {
      Variable var{cur_.text};
      pattern_variables_.insert(cur_.text);
      advance();
      return var;
    }
    if (cur_.type == Tok::kw_a) {
      if (!is_predicate)
        fail(cur_.line, cur_.column, "'a' is only valid as a predicate",
             ParseErrorKind::syntactic);
      advance();
      return Term(v::rdf_type());
    }
    return parse_term(/*allow_literal=*/is_object);
  }

  TriplePattern parse_pattern() {
    TriplePattern pattern{parse_position(false, false), parse_position(true, false),
                          parse_position(false, true)};
    return pattern;
  }

  void parse_filter() {
    advance();  // FILTER
    if (cur_.type != Tok::lparen)
      fail(cur_.line, cur_.column, "expected '(' after FILTER", ParseErrorKind::syntactic);
    advance();
    if (cur_.type != Tok::variable)
      fail(cur_.line, cur_.column, "expected a variable in FILTER", ParseErrorKind::syntactic);
    const Token var_tok = cur_;
    Variable var{cur_.text};
    advance();
    if (cur_.type == Tok::equals) {
      advance();
      Term value = parse_term(true);
      query_.filters.push_back(EqualityFilter{var, std::move(value)});
    } else if (cur_.type == Tok::word && cur_.text == "IN") {
      advance();
      if (cur_.type != Tok::lparen)
        fail(cur_.line, cur_.column, "expected '(' after IN", ParseErrorKind::syntactic);
      advance();
      std::vector<Term> allowed;
      allowed.push_back(parse_term(true));
      while (cur_.type == Tok::comma) {
        advance();
        allowed.push_back(parse_term(true));
      }
      if (cur_.type != Tok::rparen)
        fail(cur_.line, cur_.column, "expected ')' to close the IN set",
             ParseErrorKind::syntactic);
      advance();
      query_.filters.push_back(InSetFilter{var, std::move(allowed)});
    } else {
      fail(cur_.line, cur_.column, "expected '=' or 'IN' in FILTER", ParseErrorKind::syntactic);
    }
    filter_tokens_.push_back(var_tok);
    if (cur_.type != Tok::rparen)
      fail(cur_.line, cur_.column, "expected ')' to close FILTER", ParseErrorKind::syntactic);
    advance();
  }

  void check_variable_use() {
    for (std::size_t i = 0; i < query_.projection.size(); ++i) {
      if (!pattern_variables_.count(query_.projection[i].name)) {
        const Token& tok = projection_tokens_[i];
        fail(tok.line, tok.column,
             "projected variable ?" + tok.text + " does not occur in any pattern",
             ParseErrorKind::semantic);
      }
    }
    for (const Token& tok : filter_tokens_) {
      if (!pattern_variables_.count(tok.text))
        fail(tok.line, tok.column,
             "filtered variable ?" + tok.text + " does not occur in any pattern",
             ParseErrorKind::semantic);
    }
  }

  Scanner scan_;
  Token cur_;
  SelectQuery query_;
  std::vector<Token> projection_tokens_;
  std::vector<Token> filter_tokens_;
  std::set<std::string> pattern_variables_;
};

}  // namespace

Expected<SelectQuery, ParseError> parse_query(std::string_view text) {
  try {
    return QueryParser(text).parse();
  } catch (const ParseAbort& abort) {
    return abort.err;
  }
}

namespace {

constexpr std::string_view kCompetencyQuestions[8] = {
    "location of the session",
    "date and time of the session",
    "collaborators in the session and their affiliations",
    "answers recorded in the session",
    "form of the session and the concepts it falls under",
    "texts discussed in the session",
    "research aspect of the session",
    "decision phase of the session",
};

}  // namespace

std::string_view competency_question(int id) {
  if (id < 1 || id > 8) throw std::invalid_argument("competency question id must be in 1..8");
  return kCompetencyQuestions[id - 1];
}

SelectQuery competency_query(int id, const std::optional<Iri>& session) {
  if (id < 1 || id > 8) throw std::invalid_argument("competency question id must be in 1..8");

  SelectQuery q;
  const Variable session_var{"session"};
  const PatternTerm subject =
      session ? PatternTerm(Term(*session)) : PatternTerm(session_var);
  if (!session) {
    q.projection.push_back(session_var);
    q.patterns.push_back(TriplePattern{session_var, Term(v::rdf_type()), Term(v::cbi_session())});
  }

  auto project = [&](std::initializer_list<const char*> names) {
    for (const char* name : names) q.projection.push_back(Variable{name});
  };
  auto var = [](const char* name) { return PatternTerm(Variable{name}); };
  auto pred = [](const Iri& p) { return PatternTerm(Term(p)); };

  switch (id) {
    case 1:
      project({"location"});
      q.patterns.push_back({subject, pred(v::has_location()), var("location")});
      break;
    case 2:
      project({"dateTime"});
      q.patterns.push_back({subject, pred(v::has_time()), var("instant")});
      q.patterns.push_back({var("instant"), pred(v::time_in_xsd_date_time()), var("dateTime")});
      break;
    case 3:
      project({"collaborator", "affiliation"});
      q.patterns.push_back({subject, pred(v::owned_by()), var("collaborator")});
      q.patterns.push_back({var("collaborator"), pred(v::affiliated_with()), var("affiliation")});
      break;
    case 4:
      project({"remark", "text"});
      q.patterns.push_back({subject, pred(v::contains_remark()), var("remark")});
      q.patterns.push_back({var("remark"), pred(v::has_remark()), var("kind")});
      q.patterns.push_back({var("remark"), pred(v::has_description()), var("text")});
      q.filters.push_back(EqualityFilter{Variable{"kind"}, Term(Literal::string("Answer"))});
      break;
    case 5:
      project({"form", "class"});
      q.patterns.push_back({subject, pred(v::has_type()), var("form")});
      q.patterns.push_back({var("form"), pred(v::rdf_type()), var("class")});
      break;
    case 6:
      project({"text"});
      q.patterns.push_back({subject, pred(v::contains_remark()), var("remark")});
      q.patterns.push_back({var("remark"), pred(v::has_description()), var("text")});
      break;
    case 7:
      project({"aspect"});
      q.patterns.push_back({subject, pred(v::belongs_to()), var("aspect")});
      break;
    case 8:
      project({"phase"});
      q.patterns.push_back({subject, pred(v::associated_with()), var("phase")});
      break;
  }
  return q;
}

std::string results_tsv(const SelectQuery& q, std::span<const BindingSet> rows) {
  std::string out;
  for (std::size_t i = 0; i < q.projection.size(); ++i) {
    if (i) out += '\t';
    out += "?" + q.projection[i].name;
  }
  out += '\n';
  for (const BindingSet& row : rows) {
    const auto& entries = row.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i) out += '\t';
      out += entries[i].second.ntriples();
    }
    out += '\n';
  }
  return out;
}

std::string results_json(const SelectQuery& q, std::span<const BindingSet> rows) {
  (void)q;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const BindingSet& row : rows) {
    nlohmann::ordered_json obj;
    for (const auto& [var, term] : row.entries()) obj[var.name] = term.ntriples();
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

}  // namespace cbiont
