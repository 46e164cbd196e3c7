#include "cbiont/term.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "cbiont/vocab.hpp"

namespace cbiont {

namespace {

bool forbidden_in_iri(unsigned char c) {
  if (c < 0x20 || c == 0x7F) return true;  // control chars
  switch (c) {
    case ' ':
    case '<':
    case '>':
    case '"':
    case '{':
    case '}':
    case '|':
    case '^':
    case '`':
    case '\\':
      return true;
    default:
      return false;
  }
}

}  // namespace

bool Iri::valid(std::string_view value) noexcept {
  if (value.empty()) return false;
  bool has_colon = false;
  for (unsigned char c : value) {
    if (forbidden_in_iri(c)) return false;
    if (c == ':') has_colon = true;
  }
  return has_colon;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!valid(value_)) throw std::invalid_argument("not a valid absolute IRI: '" + value_ + "'");
}

int Iri::compare(const Iri& other) const noexcept {
  // Order of "<a>" vs "<b>". The values never contain '>', so when one value
  // is a strict prefix of the other, the shorter one's next rendered byte is
  // its closing '>', which must be compared against the longer one's byte.
  const std::string& a = value_;
  const std::string& b = other.value_;
  const std::size_t n = std::min(a.size(), b.size());
  if (const int c = a.compare(0, n, b, 0, n); c != 0) return c < 0 ? -1 : 1;
  if (a.size() == b.size()) return 0;
  if (a.size() < b.size()) return '>' < static_cast<unsigned char>(b[n]) ? -1 : 1;
  return static_cast<unsigned char>(a[n]) < '>' ? -1 : 1;
}

std::string escape_string_literal(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

bool Literal::valid_lang_tag(std::string_view tag) noexcept {
  if (tag.empty()) return false;
  std::size_t i = 0;
  std::size_t run = 0;
  bool first_part = true;
  while (i < tag.size()) {
    const char c = tag[i];
    if (c == '-') {
      if (run == 0) return false;
      run = 0;
      first_part = false;
    } else {
      const bool alpha = std::isalpha(static_cast<unsigned char>(c)) != 0;
      const bool digit = std::isdigit(static_cast<unsigned char>(c)) != 0;
      if (!(alpha || (!first_part && digit))) return false;
      if (++run > 8) return false;
    }
    ++i;
  }
  return run > 0;
}

Literal::Literal(std::string lexical, Iri datatype, std::optional<std::string> lang)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)), lang_(std::move(lang)) {
  rendered_ = "\"" + escape_string_literal(lexical_) + "\"";
  if (lang_) {
    rendered_ += "@" + *lang_;
  } else if (!(datatype_ == vocab::xsd_string())) {
    rendered_ += "^^" + datatype_.ntriples();
  }
}

Literal::Literal(std::string lexical, Iri datatype)
    : Literal(std::move(lexical), std::move(datatype), std::nullopt) {
  if (datatype_ == vocab::rdf_lang_string())
    throw std::invalid_argument("rdf:langString literal requires a language tag");
}

Literal Literal::string(std::string lexical) {
  return Literal(std::move(lexical), vocab::xsd_string(), std::nullopt);
}

Literal Literal::lang_string(std::string lexical, std::string lang) {
  if (!valid_lang_tag(lang)) throw std::invalid_argument("malformed language tag: '" + lang + "'");
  return Literal(std::move(lexical), vocab::rdf_lang_string(), std::move(lang));
}

int Term::compare(const Term& other) const noexcept {
  // '"' < '<' in the rendered forms, so literals precede IRIs.
  if (is_literal() != other.is_literal()) return is_literal() ? -1 : 1;
  if (is_iri()) return iri().compare(other.iri());
  return literal().compare(other.literal());
}

bool Term::operator==(const Term& other) const noexcept {
  if (node_.index() != other.node_.index()) return false;
  return is_iri() ? iri() == other.iri() : literal() == other.literal();
}

}  // namespace cbiont
