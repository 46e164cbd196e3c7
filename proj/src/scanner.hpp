#pragma once

// Internal token scanner shared by the Turtle, N-Triples and query parsers.
// Not installed; include from src/ only.

#include <cctype>
#include <string>
#include <string_view>

#include "cbiont/turtle.hpp"

namespace cbiont::lex {

struct ParseAbort {
  ParseError err;
};

[[noreturn]] inline void fail(int line, int column, std::string message, ParseErrorKind kind) {
  throw ParseAbort{ParseError{line, column, std::move(message), kind}};
}

inline bool iri_char_ok(unsigned char c) {
  if (c < 0x20 || c == 0x7F) return false;
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
      return false;
    default:
      return true;
  }
}

inline bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

inline void append_utf8(std::string& out, unsigned cp) {
  if (cp <= 0x7F) {
    out += static_cast<char>(cp);
  } else if (cp <= 0x7FF) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

enum class Tok {
  iriref,       // text = IRI value (validated, unescaped)
  pname,        // text = prefix label, aux = local part
  blank,        // text = label
  string_lit,   // text = cooked string
  at_ident,     // text = identifier after '@' (directive name or language tag)
  variable,     // text = name without the '?' sigil
  word,         // bare identifier (SELECT, WHERE, FILTER, IN, ...)
  hathat,
  equals,
  integer_lit,
  boolean_lit,
  kw_a,
  dot,
  semicolon,
  comma,
  lparen,
  rparen,
  lbracket,
  rbracket,
  lbrace,
  rbrace,
  end,
};

struct Token {
  Tok type = Tok::end;
  std::string text;
  std::string aux;
  int line = 1;
  int column = 1;
};

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {
    if (text_.size() >= 3 && text_.substr(0, 3) == "\xEF\xBB\xBF")
      fail(1, 1, "UTF-8 byte order mark is not allowed", ParseErrorKind::lexical);
  }

  Token next() {
    skip_ws_and_comments();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (eof()) {
      tok.type = Tok::end;
      return tok;
    }
    const char c = peek();
    switch (c) {
      case '<': scan_iriref(tok); return tok;
      case '"': scan_string(tok); return tok;
      case '@': scan_at_ident(tok); return tok;
      case '?': scan_variable(tok); return tok;
      case '^':
        get();
        if (peek() != '^') fail(tok.line, tok.column, "expected '^^'", ParseErrorKind::lexical);
        get();
        tok.type = Tok::hathat;
        return tok;
      case '=': get(); tok.type = Tok::equals; return tok;
      case '.': get(); tok.type = Tok::dot; return tok;
      case ';': get(); tok.type = Tok::semicolon; return tok;
      case ',': get(); tok.type = Tok::comma; return tok;
      case '(': get(); tok.type = Tok::lparen; return tok;
      case ')': get(); tok.type = Tok::rparen; return tok;
      case '[': get(); tok.type = Tok::lbracket; return tok;
      case ']': get(); tok.type = Tok::rbracket; return tok;
      case '{': get(); tok.type = Tok::lbrace; return tok;
      case '}': get(); tok.type = Tok::rbrace; return tok;
      default: break;
    }
    if (c == '_' && peek(1) == ':') {
      scan_blank(tok);
      return tok;
    }
    if (c == ':' || std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      scan_word_or_pname(tok);
      return tok;
    }
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      scan_number(tok);
      return tok;
    }
    fail(tok.line, tok.column, std::string("unexpected character '") + c + "'",
         ParseErrorKind::lexical);
  }

 private:
  bool eof(std::size_t ahead = 0) const { return pos_ + ahead >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return eof(ahead) ? '\0' : text_[pos_ + ahead]; }
  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_ws_and_comments() {
    while (!eof()) {
      const char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else {
        break;
      }
    }
  }

  // Decodes \uXXXX; the backslash has already been consumed. el/ec point at
  // the backslash.
  unsigned decode_u_escape(int el, int ec) {
    if (peek() != 'u')
      fail(el, ec, std::string("unsupported escape '\\") + peek() + "'", ParseErrorKind::lexical);
    get();
    unsigned cp = 0;
    for (int i = 0; i < 4; ++i) {
      const char h = peek();
      unsigned value = 0;
      if (h >= '0' && h <= '9') value = static_cast<unsigned>(h - '0');
      else if (h >= 'a' && h <= 'f') value = static_cast<unsigned>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') value = static_cast<unsigned>(h - 'A' + 10);
      else fail(el, ec, "\\u escape requires four hex digits", ParseErrorKind::lexical);
      get();
      cp = (cp << 4) | value;
    }
    if (cp >= 0xD800 && cp <= 0xDFFF)
      fail(el, ec, "surrogate code point in \\u escape", ParseErrorKind::lexical);
    return cp;
  }

  void scan_iriref(Token& tok) {
    tok.type = Tok::iriref;
    get();  // '<'
    std::string value;
    while (true) {
      if (eof() || peek() == '\n')
        fail(tok.line, tok.column, "unterminated IRI", ParseErrorKind::lexical);
      const int cl = line_, cc = column_;
      const char c = get();
      if (c == '>') break;
      if (c == '\\') {
        const unsigned cp = decode_u_escape(cl, cc);
        if (cp < 0x80 && !iri_char_ok(static_cast<unsigned char>(cp)))
          fail(cl, cc, "escape decodes to a character not allowed in an IRI",
               ParseErrorKind::lexical);
        append_utf8(value, cp);
        continue;
      }
      if (!iri_char_ok(static_cast<unsigned char>(c)))
        fail(cl, cc, "character not allowed in an IRI", ParseErrorKind::lexical);
      value += c;
    }
    if (value.find(':') == std::string::npos)
      fail(tok.line, tok.column, "relative IRI (no scheme separator ':'): '<" + value + ">'",
           ParseErrorKind::semantic);
    tok.text = std::move(value);
  }

  void scan_string(Token& tok) {
    tok.type = Tok::string_lit;
    if (peek(1) == '"' && peek(2) == '"')
      fail(tok.line, tok.column, "long string literals (\"\"\"...\"\"\") are not supported",
           ParseErrorKind::syntactic);
    get();  // opening quote
    std::string value;
    while (true) {
      if (eof() || peek() == '\n' || peek() == '\r')
        fail(tok.line, tok.column, "unterminated string literal", ParseErrorKind::lexical);
      const int cl = line_, cc = column_;
      const char c = get();
      if (c == '"') break;
      if (c == '\\') {
        const char e = peek();
        switch (e) {
          case '"': value += '"'; get(); break;
          case '\\': value += '\\'; get(); break;
          case 'n': value += '\n'; get(); break;
          case 't': value += '\t'; get(); break;
          case 'r': value += '\r'; get(); break;
          case 'u': append_utf8(value, decode_u_escape(cl, cc)); break;
          default:
            fail(cl, cc, std::string("unsupported escape '\\") + e + "'", ParseErrorKind::lexical);
        }
        continue;
      }
      value += c;
    }
    tok.text = std::move(value);
  }

  void scan_at_ident(Token& tok) {
    tok.type = Tok::at_ident;
    get();  // '@'
    std::string ident;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-') ident += get();
    if (ident.empty())
      fail(tok.line, tok.column, "expected identifier after '@'", ParseErrorKind::lexical);
    tok.text = std::move(ident);
  }

  void scan_variable(Token& tok) {
    tok.type = Tok::variable;
    get();  // '?'
    std::string name;
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      name += get();
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name += get();
    }
    if (name.empty())
      fail(tok.line, tok.column, "expected a variable name after '?'", ParseErrorKind::lexical);
    tok.text = std::move(name);
  }

  void scan_blank(Token& tok) {
    tok.type = Tok::blank;
    get();  // '_'
    get();  // ':'
    std::string label;
    while (word_char(peek())) label += get();
    if (label.empty())
      fail(tok.line, tok.column, "blank node label must not be empty", ParseErrorKind::lexical);
    tok.text = std::move(label);
  }

  void scan_local(std::string& local) {
    while (true) {
      if (word_char(peek())) {
        local += get();
      } else if (peek() == '.' && word_char(peek(1))) {
        // Dots may appear inside local names but never swallow the statement
        // terminator.
        local += get();
      } else {
        break;
      }
    }
  }

  void scan_word_or_pname(Token& tok) {
    std::string word;
    if (peek() != ':') {
      while (word_char(peek())) word += get();
    }
    if (peek() == ':') {
      get();
      tok.type = Tok::pname;
      tok.text = std::move(word);  // prefix label, possibly empty
      scan_local(tok.aux);
      return;
    }
    if (word == "a") {
      tok.type = Tok::kw_a;
    } else if (word == "true" || word == "false") {
      tok.type = Tok::boolean_lit;
      tok.text = std::move(word);
    } else {
      tok.type = Tok::word;
      tok.text = std::move(word);
    }
  }

  void scan_number(Token& tok) {
    std::string digits;
    if (peek() == '+' || peek() == '-') digits += get();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail(tok.line, tok.column, "expected digits after sign", ParseErrorKind::lexical);
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))
      fail(line_, column_, "decimal literals are not supported (use a quoted literal)",
           ParseErrorKind::lexical);
    if (peek() == 'e' || peek() == 'E')
      fail(line_, column_, "double literals are not supported (use a quoted literal)",
           ParseErrorKind::lexical);
    tok.type = Tok::integer_lit;
    tok.text = std::move(digits);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace cbiont::lex
