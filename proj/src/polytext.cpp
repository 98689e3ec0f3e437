#include <cctype>
#include <set>

#include "aca/poly.hpp"

namespace aca {

namespace {

enum class Tok { End, Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen };

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  std::size_t line;
  Tok tok = Tok::End;
  std::string text;       // payload for Int/Ident
  std::size_t tok_col = 1;

  Lexer(const std::string& s, std::size_t at_line) : src(s), line(at_line) { advance(); }

  [[noreturn]] void fail(const std::string& msg, std::size_t col) { throw ParseError(msg, line, col); }

  void advance() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    tok_col = pos + 1;
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    switch (c) {
      case '+': tok = Tok::Plus; ++pos; return;
      case '-': tok = Tok::Minus; ++pos; return;
      case '*': tok = Tok::Star; ++pos; return;
      case '^': tok = Tok::Caret; ++pos; return;
      case '/': tok = Tok::Slash; ++pos; return;
      case '(': tok = Tok::LParen; ++pos; return;
      case ')': tok = Tok::RParen; ++pos; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      text.clear();
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) text += src[pos++];
      tok = Tok::Int;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      text.clear();
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        text += src[pos++];
      // bracket index groups belong to the identifier: x[0,-1][2]
      while (pos < src.size() && src[pos] == '[') {
        text += '[';
        ++pos;
        bool want_int = true;
        while (true) {
          while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
          if (pos >= src.size()) fail("unterminated '[' in variable name", tok_col);
          char d = src[pos];
          if (d == ']') {
            if (want_int) fail("empty index in variable name", pos + 1);
            text += ']';
            ++pos;
            break;
          }
          if (d == ',') {
            if (want_int) fail("misplaced ',' in variable name", pos + 1);
            text += ',';
            ++pos;
            want_int = true;
            continue;
          }
          if (d == '-' || std::isdigit(static_cast<unsigned char>(d))) {
            if (!want_int) fail("missing ',' in variable name", pos + 1);
            if (d == '-') {
              text += d;
              ++pos;
            }
            if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
              fail("expected digit in variable index", pos + 1);
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
              text += src[pos++];
            want_int = false;
            continue;
          }
          fail(std::string("unexpected character '") + d + "' in variable name", pos + 1);
        }
      }
      tok = Tok::Ident;
      return;
    }
    fail(std::string("unexpected character '") + c + "'", tok_col);
  }
};

struct Parser {
  Lexer lex;
  FieldRef field;
  RosterRef roster;

  Parser(const std::string& s, FieldRef f, RosterRef r, std::size_t at_line)
      : lex(s, at_line), field(std::move(f)), roster(std::move(r)) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    if (lex.tok != Tok::End) lex.fail("trailing input", lex.tok_col);
    return p;
  }

  MultiPoly expr() {
    bool neg = false;
    if (lex.tok == Tok::Minus) {
      neg = true;
      lex.advance();
    }
    MultiPoly acc = term();
    if (neg) acc = -acc;
    while (lex.tok == Tok::Plus || lex.tok == Tok::Minus) {
      bool sub = lex.tok == Tok::Minus;
      lex.advance();
      MultiPoly t = term();
      acc = sub ? acc - t : acc + t;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (lex.tok == Tok::Star) {
      lex.advance();
      acc = acc * factor();
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (lex.tok == Tok::Caret) {
      lex.advance();
      if (lex.tok != Tok::Int) lex.fail("malformed exponent", lex.tok_col);
      long long e = std::stoll(lex.text);
      if (e > 1'000'000) lex.fail("exponent too large", lex.tok_col);
      lex.advance();
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  MultiPoly atom() {
    if (lex.tok == Tok::Int) {
      mpq_class v(lex.text);
      lex.advance();
      if (lex.tok == Tok::Slash) {
        lex.advance();
        if (lex.tok != Tok::Int) lex.fail("malformed rational literal", lex.tok_col);
        mpq_class den(lex.text);
        if (den == 0) lex.fail("zero denominator", lex.tok_col);
        lex.advance();
        v /= den;
      }
      return MultiPoly::constant(field, roster, FieldElement::from_mpq(field, v));
    }
    if (lex.tok == Tok::Ident) {
      std::string name = lex.text;
      std::size_t col = lex.tok_col;
      lex.advance();
      if (name == "w" && field->kind == FieldKind::Extension)
        return MultiPoly::constant(field, roster, FieldElement::generator(field));
      int idx = roster->index_of(name);
      if (idx < 0) lex.fail("unknown variable '" + name + "'", col);
      return MultiPoly::variable(field, roster, static_cast<std::size_t>(idx));
    }
    if (lex.tok == Tok::LParen) {
      lex.advance();
      MultiPoly inner = expr();
      if (lex.tok != Tok::RParen) lex.fail("expected ')'", lex.tok_col);
      lex.advance();
      return inner;
    }
    if (lex.tok == Tok::Minus) {
      lex.advance();
      return -atom();
    }
    lex.fail("expected a value", lex.tok_col);
  }
};

std::vector<std::string> collect_idents(const std::string& text, const FieldRef& field,
                                        std::size_t at_line) {
  std::set<std::string> names;
  Lexer lex(text, at_line);
  while (lex.tok != Tok::End) {
    if (lex.tok == Tok::Ident && !(lex.text == "w" && field->kind == FieldKind::Extension))
      names.insert(lex.text);
    lex.advance();
  }
  return {names.begin(), names.end()};
}

}  // namespace

MultiPoly parse_poly(const std::string& text, const FieldRef& field, const RosterRef& roster,
                     std::size_t at_line) {
  if (field->kind == FieldKind::Extension && roster->index_of("w") >= 0)
    throw DomainError("variable name 'w' is reserved over extension fields");
  Parser p(text, field, roster, at_line);
  return p.parse();
}

MultiPoly parse_poly_auto(const std::string& text, const FieldRef& field, std::size_t at_line) {
  RosterRef roster = VarRoster::make(collect_idents(text, field, at_line));
  return parse_poly(text, field, roster, at_line);
}

FieldElement parse_scalar(const std::string& text, const FieldRef& field, std::size_t at_line) {
  MultiPoly p = parse_poly(text, field, VarRoster::make({}), at_line);
  return p.constant_value();
}

}  // namespace aca
