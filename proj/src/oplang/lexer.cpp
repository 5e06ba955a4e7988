#include "swanson/oplang.hpp"

#include <cctype>

namespace swanson::oplang {

namespace {
constexpr std::string_view kMinusSign = "\xE2\x88\x92";  // U+2212
constexpr std::string_view kDagger = "\xE2\x80\xA0";     // U+2020

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
}  // namespace

std::string to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Ident:
      return "identifier";
    case TokenKind::Number:
      return "number";
    case TokenKind::Rational:
      return "rational";
    case TokenKind::Plus:
      return "'+'";
    case TokenKind::Minus:
      return "'-'";
    case TokenKind::Star:
      return "'*'";
    case TokenKind::Caret:
      return "'^'";
    case TokenKind::LBracket:
      return "'['";
    case TokenKind::RBracket:
      return "']'";
    case TokenKind::LParen:
      return "'('";
    case TokenKind::RParen:
      return "')'";
    case TokenKind::Comma:
      return "','";
    case TokenKind::Dag:
      return "dagger";
  }
  return "token";
}

SyntaxError::SyntaxError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), reason_(what), offset_(offset) {}

std::vector<Token> tokenize(std::string_view in) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = in.size();
  while (i < n) {
    const char c = in[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_letter(c)) {
      while (i < n && (is_letter(in[i]) || is_digit(in[i]) || in[i] == '_')) ++i;
      out.push_back({TokenKind::Ident, std::string(in.substr(start, i - start)), start});
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(in[i + 1]))) {
      bool integral = true;
      while (i < n && is_digit(in[i])) ++i;
      if (i < n && in[i] == '.') {
        integral = false;
        ++i;
        if (i >= n || !is_digit(in[i])) throw SyntaxError("malformed number", start);
        while (i < n && is_digit(in[i])) ++i;
      }
      if (i < n && (in[i] == 'e' || in[i] == 'E')) {
        integral = false;
        ++i;
        if (i < n && (in[i] == '+' || in[i] == '-')) ++i;
        if (i >= n || !is_digit(in[i])) throw SyntaxError("malformed number", start);
        while (i < n && is_digit(in[i])) ++i;
      }
      if (i < n && (is_letter(in[i]) || in[i] == '_' || in[i] == '.')) throw SyntaxError("malformed number", start);
      if (i < n && in[i] == '/') {
        if (!integral || i + 1 >= n || !is_digit(in[i + 1])) throw SyntaxError("unknown character '/'", i);
        ++i;
        const std::size_t den_start = i;
        while (i < n && is_digit(in[i])) ++i;
        if (i < n && (is_letter(in[i]) || in[i] == '_' || in[i] == '.' || in[i] == '/'))
          throw SyntaxError("malformed rational", start);
        if (in.substr(den_start, i - den_start).find_first_not_of('0') == std::string_view::npos)
          throw SyntaxError("zero denominator", den_start);
        out.push_back({TokenKind::Rational, std::string(in.substr(start, i - start)), start});
        continue;
      }
      out.push_back({TokenKind::Number, std::string(in.substr(start, i - start)), start});
      continue;
    }
    TokenKind k;
    switch (c) {
      case '+':
        k = TokenKind::Plus;
        break;
      case '-':
        k = TokenKind::Minus;
        break;
      case '*':
        k = TokenKind::Star;
        break;
      case '^':
        k = TokenKind::Caret;
        break;
      case '[':
        k = TokenKind::LBracket;
        break;
      case ']':
        k = TokenKind::RBracket;
        break;
      case '(':
        k = TokenKind::LParen;
        break;
      case ')':
        k = TokenKind::RParen;
        break;
      case ',':
        k = TokenKind::Comma;
        break;
      case '\'':
        k = TokenKind::Dag;
        break;
      default:
        if (in.substr(i, kMinusSign.size()) == kMinusSign) {
          out.push_back({TokenKind::Minus, "-", start});
          i += kMinusSign.size();
          continue;
        }
        if (in.substr(i, kDagger.size()) == kDagger) {
          out.push_back({TokenKind::Dag, "'", start});
          i += kDagger.size();
          continue;
        }
        if (!std::isprint(static_cast<unsigned char>(c))) throw SyntaxError("unknown character", start);
        throw SyntaxError(std::string("unknown character '") + c + "'", start);
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  return out;
}

}  // namespace swanson::oplang
