#include "swanson/oplang.hpp"

#include <charconv>

namespace swanson::oplang {

namespace {

constexpr std::size_t kMaxDepth = 200;
constexpr unsigned kMaxExponent = 1000;

ExprPtr node(NodeKind k, std::size_t offset, std::vector<ExprPtr> children = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->offset = offset;
  e->children = std::move(children);
  return e;
}

double literal_value(const Token& t) {
  if (t.kind == TokenKind::Rational) {
    const auto slash = t.lexeme.find('/');
    return std::stod(t.lexeme.substr(0, slash)) / std::stod(t.lexeme.substr(slash + 1));
  }
  return std::stod(t.lexeme);
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::size_t end) : t_(tokens), end_(end) {}

  ExprPtr run() {
    if (t_.empty()) throw SyntaxError("empty expression", end_);
    ExprPtr e = expr();
    if (pos_ < t_.size()) {
      const Token& tok = t_[pos_];
      if (tok.kind == TokenKind::RBracket || tok.kind == TokenKind::RParen)
        throw SyntaxError("unbalanced " + std::string(tok.kind == TokenKind::RBracket ? "bracket" : "parenthesis"),
                          tok.offset);
      throw SyntaxError("unexpected " + to_string(tok.kind), tok.offset);
    }
    return e;
  }

 private:
  const Token* peek() const { return pos_ < t_.size() ? &t_[pos_] : nullptr; }
  bool at(TokenKind k) const { return pos_ < t_.size() && t_[pos_].kind == k; }
  std::size_t here() const { return pos_ < t_.size() ? t_[pos_].offset : end_; }

  struct Depth {
    explicit Depth(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) throw SyntaxError("expression nested too deeply", p_.here());
    }
    ~Depth() { --p_.depth_; }
    Parser& p_;
  };

  ExprPtr expr() {
    Depth guard(*this);
    ExprPtr lhs = term();
    while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
      const Token& op = t_[pos_++];
      ExprPtr rhs = term();
      lhs = node(op.kind == TokenKind::Plus ? NodeKind::Add : NodeKind::Sub, op.offset, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (at(TokenKind::Star)) {
      const Token& op = t_[pos_++];
      ExprPtr rhs = factor();
      lhs = node(NodeKind::Mul, op.offset, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr factor() {
    Depth guard(*this);
    if (at(TokenKind::Minus)) {
      const Token& op = t_[pos_++];
      return node(NodeKind::Negate, op.offset, {factor()});
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr base = atom();
    while (true) {
      if (at(TokenKind::Dag)) {
        base = node(NodeKind::Dagger, t_[pos_++].offset, {base});
      } else if (at(TokenKind::Caret)) {
        const Token& op = t_[pos_++];
        const Token* e = peek();
        if (!e) throw SyntaxError("missing exponent", end_);
        if (e->kind != TokenKind::Number || e->lexeme.find_first_not_of("0123456789") != std::string::npos)
          throw SyntaxError("non-integer exponent", e->offset);
        unsigned k = 0;
        const auto [ptr, ec] = std::from_chars(e->lexeme.data(), e->lexeme.data() + e->lexeme.size(), k);
        if (ec != std::errc() || k > kMaxExponent) throw SyntaxError("exponent out of range", e->offset);
        ++pos_;
        auto p = std::make_shared<Expr>();
        p->kind = NodeKind::Pow;
        p->offset = op.offset;
        p->exponent = k;
        p->children = {base};
        base = p;
      } else {
        return base;
      }
    }
  }

  ExprPtr atom() {
    const Token* tok = peek();
    if (!tok) throw SyntaxError("unexpected end of input", end_);
    switch (tok->kind) {
      case TokenKind::Number:
      case TokenKind::Rational: {
        ++pos_;
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::Scalar;
        e->text = tok->lexeme;
        e->offset = tok->offset;
        try {
          e->value = literal_value(*tok);
        } catch (const std::out_of_range&) {
          throw SyntaxError("number out of range", tok->offset);
        }
        return e;
      }
      case TokenKind::Ident: {
        ++pos_;
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::Symbol;
        e->text = tok->lexeme;
        e->offset = tok->offset;
        return e;
      }
      case TokenKind::LParen: {
        ++pos_;
        ExprPtr inner = expr();
        close(TokenKind::RParen, "parenthesis");
        return inner;
      }
      case TokenKind::LBracket: {
        const std::size_t open = tok->offset;
        ++pos_;
        ExprPtr a = expr();
        if (!at(TokenKind::Comma)) {
          if (!peek()) throw SyntaxError("unbalanced bracket", end_);
          throw SyntaxError("expected ',' in commutator", here());
        }
        ++pos_;
        ExprPtr b = expr();
        close(TokenKind::RBracket, "bracket");
        return node(NodeKind::Commutator, open, {a, b});
      }
      default:
        throw SyntaxError("unexpected " + to_string(tok->kind), tok->offset);
    }
  }

  void close(TokenKind k, const char* what) {
    if (at(k)) {
      ++pos_;
      return;
    }
    const Token* tok = peek();
    if (!tok || tok->kind == TokenKind::RParen || tok->kind == TokenKind::RBracket)
      throw SyntaxError(std::string("unbalanced ") + what, here());
    throw SyntaxError("unexpected " + to_string(tok->kind), tok->offset);
  }

  const std::vector<Token>& t_;
  std::size_t end_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

std::string atom_text(const Expr& e) {
  // printed children of postfix operators must read back as atoms
  return print(e);
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  if (a.kind == NodeKind::Scalar && (a.text != b.text || a.value != b.value)) return false;
  if (a.kind == NodeKind::Symbol && a.text != b.text) return false;
  if (a.kind == NodeKind::Pow && a.exponent != b.exponent) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!equal(*a.children[i], *b.children[i])) return false;
  return true;
}

ExprPtr parse(const std::vector<Token>& tokens, std::size_t source_length) {
  return Parser(tokens, source_length).run();
}

ExprPtr parse(std::string_view input) { return parse(tokenize(input), input.size()); }

std::string print(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Scalar:
    case NodeKind::Symbol:
      return e.text;
    case NodeKind::Add:
      return "(" + print(*e.children[0]) + " + " + print(*e.children[1]) + ")";
    case NodeKind::Sub:
      return "(" + print(*e.children[0]) + " - " + print(*e.children[1]) + ")";
    case NodeKind::Mul:
      return "(" + print(*e.children[0]) + " * " + print(*e.children[1]) + ")";
    case NodeKind::Negate:
      return "(-" + print(*e.children[0]) + ")";
    case NodeKind::Pow:
      return atom_text(*e.children[0]) + "^" + std::to_string(e.exponent);
    case NodeKind::Dagger:
      return atom_text(*e.children[0]) + "'";
    case NodeKind::Commutator:
      return "[" + print(*e.children[0]) + ", " + print(*e.children[1]) + "]";
  }
  return {};
}

}  // namespace swanson::oplang
