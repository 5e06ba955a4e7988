#pragma once

#include "swanson/operator_matrix.hpp"
#include "swanson/residual.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace swanson {
struct OperatorSet;
}

namespace swanson::oplang {

enum class TokenKind { Ident, Number, Rational, Plus, Minus, Star, Caret, LBracket, RBracket, LParen, RParen, Comma, Dag };
std::string to_string(TokenKind k);

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t offset;  // byte offset into the source
};

/// Lexical or grammatical error at a byte offset of the source.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }
  /// The diagnostic without the offset suffix.
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
  std::size_t offset_;
};

/// `'` (or U+2020) is the postfix dagger; U+2212 is read as "-". A "/" is only
/// legal between two integer literals, forming a rational literal p/q.
std::vector<Token> tokenize(std::string_view input);

enum class NodeKind { Scalar, Symbol, Add, Sub, Mul, Pow, Commutator, Dagger, Negate };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind;
  std::string text;     // Scalar: literal as written; Symbol: name
  double value = 0.0;   // Scalar value
  unsigned exponent = 0;  // Pow
  std::vector<ExprPtr> children;
  std::size_t offset = 0;
};

/// Structural equality, ignoring source offsets.
bool equal(const Expr& a, const Expr& b);

/// Grammar:
///   expr    := term (("+" | "-") term)*
///   term    := factor ("*" factor)*
///   factor  := "-" factor | postfix
///   postfix := atom ("'" | "^" integer)*
///   atom    := number | rational | ident | "(" expr ")" | "[" expr "," expr "]"
ExprPtr parse(const std::vector<Token>& tokens, std::size_t source_length);
ExprPtr parse(std::string_view input);

/// Fully parenthesized text that parses back to an equal tree.
std::string print(const Expr& e);

using Value = std::variant<complex, OperatorMatrix>;
using Bindings = std::map<std::string, Value, std::less<>>;

class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Scalars broadcast as multiples of the identity when mixed with operators.
Value evaluate_value(const Expr& e, const Bindings& b);
/// Throws EvalError when the expression is scalar-only.
OperatorMatrix evaluate(const Expr& e, const Bindings& b);

/// Names bound by prelude_bindings, in a fixed order.
std::vector<std::string> prelude_names();

/// Operators and scalars of one operator set: hplus, hminus, htilde, Hplus, Hminus,
/// Hplus_expr, Hminus_expr, A, L, K, theta, theta_dag (eta-adjoint), X, D, I,
/// LdagL, LLdag, KdagK, KKdag and J, omega, lambda, Delta, Em, E, twoOverJ,
/// JomegaHalf, JE, one, omegaHalf.
Bindings prelude_bindings(const OperatorSet& os);

struct CheckResult {
  std::string label;        // from an optional "name :=" prefix
  std::string canonical;    // printed form of the parsed expression
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::size_t terms = 0;
  std::string frame;        // "h" or "H"
};

/// Judges `expression = 0`: top-level sums, negations and commutators are split
/// into terms, and the relative interior residual over the probe set is compared
/// with tol. Expressions naming Hplus, Hminus, theta or theta_dag are probed in
/// the non-Hermitian frame.
CheckResult check_zero(std::string_view expression, const Bindings& b, const ProbeSet& probes_h,
                       const ProbeSet& probes_H, double tol);
CheckResult check_zero(std::string_view expression, const OperatorSet& os, double tol);

}  // namespace swanson::oplang
