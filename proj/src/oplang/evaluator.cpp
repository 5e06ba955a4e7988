#include "swanson/oplang.hpp"
#include "swanson/susy.hpp"

#include <cmath>

namespace swanson::oplang {

namespace {

constexpr unsigned kMaxOperatorPower = 64;

bool is_scalar(const Value& v) { return std::holds_alternative<complex>(v); }

const Grid* grid_of(const Value& v) {
  return is_scalar(v) ? nullptr : &std::get<OperatorMatrix>(v).grid();
}

Value add(const Value& a, const Value& b, double sign, std::size_t offset) {
  if (is_scalar(a) && is_scalar(b)) return std::get<complex>(a) + sign * std::get<complex>(b);
  if (is_scalar(a)) return (sign * std::get<OperatorMatrix>(b)).shifted(std::get<complex>(a));
  if (is_scalar(b)) return std::get<OperatorMatrix>(a).shifted(sign * std::get<complex>(b));
  const auto& x = std::get<OperatorMatrix>(a);
  const auto& y = std::get<OperatorMatrix>(b);
  if (!(x.grid() == y.grid())) throw EvalError("grid mismatch", offset);
  return sign > 0 ? x + y : x - y;
}

Value multiply(const Value& a, const Value& b, std::size_t offset) {
  if (is_scalar(a) && is_scalar(b)) return std::get<complex>(a) * std::get<complex>(b);
  if (is_scalar(a)) return std::get<complex>(a) * std::get<OperatorMatrix>(b);
  if (is_scalar(b)) return std::get<complex>(b) * std::get<OperatorMatrix>(a);
  const auto& x = std::get<OperatorMatrix>(a);
  const auto& y = std::get<OperatorMatrix>(b);
  if (!(x.grid() == y.grid())) throw EvalError("grid mismatch", offset);
  return x * y;
}

bool mentions(const Expr& e, std::initializer_list<std::string_view> names) {
  if (e.kind == NodeKind::Symbol)
    for (auto n : names)
      if (e.text == n) return true;
  for (const auto& c : e.children)
    if (mentions(*c, names)) return true;
  return false;
}

// Signed additive terms of the identity; top-level commutators split into their two products.
void collect_terms(const ExprPtr& e, double sign, std::vector<std::pair<double, ExprPtr>>& out) {
  switch (e->kind) {
    case NodeKind::Add:
      collect_terms(e->children[0], sign, out);
      collect_terms(e->children[1], sign, out);
      return;
    case NodeKind::Sub:
      collect_terms(e->children[0], sign, out);
      collect_terms(e->children[1], -sign, out);
      return;
    case NodeKind::Negate:
      collect_terms(e->children[0], -sign, out);
      return;
    case NodeKind::Commutator: {
      auto ab = std::make_shared<Expr>();
      ab->kind = NodeKind::Mul;
      ab->offset = e->offset;
      ab->children = {e->children[0], e->children[1]};
      auto ba = std::make_shared<Expr>(*ab);
      ba->children = {e->children[1], e->children[0]};
      out.emplace_back(sign, ab);
      out.emplace_back(-sign, ba);
      return;
    }
    default:
      out.emplace_back(sign, e);
  }
}

std::pair<std::string, std::size_t> split_label(std::string_view text) {
  const auto pos = text.find(":=");
  if (pos == std::string_view::npos) return {{}, 0};
  std::string_view head = text.substr(0, pos);
  const auto b = head.find_first_not_of(" \t");
  const auto e = head.find_last_not_of(" \t");
  if (b == std::string_view::npos) return {{}, 0};
  head = head.substr(b, e - b + 1);
  if (!std::isalpha(static_cast<unsigned char>(head[0]))) return {{}, 0};
  for (char c : head)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return {{}, 0};
  return {std::string(head), pos + 2};
}

}  // namespace

EvalError::EvalError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

Value evaluate_value(const Expr& e, const Bindings& b) {
  switch (e.kind) {
    case NodeKind::Scalar:
      return complex(e.value);
    case NodeKind::Symbol: {
      const auto it = b.find(e.text);
      if (it == b.end()) throw EvalError("unbound symbol '" + e.text + "'", e.offset);
      return it->second;
    }
    case NodeKind::Add:
      return add(evaluate_value(*e.children[0], b), evaluate_value(*e.children[1], b), 1.0, e.offset);
    case NodeKind::Sub:
      return add(evaluate_value(*e.children[0], b), evaluate_value(*e.children[1], b), -1.0, e.offset);
    case NodeKind::Mul:
      return multiply(evaluate_value(*e.children[0], b), evaluate_value(*e.children[1], b), e.offset);
    case NodeKind::Negate: {
      const Value v = evaluate_value(*e.children[0], b);
      if (is_scalar(v)) return -std::get<complex>(v);
      return -std::get<OperatorMatrix>(v);
    }
    case NodeKind::Pow: {
      const Value v = evaluate_value(*e.children[0], b);
      if (is_scalar(v)) return std::pow(std::get<complex>(v), static_cast<double>(e.exponent));
      if (e.exponent > kMaxOperatorPower)
        throw EvalError("operator power above " + std::to_string(kMaxOperatorPower), e.offset);
      return power(std::get<OperatorMatrix>(v), e.exponent);
    }
    case NodeKind::Dagger: {
      const Value v = evaluate_value(*e.children[0], b);
      if (is_scalar(v)) return std::conj(std::get<complex>(v));
      return dagger(std::get<OperatorMatrix>(v));
    }
    case NodeKind::Commutator: {
      const Value x = evaluate_value(*e.children[0], b);
      const Value y = evaluate_value(*e.children[1], b);
      const Grid* g = grid_of(x) ? grid_of(x) : grid_of(y);
      if (!g) return complex(0.0);
      if (is_scalar(x) || is_scalar(y)) return OperatorMatrix::zero(*g);
      return add(multiply(x, y, e.offset), multiply(y, x, e.offset), -1.0, e.offset);
    }
  }
  throw EvalError("unknown node", e.offset);
}

OperatorMatrix evaluate(const Expr& e, const Bindings& b) {
  Value v = evaluate_value(e, b);
  if (is_scalar(v)) throw EvalError("expression is a scalar where an operator is expected", e.offset);
  return std::get<OperatorMatrix>(std::move(v));
}

std::vector<std::string> prelude_names() {
  return {"hplus", "hminus", "htilde", "Hplus", "Hminus", "Hplus_expr", "Hminus_expr", "A", "L", "K",
          "theta", "theta_dag", "X", "D", "I", "LdagL", "LLdag", "KdagK", "KKdag", "J", "omega", "lambda",
          "Delta", "Em", "E", "twoOverJ", "JomegaHalf", "JE", "one", "omegaHalf"};
}

Bindings prelude_bindings(const OperatorSet& os) {
  const DerivedParams& d = os.derived;
  Bindings b;
  b.emplace("hplus", os.h_plus);
  b.emplace("hminus", os.h_minus);
  b.emplace("htilde", os.h_tilde);
  b.emplace("Hplus", os.H_plus);
  b.emplace("Hminus", os.H_minus);
  b.emplace("Hplus_expr", os.H_plus_expr);
  b.emplace("Hminus_expr", os.H_minus_expr);
  b.emplace("A", os.A);
  b.emplace("L", os.L);
  b.emplace("K", os.K);
  b.emplace("theta", os.theta);
  b.emplace("theta_dag", os.theta_dag);
  b.emplace("X", os.X);
  b.emplace("D", os.D);
  b.emplace("I", OperatorMatrix::identity(os.grid));
  b.emplace("LdagL", os.L_dag * os.L);
  b.emplace("LLdag", os.L * os.L_dag);
  b.emplace("KdagK", os.K_dag * os.K);
  b.emplace("KKdag", os.K * os.K_dag);
  b.emplace("J", complex(d.J));
  b.emplace("omega", complex(os.params.omega));
  b.emplace("lambda", complex(d.lambda));
  b.emplace("Delta", complex(d.delta));
  b.emplace("Em", complex(os.spec.E_tilde()));
  b.emplace("E", complex(d.E));
  b.emplace("twoOverJ", complex(2.0 / d.J));
  b.emplace("JomegaHalf", complex(0.5 * d.J * os.params.omega));
  b.emplace("JE", complex(d.J * d.E));
  b.emplace("one", complex(1.0));
  b.emplace("omegaHalf", complex(0.5 * os.params.omega));
  return b;
}

CheckResult check_zero(std::string_view expression, const Bindings& b, const ProbeSet& probes_h,
                       const ProbeSet& probes_H, double tol) {
  CheckResult r;
  const auto [label, start] = split_label(expression);
  r.label = label;
  const std::string_view body = expression.substr(start);
  ExprPtr ast;
  try {
    ast = parse(body);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.reason(), e.offset() + start);
  }
  r.canonical = print(*ast);
  const bool weighted = mentions(*ast, {"Hplus", "Hminus", "Hplus_expr", "Hminus_expr", "theta", "theta_dag"});
  const ProbeSet& probes = weighted ? probes_H : probes_h;
  r.frame = weighted ? "H" : "h";

  std::vector<std::pair<double, ExprPtr>> terms;
  collect_terms(ast, 1.0, terms);
  std::vector<OperatorMatrix> mats;
  for (const auto& [sign, t] : terms) {
    try {
      const Value v = evaluate_value(*t, b);
      if (is_scalar(v))
        mats.push_back(sign * std::get<complex>(v) * OperatorMatrix::identity(probes.grid));
      else
        mats.push_back(sign * std::get<OperatorMatrix>(v));
    } catch (const EvalError& e) {
      throw EvalError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at offset")),
                      e.offset() + start);
    }
  }
  r.terms = mats.size();
  r.residual = identity_residual(std::span<const OperatorMatrix>(mats), probes);
  r.threshold = tol;
  r.pass = std::isfinite(r.residual) && r.residual <= tol;
  return r;
}

CheckResult check_zero(std::string_view expression, const OperatorSet& os, double tol) {
  return check_zero(expression, prelude_bindings(os), os.probes_h, os.probes_H, tol);
}

}  // namespace swanson::oplang
