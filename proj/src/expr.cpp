#include "mplab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "mplab/errors.hpp"

namespace mplab {

enum class Op { Const, Coord, Norm, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Sqrt, Abs };

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;  // Const payload, or Pow exponent when integral
  int index = 0;       // Coord payload
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0, int idx = 0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = v;
  n->index = idx;
  return n;
}

double eval_node(const Expr::Node& n, const Eigen::VectorXd& x) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Coord:
      if (n.index >= x.size()) fail(Errc::DimensionMismatch, "expression uses x" + std::to_string(n.index + 1) + " but point has dim " + std::to_string(x.size()));
      return x[n.index];
    case Op::Norm: return x.norm();
    case Op::Add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Op::Sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Op::Mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case Op::Div: return eval_node(*n.a, x) / eval_node(*n.b, x);
    case Op::Neg: return -eval_node(*n.a, x);
    case Op::Pow: {
      double base = eval_node(*n.a, x);
      double e = n.value;
      if (e == std::floor(e) && std::fabs(e) <= 16) {
        long k = static_cast<long>(e);
        bool inv = k < 0;
        if (inv) k = -k;
        double acc = 1.0;
        for (long i = 0; i < k; ++i) acc *= base;
        return inv ? 1.0 / acc : acc;
      }
      return std::pow(base, e);
    }
    case Op::Sin: return std::sin(eval_node(*n.a, x));
    case Op::Cos: return std::cos(eval_node(*n.a, x));
    case Op::Exp: return std::exp(eval_node(*n.a, x));
    case Op::Sqrt: return std::sqrt(eval_node(*n.a, x));
    case Op::Abs: return std::fabs(eval_node(*n.a, x));
  }
  return 0.0;
}

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& src) : s(src) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void error(const std::string& what) {
    fail(Errc::ConfigError, "expression parse error at offset " + std::to_string(pos) + " of '" + s + "': " + what);
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (eat('+')) lhs = make(Op::Add, lhs, parse_term());
      else if (eat('-')) lhs = make(Op::Sub, lhs, parse_term());
      else return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (eat('*')) lhs = make(Op::Mul, lhs, parse_unary());
      else if (eat('/')) lhs = make(Op::Div, lhs, parse_unary());
      else return lhs;
    }
  }

  // unary minus binds looser than '^', so -x^2 means -(x^2)
  NodePtr parse_unary() {
    if (eat('-')) return make(Op::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (eat('^')) {
      NodePtr e = parse_unary();
      if (e->op == Op::Neg && e->a->op == Op::Const)
        return make(Op::Pow, base, nullptr, -e->a->value);
      if (e->op != Op::Const) error("exponent must be a numeric literal");
      return make(Op::Pow, base, nullptr, e->value);
    }
    return base;
  }

  NodePtr parse_primary() {
    skip();
    if (pos >= s.size()) error("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr e = parse_expr();
      if (!eat(')')) error("expected ')'");
      return e;
    }
    if (c == '|') {
      // only |x| is supported
      if (s.compare(pos, 3, "|x|") == 0) {
        pos += 3;
        return make(Op::Norm);
      }
      error("expected |x|");
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      double v = std::strtod(s.c_str() + pos, &end);
      pos = static_cast<size_t>(end - s.c_str());
      return make(Op::Const, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
      std::string id = s.substr(start, pos - start);
      if (id == "pi") return make(Op::Const, nullptr, nullptr, M_PI);
      if (id == "e") return make(Op::Const, nullptr, nullptr, M_E);
      if (id.size() >= 2 && id[0] == 'x' && std::isdigit(static_cast<unsigned char>(id[1]))) {
        int k = std::atoi(id.c_str() + 1);
        if (k < 1) error("coordinate indices are 1-based");
        return make(Op::Coord, nullptr, nullptr, 0.0, k - 1);
      }
      Op fop;
      if (id == "sin") fop = Op::Sin;
      else if (id == "cos") fop = Op::Cos;
      else if (id == "exp") fop = Op::Exp;
      else if (id == "sqrt") fop = Op::Sqrt;
      else if (id == "abs") fop = Op::Abs;
      else error("unknown identifier '" + id + "'");
      if (!eat('(')) error("expected '(' after " + id);
      NodePtr arg = parse_expr();
      if (!eat(')')) error("expected ')'");
      return make(fop, arg);
    }
    error(std::string("unexpected character '") + c + "'");
  }
};

void print_node(const Expr::Node& n, std::ostringstream& out) {
  auto paren = [&](const Expr::Node& c) {
    out << '(';
    print_node(c, out);
    out << ')';
  };
  switch (n.op) {
    case Op::Const: {
      std::ostringstream v;
      v.precision(17);
      v << n.value;
      out << v.str();
      break;
    }
    case Op::Coord: out << 'x' << (n.index + 1); break;
    case Op::Norm: out << "|x|"; break;
    case Op::Add: paren(*n.a); out << '+'; paren(*n.b); break;
    case Op::Sub: paren(*n.a); out << '-'; paren(*n.b); break;
    case Op::Mul: paren(*n.a); out << '*'; paren(*n.b); break;
    case Op::Div: paren(*n.a); out << '/'; paren(*n.b); break;
    case Op::Neg: out << '-'; paren(*n.a); break;
    case Op::Pow: paren(*n.a); out << '^'; {
      std::ostringstream v;
      v.precision(17);
      v << n.value;
      out << v.str();
    } break;
    case Op::Sin: out << "sin("; print_node(*n.a, out); out << ')'; break;
    case Op::Cos: out << "cos("; print_node(*n.a, out); out << ')'; break;
    case Op::Exp: out << "exp("; print_node(*n.a, out); out << ')'; break;
    case Op::Sqrt: out << "sqrt("; print_node(*n.a, out); out << ')'; break;
    case Op::Abs: out << "abs("; print_node(*n.a, out); out << ')'; break;
  }
}

NodePtr scale_node(const Expr::Node& n, double factor) {
  auto rec = [&](const NodePtr& c) { return c ? scale_node(*c, factor) : nullptr; };
  switch (n.op) {
    case Op::Const: return make(Op::Const, nullptr, nullptr, n.value);
    case Op::Coord:
      return make(Op::Mul, make(Op::Const, nullptr, nullptr, factor),
                  make(Op::Coord, nullptr, nullptr, 0.0, n.index));
    case Op::Norm:
      // |factor*x| = factor*|x| for factor > 0
      return make(Op::Mul, make(Op::Const, nullptr, nullptr, factor), make(Op::Norm));
    default: {
      auto m = std::make_shared<Expr::Node>();
      m->op = n.op;
      m->value = n.value;
      m->index = n.index;
      m->a = rec(n.a);
      m->b = rec(n.b);
      return m;
    }
  }
}

bool const_node(const Expr::Node& n, double* out) {
  Eigen::VectorXd dummy(0);
  switch (n.op) {
    case Op::Coord:
    case Op::Norm: return false;
    case Op::Const:
      if (out) *out = n.value;
      return true;
    default: {
      if (n.a && !const_node(*n.a, nullptr)) return false;
      if (n.b && !const_node(*n.b, nullptr)) return false;
      if (out) *out = eval_node(n, dummy);
      return true;
    }
  }
}

int max_coord_node(const Expr::Node& n) {
  int m = n.op == Op::Coord ? n.index : -1;
  if (n.a) m = std::max(m, max_coord_node(*n.a));
  if (n.b) m = std::max(m, max_coord_node(*n.b));
  return m;
}

}  // namespace

Expr::Expr() : node_(make(Op::Const)) {}

Expr Expr::constant(double v) { return Expr(make(Op::Const, nullptr, nullptr, v)); }
Expr Expr::coord(int index0) { return Expr(make(Op::Coord, nullptr, nullptr, 0.0, index0)); }
Expr Expr::norm() { return Expr(make(Op::Norm)); }

Expr Expr::parse(const std::string& src) {
  Parser p(src);
  NodePtr root = p.parse_expr();
  p.skip();
  if (p.pos != src.size()) p.error("trailing input");
  return Expr(root);
}

double Expr::operator()(const Eigen::VectorXd& x) const { return eval_node(*node_, x); }

std::string Expr::str() const {
  std::ostringstream out;
  print_node(*node_, out);
  return out.str();
}

Expr Expr::with_scaled_argument(double factor) const {
  if (!(factor > 0.0)) fail(Errc::BadScale, "argument scaling factor must be positive");
  return Expr(scale_node(*node_, factor));
}

bool Expr::constant_value(double* out) const { return const_node(*node_, out); }

int Expr::max_coord() const { return max_coord_node(*node_); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(make(Op::Add, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make(Op::Sub, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make(Op::Mul, a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(make(Op::Neg, a.node_)); }

namespace {
const char* errc_names[] = {
    "NonOrthonormalFrame", "BadWidth", "NonCylinder", "DimensionMismatch",
    "NonFiniteCoefficient", "UnknownPreset", "InsufficientSamples",
    "NegativeInput", "NonPositiveK", "NoAdmissibleWidth", "CosineDegenerate",
    "BadParams", "UnknownAnalyticFunction", "UnknownCounterexample", "BadScale",
    "NonMonotoneStencil", "NoConvergence", "HypothesisNotMet", "ConfigError",
};
}

const char* errc_name(Errc c) { return errc_names[static_cast<int>(c)]; }

}  // namespace mplab
