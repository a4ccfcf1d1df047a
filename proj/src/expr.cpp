// expr.cpp — recursive-descent parser and evaluator for density expressions.
#include "scat/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace scat {

struct Expr::Node {
  enum Kind { kNumber, kVar, kUnaryNeg, kBinary, kCall } kind = kNumber;
  double value = 0.0;           // kNumber
  int var = 0;                  // kVar: 0..2
  char op = 0;                  // kBinary: + - * / ^
  std::string func;             // kCall
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ValidationError("expression error at position " + std::to_string(pos_) + ": " + why +
                          " in '" + s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (eat('+')) lhs = binary('+', lhs, term());
      else if (eat('-')) lhs = binary('-', lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = powexpr();
    while (true) {
      if (eat('*')) lhs = binary('*', lhs, powexpr());
      else if (eat('/')) lhs = binary('/', lhs, powexpr());
      else return lhs;
    }
  }

  NodePtr powexpr() {
    NodePtr base = unary();
    if (eat('^')) return binary('^', base, powexpr());
    return base;
  }

  NodePtr unary() {
    if (eat('-')) {
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::kUnaryNeg;
      n->args = {unary()};
      return n;
    }
    (void)eat('+');
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos_ += static_cast<size_t>(end - begin);
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::kNumber;
    n->value = v;
    return n;
  }

  NodePtr ident() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    int var = -1;
    if (name == "x" || name == "x1") var = 0;
    else if (name == "y" || name == "x2") var = 1;
    else if (name == "z" || name == "x3") var = 2;
    if (var >= 0) {
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::kVar;
      n->var = var;
      return n;
    }
    // Function call.
    static const char* funcs1[] = {"abs", "sqrt", "sin", "cos", "exp", "log"};
    static const char* funcs2[] = {"pow", "min", "max"};
    bool is1 = false, is2 = false;
    for (auto* f : funcs1) is1 |= (name == f);
    for (auto* f : funcs2) is2 |= (name == f);
    if (!is1 && !is2) fail("unknown identifier '" + name + "'");
    if (!eat('(')) fail("expected '(' after function '" + name + "'");
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::kCall;
    n->func = name;
    n->args.push_back(expr());
    while (eat(',')) n->args.push_back(expr());
    if (!eat(')')) fail("missing ')' after arguments of '" + name + "'");
    const size_t want = is1 ? 1 : 2;
    if (n->args.size() != want)
      fail("function '" + name + "' takes " + std::to_string(want) + " argument(s)");
    return n;
  }

  NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::kBinary;
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return n;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, const Vec3& p) {
  switch (n.kind) {
    case Expr::Node::kNumber: return n.value;
    case Expr::Node::kVar: return p[n.var];
    case Expr::Node::kUnaryNeg: return -eval_node(*n.args[0], p);
    case Expr::Node::kBinary: {
      const double a = eval_node(*n.args[0], p);
      const double b = eval_node(*n.args[1], p);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
      }
      return 0.0;
    }
    case Expr::Node::kCall: {
      const double a = eval_node(*n.args[0], p);
      if (n.func == "abs") return std::fabs(a);
      if (n.func == "sqrt") return std::sqrt(a);
      if (n.func == "sin") return std::sin(a);
      if (n.func == "cos") return std::cos(a);
      if (n.func == "exp") return std::exp(a);
      if (n.func == "log") return std::log(a);
      const double b = eval_node(*n.args[1], p);
      if (n.func == "pow") return std::pow(a, b);
      if (n.func == "min") return std::fmin(a, b);
      return std::fmax(a, b);
    }
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

double Expr::eval(const Vec3& p) const {
  if (!root_) throw ValidationError("evaluating an empty expression");
  return eval_node(*root_, p);
}

}  // namespace scat
