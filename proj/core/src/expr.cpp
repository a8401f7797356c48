#include "spraywork/expr.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace spraywork {

namespace {

const char* kFunctions[] = {"sin", "cos", "exp", "log", "sqrt"};

bool is_function(const std::string& s) {
  for (const char* f : kFunctions)
    if (s == f) return true;
  return false;
}

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen,
              End } kind;
  std::string text;
  long long num = 0, den = 1;
  bool is_integer = false;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) {
      t.kind = Token::End;
      return t;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return lex_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return lex_ident();
    advance();
    switch (c) {
      case '+': t.kind = Token::Plus; break;
      case '-': t.kind = Token::Minus; break;
      case '*': t.kind = Token::Star; break;
      case '/': t.kind = Token::Slash; break;
      case '^': t.kind = Token::Caret; break;
      case '(': t.kind = Token::LParen; break;
      case ')': t.kind = Token::RParen; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'",
                          t.line, t.column, "operator, number, or variable");
    }
    t.text = c;
    return t;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
  }

  Token lex_number() {
    Token t;
    t.kind = Token::Number;
    t.line = line_;
    t.column = col_;
    std::string digits;
    int frac_digits = -1;  // -1: no decimal point seen
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (frac_digits >= 0) ++frac_digits;
        advance();
      } else if (c == '.') {
        if (frac_digits >= 0)
          throw SyntaxError("second decimal point in number", line_, col_);
        frac_digits = 0;
        advance();
      } else {
        break;
      }
    }
    if (digits.empty())
      throw SyntaxError("digits required in number", t.line, t.column,
                        "digit");
    t.text = src_.substr(0, 0);  // unused
    t.num = std::stoll(digits);
    t.den = 1;
    for (int i = 0; i < std::max(frac_digits, 0); ++i) t.den *= 10;
    t.is_integer = frac_digits <= 0;
    long long g = std::gcd(t.num, t.den);
    if (g > 1) {
      t.num /= g;
      t.den /= g;
    }
    return t;
  }

  Token lex_ident() {
    Token t;
    t.kind = Token::Ident;
    t.line = line_;
    t.column = col_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])))) {
      t.text += src_[pos_];
      advance();
    }
    return t;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(const std::string& src, int n) : lex_(src), n_(n) { shift(); }

  ExprPtr parse_all() {
    ExprPtr e = parse_sum();
    if (cur_.kind != Token::End)
      throw SyntaxError("trailing input", cur_.line, cur_.column,
                        "end of expression");
    return e;
  }

 private:
  void shift() { cur_ = lex_.next(); }

  static ExprPtr make(Expr::Kind k, std::vector<ExprPtr> ch = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->children = std::move(ch);
    return e;
  }

  // sum := product (('+'|'-') product)*
  ExprPtr parse_sum() {
    ExprPtr left = parse_product();
    while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
      bool add = cur_.kind == Token::Plus;
      shift();
      ExprPtr right = parse_product();
      left = make(add ? Expr::Kind::Add : Expr::Kind::Sub, {left, right});
    }
    return left;
  }

  // product := unary (('*'|'/') unary)*
  ExprPtr parse_product() {
    ExprPtr left = parse_unary();
    while (cur_.kind == Token::Star || cur_.kind == Token::Slash) {
      bool mul = cur_.kind == Token::Star;
      shift();
      ExprPtr right = parse_unary();
      left = make(mul ? Expr::Kind::Mul : Expr::Kind::Div, {left, right});
    }
    return left;
  }

  // unary := '-' unary | power
  ExprPtr parse_unary() {
    if (cur_.kind == Token::Minus) {
      shift();
      return make(Expr::Kind::Neg, {parse_unary()});
    }
    return parse_power();
  }

  // power := atom ('^' exponent)?   exponent := ['-'] integer-literal
  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (cur_.kind != Token::Caret) return base;
    shift();
    bool negated = false;
    if (cur_.kind == Token::Minus) {
      negated = true;
      shift();
    }
    if (cur_.kind != Token::Number)
      throw SyntaxError("exponent must be an integer literal", cur_.line,
                        cur_.column, "integer");
    if (!cur_.is_integer)
      throw NonIntegerExponent("exponent must be an integer, got " +
                               std::to_string(cur_.num) + "/" +
                               std::to_string(cur_.den));
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->exponent = negated ? -cur_.num : cur_.num;
    e->children = {base};
    shift();
    return e;
  }

  ExprPtr parse_atom() {
    if (cur_.kind == Token::Number) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Constant;
      e->num = cur_.num;
      e->den = cur_.den;
      shift();
      return e;
    }
    if (cur_.kind == Token::Ident) return parse_ident();
    if (cur_.kind == Token::LParen) {
      shift();
      ExprPtr inner = parse_sum();
      expect_rparen();
      return inner;
    }
    throw SyntaxError("unexpected token", cur_.line, cur_.column,
                      "number, variable, function, or '('");
  }

  ExprPtr parse_ident() {
    Token t = cur_;
    shift();
    if (is_function(t.text)) {
      if (cur_.kind != Token::LParen)
        throw SyntaxError("function '" + t.text + "' requires an argument",
                          cur_.line, cur_.column, "'('");
      shift();
      ExprPtr arg = parse_sum();
      expect_rparen();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Func;
      e->func = t.text;
      e->children = {arg};
      return e;
    }
    // variable: x<k> or y<k>
    if ((t.text[0] == 'x' || t.text[0] == 'y') && t.text.size() > 1) {
      bool digits = true;
      for (std::size_t i = 1; i < t.text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t.text[i])))
          digits = false;
      if (digits) {
        int idx = std::stoi(t.text.substr(1));
        if (idx < 1 || idx > n_)
          throw UnknownVariable("variable " + t.text +
                                " outside dimension n=" + std::to_string(n_));
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Var;
        e->axis = t.text[0] == 'x' ? 0 : 1;
        e->index = idx;
        return e;
      }
    }
    throw SyntaxError("unknown identifier '" + t.text + "'", t.line, t.column,
                      "x<k>, y<k>, or function name");
  }

  void expect_rparen() {
    if (cur_.kind != Token::RParen)
      throw SyntaxError("unbalanced parenthesis", cur_.line, cur_.column,
                        "')'");
    shift();
  }

  Lexer lex_;
  int n_;
  Token cur_;
};

// Printing precedence levels; higher binds tighter.
int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

void print_rec(const ExprPtr& e, std::ostringstream& out);

void print_child(const ExprPtr& child, int min_prec, std::ostringstream& out) {
  bool paren = precedence(child) < min_prec;
  if (paren) out << '(';
  print_rec(child, out);
  if (paren) out << ')';
}

void print_constant(long long num, long long den, std::ostringstream& out) {
  if (den == 1) {
    out << num;
    return;
  }
  // Literals only arise from decimal source, so den = 2^a * 5^b; emit the
  // shortest exact decimal.
  long long scale = 1;
  int digits = 0;
  while (scale % den != 0) {
    scale *= 10;
    ++digits;
  }
  long long scaled = num * (scale / den);
  std::string s = std::to_string(scaled);
  while (static_cast<int>(s.size()) <= digits) s.insert(0, "0");
  s.insert(s.size() - digits, ".");
  out << s;
}

void print_rec(const ExprPtr& e, std::ostringstream& out) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      print_constant(e->num, e->den, out);
      break;
    case Expr::Kind::Var:
      out << (e->axis == 0 ? 'x' : 'y') << e->index;
      break;
    case Expr::Kind::Add:
      print_child(e->children[0], 1, out);
      out << " + ";
      print_child(e->children[1], 2, out);
      break;
    case Expr::Kind::Sub:
      print_child(e->children[0], 1, out);
      out << " - ";
      print_child(e->children[1], 2, out);
      break;
    case Expr::Kind::Mul:
      print_child(e->children[0], 2, out);
      out << "*";
      print_child(e->children[1], 3, out);
      break;
    case Expr::Kind::Div:
      print_child(e->children[0], 2, out);
      out << "/";
      print_child(e->children[1], 3, out);
      break;
    case Expr::Kind::Neg:
      out << "-";
      print_child(e->children[0], 3, out);
      break;
    case Expr::Kind::Pow:
      print_child(e->children[0], 5, out);
      out << "^";
      if (e->exponent < 0) out << "-";
      out << std::llabs(e->exponent);
      break;
    case Expr::Kind::Func:
      out << e->func << "(";
      print_rec(e->children[0], out);
      out << ")";
      break;
  }
}

}  // namespace

ExprPtr parse(const std::string& source, int n) {
  return Parser(source, n).parse_all();
}

std::string print(const ExprPtr& e) {
  std::ostringstream out;
  print_rec(e, out);
  return out.str();
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Constant:
      if (a->num != b->num || a->den != b->den) return false;
      break;
    case Expr::Kind::Var:
      if (a->axis != b->axis || a->index != b->index) return false;
      break;
    case Expr::Kind::Pow:
      if (a->exponent != b->exponent) return false;
      break;
    case Expr::Kind::Func:
      if (a->func != b->func) return false;
      break;
    default: break;
  }
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!equal(a->children[i], b->children[i])) return false;
  return true;
}

Jet eval_jet(const ExprPtr& e, const PointTM& u, int order) {
  const int nv = 2 * u.n();
  switch (e->kind) {
    case Expr::Kind::Constant:
      return Jet::constant(nv, order, e->constant_value());
    case Expr::Kind::Var: {
      int v = (e->axis == 0 ? 0 : u.n()) + e->index - 1;
      double val = e->axis == 0 ? u.x[e->index - 1] : u.y[e->index - 1];
      return Jet::seed(v, val, nv, order);
    }
    case Expr::Kind::Add:
      return eval_jet(e->children[0], u, order) +
             eval_jet(e->children[1], u, order);
    case Expr::Kind::Sub:
      return eval_jet(e->children[0], u, order) -
             eval_jet(e->children[1], u, order);
    case Expr::Kind::Mul:
      return eval_jet(e->children[0], u, order) *
             eval_jet(e->children[1], u, order);
    case Expr::Kind::Div: {
      Jet num = eval_jet(e->children[0], u, order);
      Jet den = eval_jet(e->children[1], u, order);
      if (den.value() == 0.0)
        throw DomainError("division by an expression vanishing at the sample");
      return num / den;
    }
    case Expr::Kind::Neg:
      return -eval_jet(e->children[0], u, order);
    case Expr::Kind::Pow: {
      Jet base = eval_jet(e->children[0], u, order);
      if (e->exponent < 0 && base.value() == 0.0)
        throw DomainError("negative power of an expression vanishing at the "
                          "sample");
      return base.pow_int(e->exponent);
    }
    case Expr::Kind::Func:
      return compose_fn(e->func, eval_jet(e->children[0], u, order));
  }
  throw Error("corrupt expression node");
}

double eval(const ExprPtr& e, const PointTM& u) {
  return eval_jet(e, u, 0).value();
}

HomogeneityReport check_homogeneity(const ExprPtr& e, int n, int degree,
                                    const std::vector<PointTM>& samples,
                                    double tol) {
  HomogeneityReport report;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    Jet j = eval_jet(e, samples[s], 1);
    double euler = 0.0;
    for (int i = 0; i < n; ++i)
      euler += samples[s].y[i] * j.derivative_var(n + i).value();
    double residual = std::abs(euler - degree * j.value());
    if (residual > tol * (1.0 + std::abs(j.value()))) {
      report.pass = false;
      report.failures.push_back({static_cast<int>(s), residual});
    }
  }
  return report;
}

}  // namespace spraywork
