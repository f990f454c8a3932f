#include "weylcheck/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

namespace weyl {

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r.v += b.v;
  for (int i = 0; i < a.dim; ++i) r.g[i] += b.g[i];
  int nh = a.dim * (a.dim + 1) / 2;
  for (int k = 0; k < nh; ++k) r.h[k] += b.h[k];
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r.v -= b.v;
  for (int i = 0; i < a.dim; ++i) r.g[i] -= b.g[i];
  int nh = a.dim * (a.dim + 1) / 2;
  for (int k = 0; k < nh; ++k) r.h[k] -= b.h[k];
  return r;
}

Jet2 operator-(const Jet2& a) {
  Jet2 r = a;
  r.v = -r.v;
  for (int i = 0; i < a.dim; ++i) r.g[i] = -r.g[i];
  int nh = a.dim * (a.dim + 1) / 2;
  for (int k = 0; k < nh; ++k) r.h[k] = -r.h[k];
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.dim = a.dim;
  r.v = a.v * b.v;
  for (int i = 0; i < a.dim; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int j = 0; j < a.dim; ++j)
    for (int i = 0; i <= j; ++i)
      r.hess(i, j) = a.hess(i, j) * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] +
                     a.v * b.hess(i, j);
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.v == 0.0) throw EvalError("division by zero");
  // a/b = a * b^-1 with b^-1 expanded directly.
  Jet2 inv;
  inv.dim = b.dim;
  double iv = 1.0 / b.v;
  inv.v = iv;
  double iv2 = iv * iv, iv3 = iv2 * iv;
  for (int i = 0; i < b.dim; ++i) inv.g[i] = -b.g[i] * iv2;
  for (int j = 0; j < b.dim; ++j)
    for (int i = 0; i <= j; ++i)
      inv.hess(i, j) = 2.0 * b.g[i] * b.g[j] * iv3 - b.hess(i, j) * iv2;
  return a * inv;
}

Jet2 jet_apply(const Jet2& a, double f, double fp, double fpp) {
  Jet2 r;
  r.dim = a.dim;
  r.v = f;
  for (int i = 0; i < a.dim; ++i) r.g[i] = fp * a.g[i];
  for (int j = 0; j < a.dim; ++j)
    for (int i = 0; i <= j; ++i)
      r.hess(i, j) = fpp * a.g[i] * a.g[j] + fp * a.hess(i, j);
  return r;
}

Jet2 jet_powi(const Jet2& a, long long e) {
  if (e == 0) return Jet2::constant(1.0, a.dim);
  bool neg = e < 0;
  unsigned long long n = neg ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Jet2 acc = a;
  --n;
  Jet2 base = a;
  while (n > 0) {
    if (n & 1ull) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  if (neg) return Jet2::constant(1.0, a.dim) / acc;
  return acc;
}

Jet2 jet_compose(const Jet2& outer, const std::vector<Jet2>& inner) {
  int m = inner.empty() ? 0 : inner[0].dim;
  Jet2 r;
  r.dim = m;
  r.v = outer.v;
  int n = outer.dim;
  for (int i = 0; i < m; ++i) {
    double s = 0;
    for (int g = 0; g < n; ++g) s += outer.g[g] * inner[g].g[i];
    r.g[i] = s;
  }
  for (int j = 0; j < m; ++j)
    for (int i = 0; i <= j; ++i) {
      double s = 0;
      for (int g = 0; g < n; ++g) s += outer.g[g] * inner[g].hess(i, j);
      for (int g = 0; g < n; ++g)
        for (int d = 0; d < n; ++d)
          s += outer.hess(g, d) * inner[g].g[i] * inner[d].g[j];
      r.hess(i, j) = s;
    }
  return r;
}

namespace {

struct FuncDef {
  const char* name;
  double (*f)(double);
  double (*fp)(double);
  double (*fpp)(double);
  // Domain guard; returns a message when x is outside the domain.
  const char* (*guard)(double);
};

double d_sin(double x) { return std::sin(x); }
double d_cos(double x) { return std::cos(x); }
double d_msin(double x) { return -std::sin(x); }
double d_mcos(double x) { return -std::cos(x); }
double d_tan(double x) { return std::tan(x); }
double d_tan_p(double x) { double c = std::cos(x); return 1.0 / (c * c); }
double d_tan_pp(double x) { double c = std::cos(x); return 2.0 * std::tan(x) / (c * c); }
double d_sinh(double x) { return std::sinh(x); }
double d_cosh(double x) { return std::cosh(x); }
double d_tanh(double x) { return std::tanh(x); }
double d_tanh_p(double x) { double t = std::tanh(x); return 1.0 - t * t; }
double d_tanh_pp(double x) { double t = std::tanh(x); return -2.0 * t * (1.0 - t * t); }
double d_exp(double x) { return std::exp(x); }
double d_log(double x) { return std::log(x); }
double d_log_p(double x) { return 1.0 / x; }
double d_log_pp(double x) { return -1.0 / (x * x); }
double d_sqrt(double x) { return std::sqrt(x); }
double d_sqrt_p(double x) { return 0.5 / std::sqrt(x); }
double d_sqrt_pp(double x) { return -0.25 / (x * std::sqrt(x)); }
double d_atan(double x) { return std::atan(x); }
double d_atan_p(double x) { return 1.0 / (1.0 + x * x); }
double d_atan_pp(double x) { double d = 1.0 + x * x; return -2.0 * x / (d * d); }
double d_neg(double x) { return -x; }
double d_m1(double) { return -1.0; }
double d_zero(double) { return 0.0; }

const char* g_none(double) { return nullptr; }
const char* g_pos(double x) { return x > 0.0 ? nullptr : "requires a positive argument"; }
const char* g_nonneg(double x) { return x >= 0.0 ? nullptr : "requires a non-negative argument"; }
const char* g_tan(double x) {
  return std::fabs(std::cos(x)) > 1e-300 ? nullptr : "pole of tan";
}

const FuncDef kFuncs[] = {
    {"sin", d_sin, d_cos, d_msin, g_none},
    {"cos", d_cos, d_msin, d_mcos, g_none},
    {"tan", d_tan, d_tan_p, d_tan_pp, g_tan},
    {"sinh", d_sinh, d_cosh, d_sinh, g_none},
    {"cosh", d_cosh, d_sinh, d_cosh, g_none},
    {"tanh", d_tanh, d_tanh_p, d_tanh_pp, g_none},
    {"exp", d_exp, d_exp, d_exp, g_none},
    {"log", d_log, d_log_p, d_log_pp, g_pos},
    {"sqrt", d_sqrt, d_sqrt_p, d_sqrt_pp, g_nonneg},
    {"atan", d_atan, d_atan_p, d_atan_pp, g_none},
    {"neg", d_neg, d_m1, d_zero, g_none},
};
constexpr int kNumFuncs = sizeof(kFuncs) / sizeof(kFuncs[0]);

int func_index(const std::string& name) {
  for (int i = 0; i < kNumFuncs; ++i)
    if (name == kFuncs[i].name) return i;
  return -1;
}


std::string point_string(const Vec& x, int dim) {
  std::string s = "(";
  char buf[40];
  for (int i = 0; i < dim; ++i) {
    std::snprintf(buf, sizeof buf, "%g", x[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s + ")";
}

}  // namespace

Expr e_num(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->number = v;
  return n;
}

Expr e_var(int i) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Var;
  n->var = i;
  return n;
}

namespace {
Expr binary(NodeKind k, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
}  // namespace

Expr e_add(Expr a, Expr b) { return binary(NodeKind::Add, std::move(a), std::move(b)); }
Expr e_sub(Expr a, Expr b) { return binary(NodeKind::Sub, std::move(a), std::move(b)); }
Expr e_mul(Expr a, Expr b) { return binary(NodeKind::Mul, std::move(a), std::move(b)); }
Expr e_div(Expr a, Expr b) { return binary(NodeKind::Div, std::move(a), std::move(b)); }

Expr e_neg(Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Neg;
  n->a = std::move(a);
  return n;
}

Expr e_pow(Expr a, double exponent) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->a = std::move(a);
  double r = std::round(exponent);
  if (r == exponent && std::fabs(exponent) < 1e15) {
    n->pow_is_int = true;
    n->ipow = static_cast<long long>(r);
  } else {
    n->pow_is_int = false;
    n->dpow = exponent;
  }
  return n;
}

Expr e_call(const std::string& fn, Expr a) {
  int idx = func_index(fn);
  if (idx < 0) throw EvalError("unknown function: " + fn);
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->func = idx;
  n->a = std::move(a);
  return n;
}

// ---------------------------------------------------------------------------
// Parser.
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' atom)?
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' atom
// The exponent atom must fold to a constant.

namespace {

struct Parser {
  const std::string& s;
  const std::vector<std::string>& coords;
  size_t pos = 0;

  explicit Parser(const std::string& text, const std::vector<std::string>& c)
      : s(text), coords(c) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg, size_t at) { throw ParseError(msg, at); }

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos != s.size()) fail("unexpected trailing input", pos);
    return e;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e = e_add(e, term());
      else if (accept('-'))
        e = e_sub(e, term());
      else
        return e;
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (accept('*'))
        e = e_mul(e, factor());
      else if (accept('/'))
        e = e_div(e, factor());
      else
        return e;
    }
  }

  Expr factor() {
    Expr base = atom();
    if (accept('^')) {
      size_t at = pos;
      Expr exp = atom();
      double c;
      if (!const_fold(exp, c)) fail("exponent must be a constant", at);
      return e_pow(base, c);
    }
    return base;
  }

  static bool const_fold(const Expr& e, double& out) {
    switch (e->kind) {
      case NodeKind::Number:
        out = e->number;
        return true;
      case NodeKind::Neg: {
        double a;
        if (!const_fold(e->a, a)) return false;
        out = -a;
        return true;
      }
      default:
        return false;
    }
  }

  Expr atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input", pos);
    char c = s[pos];
    if (c == '-') {
      ++pos;
      return e_neg(atom());
    }
    if (c == '(') {
      ++pos;
      Expr e = expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    fail(std::string("unexpected character '") + c + "'", pos);
  }

  Expr number() {
    size_t start = pos;
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("invalid number", start);
    pos += static_cast<size_t>(end - begin);
    return e_num(v);
  }

  Expr ident() {
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string name = s.substr(start, pos - start);
    if (accept('(')) {
      int fi = func_index(name);
      if (fi < 0) fail("unknown function '" + name + "'", start);
      Expr arg = expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'", pos);
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Call;
      n->func = fi;
      n->a = std::move(arg);
      return n;
    }
    if (name == "pi") return e_num(M_PI);
    if (name == "e") return e_num(M_E);
    for (size_t i = 0; i < coords.size(); ++i)
      if (coords[i] == name) return e_var(static_cast<int>(i));
    fail("unknown identifier '" + name + "'", start);
  }
};

}  // namespace

Expr parse_expr(const std::string& text, const std::vector<std::string>& coords) {
  Parser p(text, coords);
  return p.parse();
}

// ---------------------------------------------------------------------------
// Printing. Parenthesization follows the parse precedence so the output
// re-parses to the same tree.

namespace {

int precedence(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Neg:
      return 3;
    case NodeKind::Pow:
      return 4;
    default:
      return 5;
  }
}

struct Printer {
  const std::vector<std::string>& coords;
  std::string out;

  static std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  void child(const Expr& c, int prec, bool right) {
    bool need = precedence(c) < prec || (right && precedence(c) == prec);
    if (need) out += '(';
    rec(c);
    if (need) out += ')';
  }

  void rec(const Expr& e) {
    switch (e->kind) {
      case NodeKind::Number: {
        if (e->number < 0) {
          out += '(' + fmt_num(e->number) + ')';
        } else {
          out += fmt_num(e->number);
        }
        break;
      }
      case NodeKind::Var:
        out += coords.at(static_cast<size_t>(e->var));
        break;
      case NodeKind::Add:
        child(e->a, 1, false);
        out += '+';
        child(e->b, 1, true);
        break;
      case NodeKind::Sub:
        child(e->a, 1, false);
        out += '-';
        child(e->b, 1, true);
        break;
      case NodeKind::Mul:
        child(e->a, 2, false);
        out += '*';
        child(e->b, 2, true);
        break;
      case NodeKind::Div:
        child(e->a, 2, false);
        out += '/';
        child(e->b, 2, true);
        break;
      case NodeKind::Neg:
        out += '-';
        child(e->a, 5, false);
        break;
      case NodeKind::Pow:
        child(e->a, 5, false);
        out += '^';
        if (e->pow_is_int) {
          long long p = e->ipow;
          if (p < 0)
            out += "(-" + std::to_string(-p) + ")";
          else
            out += std::to_string(p);
        } else {
          double p = e->dpow;
          if (p < 0)
            out += '(' + fmt_num(p) + ')';
          else
            out += fmt_num(p);
        }
        break;
      case NodeKind::Call:
        out += kFuncs[e->func].name;
        out += '(';
        rec(e->a);
        out += ')';
        break;
    }
  }
};

}  // namespace

std::string print_expr(const Expr& e, const std::vector<std::string>& coords) {
  Printer p{coords, {}};
  p.rec(e);
  return p.out;
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Number:
      return a->number == b->number;
    case NodeKind::Var:
      return a->var == b->var;
    case NodeKind::Neg:
      return expr_equal(a->a, b->a);
    case NodeKind::Call:
      return a->func == b->func && expr_equal(a->a, b->a);
    case NodeKind::Pow:
      if (a->pow_is_int != b->pow_is_int) return false;
      if (a->pow_is_int && a->ipow != b->ipow) return false;
      if (!a->pow_is_int && a->dpow != b->dpow) return false;
      return expr_equal(a->a, b->a);
    default:
      return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

template <class T, class MakeConst, class MakeVar, class Apply, class Powi, class PowD>
T eval_rec(const Expr& e, const Vec& x, int dim, MakeConst mknum, MakeVar mkvar,
           Apply apply, Powi powi, PowD powd) {
  switch (e->kind) {
    case NodeKind::Number:
      return mknum(e->number);
    case NodeKind::Var:
      if (e->var >= dim) throw EvalError("coordinate index out of range");
      return mkvar(e->var);
    case NodeKind::Add:
      return eval_rec<T>(e->a, x, dim, mknum, mkvar, apply, powi, powd) +
             eval_rec<T>(e->b, x, dim, mknum, mkvar, apply, powi, powd);
    case NodeKind::Sub:
      return eval_rec<T>(e->a, x, dim, mknum, mkvar, apply, powi, powd) -
             eval_rec<T>(e->b, x, dim, mknum, mkvar, apply, powi, powd);
    case NodeKind::Mul:
      return eval_rec<T>(e->a, x, dim, mknum, mkvar, apply, powi, powd) *
             eval_rec<T>(e->b, x, dim, mknum, mkvar, apply, powi, powd);
    case NodeKind::Div:
      return eval_rec<T>(e->a, x, dim, mknum, mkvar, apply, powi, powd) /
             eval_rec<T>(e->b, x, dim, mknum, mkvar, apply, powi, powd);
    case NodeKind::Neg:
      return mknum(0.0) - eval_rec<T>(e->a, x, dim, mknum, mkvar, apply, powi, powd);
    case NodeKind::Pow: {
      T base = eval_rec<T>(e->a, x, dim, mknum, mkvar, apply, powi, powd);
      if (e->pow_is_int) return powi(base, e->ipow);
      return powd(base, e->dpow);
    }
    case NodeKind::Call: {
      T arg = eval_rec<T>(e->a, x, dim, mknum, mkvar, apply, powi, powd);
      return apply(arg, e->func, x, dim);
    }
  }
  throw EvalError("corrupt expression node");
}

[[noreturn]] void domain_fail(const char* fn, const char* why, const Vec& x, int dim) {
  throw EvalError(std::string(fn) + " " + why + " at " + point_string(x, dim));
}

}  // namespace

namespace {

// Plain value with the same division guard as the jet path.
struct Val {
  double v;
  friend Val operator+(Val a, Val b) { return {a.v + b.v}; }
  friend Val operator-(Val a, Val b) { return {a.v - b.v}; }
  friend Val operator*(Val a, Val b) { return {a.v * b.v}; }
  friend Val operator/(Val a, Val b) {
    if (b.v == 0.0) throw EvalError("division by zero");
    return {a.v / b.v};
  }
};

}  // namespace

double eval_value(const Expr& e, const Vec& x, int dim) {
  auto mknum = [](double c) { return Val{c}; };
  auto mkvar = [&](int i) { return Val{x[i]}; };
  auto apply = [](Val a, int fi, const Vec& pt, int d) {
    const FuncDef& f = kFuncs[fi];
    if (const char* why = f.guard(a.v)) domain_fail(f.name, why, pt, d);
    return Val{f.f(a.v)};
  };
  auto powi = [&x, dim](Val a, long long p) {
    if (a.v == 0.0 && p < 0) domain_fail("^", "division by zero", x, dim);
    return Val{std::pow(a.v, static_cast<double>(p))};
  };
  auto powd = [&x, dim](Val a, double p) {
    if (a.v <= 0.0) domain_fail("^", "requires a positive base for a non-integer exponent", x, dim);
    return Val{std::pow(a.v, p)};
  };
  return eval_rec<Val>(e, x, dim, mknum, mkvar, apply, powi, powd).v;
}

Jet2 eval_jet2(const Expr& e, const Vec& x, int dim) {
  auto mknum = [dim](double c) { return Jet2::constant(c, dim); };
  auto mkvar = [&x, dim](int i) { return Jet2::variable(i, x[i], dim); };
  auto apply = [](const Jet2& a, int fi, const Vec& pt, int d) {
    const FuncDef& f = kFuncs[fi];
    if (const char* why = f.guard(a.v)) domain_fail(f.name, why, pt, d);
    return jet_apply(a, f.f(a.v), f.fp(a.v), f.fpp(a.v));
  };
  auto powi = [&x, dim](const Jet2& a, long long p) {
    if (a.v == 0.0 && p < 0) domain_fail("^", "division by zero", x, dim);
    return jet_powi(a, p);
  };
  auto powd = [&x, dim](const Jet2& a, double p) {
    if (a.v <= 0.0) domain_fail("^", "requires a positive base for a non-integer exponent", x, dim);
    double f = std::pow(a.v, p);
    double fp = p * std::pow(a.v, p - 1.0);
    double fpp = p * (p - 1.0) * std::pow(a.v, p - 2.0);
    return jet_apply(a, f, fp, fpp);
  };
  return eval_rec<Jet2>(e, x, dim, mknum, mkvar, apply, powi, powd);
}

D1 eval_d1(const Expr& e, const Vec& x, int dim) {
  Jet2 j = eval_jet2(e, x, dim);
  D1 r;
  r.v = j.v;
  for (int i = 0; i < dim; ++i) r.d[i] = j.g[i];
  return r;
}

}  // namespace weyl
