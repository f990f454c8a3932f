#pragma once

// Scalar expression trees over chart coordinates, with evaluation carrying
// values, gradients and Hessians via forward-mode jets.

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylcheck/linalg.hpp"

namespace weyl {

struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(const std::string& msg, size_t off)
      : std::runtime_error(msg + " (offset " + std::to_string(off) + ")"), offset(off) {}
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Order-2 jet in up to kMaxDim variables. Hessian stored as the packed
// upper triangle; symmetry is structural, never re-checked downstream.
struct Jet2 {
  int dim = 0;
  double v = 0;
  std::array<double, kMaxDim> g{};
  std::array<double, kMaxDim*(kMaxDim + 1) / 2> h{};

  static int hidx(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j + 1) / 2 + i;
  }
  double hess(int i, int j) const { return h[hidx(i, j)]; }
  double& hess(int i, int j) { return h[hidx(i, j)]; }

  static Jet2 constant(double c, int dim) {
    Jet2 j;
    j.dim = dim;
    j.v = c;
    return j;
  }
  static Jet2 variable(int i, double x, int dim) {
    Jet2 j;
    j.dim = dim;
    j.v = x;
    j.g[i] = 1.0;
    return j;
  }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
// f(a) with f, f', f'' evaluated at a.v (chain rule to order 2).
Jet2 jet_apply(const Jet2& a, double f, double fp, double fpp);
// Integer power by repeated multiplication; negative exponents via reciprocal.
Jet2 jet_powi(const Jet2& a, long long e);

// Jets of outer variables y = phi(x): compose df/dy data with jets of each y.
Jet2 jet_compose(const Jet2& outer, const std::vector<Jet2>& inner);

enum class NodeKind { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Call };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  double number = 0;     // Number
  int var = -1;          // Var
  int func = -1;         // Call: index into the function table
  long long ipow = 0;    // Pow with integer exponent
  bool pow_is_int = false;
  double dpow = 0;       // Pow with non-integer constant exponent
  Expr a, b;
};

// Builders (used by tests and by programmatic gauge changes).
Expr e_num(double v);
Expr e_var(int i);
Expr e_add(Expr a, Expr b);
Expr e_sub(Expr a, Expr b);
Expr e_mul(Expr a, Expr b);
Expr e_div(Expr a, Expr b);
Expr e_neg(Expr a);
Expr e_pow(Expr a, double exponent);
Expr e_call(const std::string& fn, Expr a);

// Parses against the coordinate-name list; every identifier must be either a
// coordinate, a known function name, or one of the constants pi / e.
Expr parse_expr(const std::string& text, const std::vector<std::string>& coords);

// Round-trippable rendering; numbers printed with %.17g.
std::string print_expr(const Expr& e, const std::vector<std::string>& coords);

// Structural equality of trees (numbers compared bit-for-bit).
bool expr_equal(const Expr& a, const Expr& b);

double eval_value(const Expr& e, const Vec& x, int dim);
Jet2 eval_jet2(const Expr& e, const Vec& x, int dim);
D1 eval_d1(const Expr& e, const Vec& x, int dim);

}  // namespace weyl
