#pragma once

// Fixed-capacity linear algebra for chart dimensions up to 6, plus the
// first-order scalar type used to carry frame-field derivatives.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace weyl {

constexpr int kMaxDim = 6;

using Vec = std::array<double, kMaxDim>;
using Mat = std::array<std::array<double, kMaxDim>, kMaxDim>;
using CVec = std::array<std::complex<double>, kMaxDim>;

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Vec zero_vec() {
  Vec v{};
  return v;
}

inline Mat zero_mat() {
  Mat m{};
  return m;
}

inline Mat identity(int n) {
  Mat m{};
  for (int i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline double dot(const Vec& a, const Vec& b, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// u^T g v
inline double inner(const Mat& g, const Vec& u, const Vec& v, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += u[i] * g[i][j] * v[j];
  return s;
}

inline Vec matvec(const Mat& a, const Vec& v, int n, int m = -1) {
  if (m < 0) m = n;
  Vec r{};
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < m; ++j) s += a[i][j] * v[j];
    r[i] = s;
  }
  return r;
}

inline Mat matmul(const Mat& a, const Mat& b, int n) {
  Mat r{};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aik = a[i][k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

inline double max_abs(const Mat& a, int n) {
  double m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m = std::max(m, std::fabs(a[i][j]));
  return m;
}

inline double max_abs(const Vec& a, int n) {
  double m = 0;
  for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

// LU with partial pivoting on an n x n copy; returns det, solves, inverts.
struct Lu {
  int n = 0;
  Mat lu{};
  std::array<int, kMaxDim> perm{};
  double det = 0;
  bool singular = true;

  static Lu factor(const Mat& a, int n) {
    Lu f;
    f.n = n;
    f.lu = a;
    f.det = 1.0;
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    for (int c = 0; c < n; ++c) {
      int p = c;
      for (int r = c + 1; r < n; ++r)
        if (std::fabs(f.lu[r][c]) > std::fabs(f.lu[p][c])) p = r;
      if (p != c) {
        std::swap(f.lu[p], f.lu[c]);
        std::swap(f.perm[p], f.perm[c]);
        f.det = -f.det;
      }
      double piv = f.lu[c][c];
      f.det *= piv;
      if (piv == 0.0) {
        f.singular = true;
        return f;
      }
      for (int r = c + 1; r < n; ++r) {
        double m = f.lu[r][c] / piv;
        f.lu[r][c] = m;
        for (int k = c + 1; k < n; ++k) f.lu[r][k] -= m * f.lu[c][k];
      }
    }
    f.singular = false;
    return f;
  }

  Vec solve(const Vec& b) const {
    Vec y{};
    for (int i = 0; i < n; ++i) y[i] = b[perm[i]];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) y[i] -= lu[i][j] * y[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) y[i] -= lu[i][j] * y[j];
      y[i] /= lu[i][i];
    }
    return y;
  }
};

inline double det(const Mat& a, int n) { return Lu::factor(a, n).det; }

inline Vec solve(const Mat& a, const Vec& b, int n, const char* what = "linear system") {
  Lu f = Lu::factor(a, n);
  if (f.singular)
    throw GeometryError(std::string("singular ") + what);
  return f.solve(b);
}

inline Mat inverse(const Mat& a, int n, const char* what = "matrix") {
  Lu f = Lu::factor(a, n);
  if (f.singular)
    throw GeometryError(std::string("singular ") + what);
  Mat inv{};
  for (int c = 0; c < n; ++c) {
    Vec e{};
    e[c] = 1.0;
    Vec col = f.solve(e);
    for (int r = 0; r < n; ++r) inv[r][c] = col[r];
  }
  return inv;
}

// Scalar with value and first derivatives (one per chart coordinate).
struct D1 {
  double v = 0;
  Vec d{};

  static D1 c(double val) {
    D1 s;
    s.v = val;
    return s;
  }
};

inline D1 operator+(const D1& a, const D1& b) {
  D1 r;
  r.v = a.v + b.v;
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}

inline D1 operator-(const D1& a, const D1& b) {
  D1 r;
  r.v = a.v - b.v;
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}

inline D1 operator-(const D1& a) {
  D1 r;
  r.v = -a.v;
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = -a.d[i];
  return r;
}

inline D1 operator*(const D1& a, const D1& b) {
  D1 r;
  r.v = a.v * b.v;
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}

inline D1 operator*(double a, const D1& b) {
  D1 r;
  r.v = a * b.v;
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = a * b.d[i];
  return r;
}

inline D1 operator/(const D1& a, const D1& b) {
  if (b.v == 0.0) throw GeometryError("division by zero in frame arithmetic");
  D1 r;
  r.v = a.v / b.v;
  double ib2 = 1.0 / (b.v * b.v);
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * ib2;
  return r;
}

inline D1 sqrt(const D1& a) {
  if (a.v <= 0.0) throw GeometryError("sqrt of non-positive value in frame arithmetic");
  D1 r;
  r.v = std::sqrt(a.v);
  double c = 0.5 / r.v;
  for (int i = 0; i < kMaxDim; ++i) r.d[i] = c * a.d[i];
  return r;
}

// Vector field known to first order: component values and derivatives
// d[i][j] = d_j v^i.
struct VecD1 {
  Vec v{};
  Mat d{};
};

inline VecD1 vd1_zero() { return VecD1{}; }

inline D1 vd1_comp(const VecD1& u, int i) {
  D1 s;
  s.v = u.v[i];
  for (int j = 0; j < kMaxDim; ++j) s.d[j] = u.d[i][j];
  return s;
}

inline void vd1_set(VecD1& u, int i, const D1& s) {
  u.v[i] = s.v;
  for (int j = 0; j < kMaxDim; ++j) u.d[i][j] = s.d[j];
}

inline VecD1 operator+(const VecD1& a, const VecD1& b) {
  VecD1 r;
  for (int i = 0; i < kMaxDim; ++i) {
    r.v[i] = a.v[i] + b.v[i];
    for (int j = 0; j < kMaxDim; ++j) r.d[i][j] = a.d[i][j] + b.d[i][j];
  }
  return r;
}

inline VecD1 operator-(const VecD1& a, const VecD1& b) {
  VecD1 r;
  for (int i = 0; i < kMaxDim; ++i) {
    r.v[i] = a.v[i] - b.v[i];
    for (int j = 0; j < kMaxDim; ++j) r.d[i][j] = a.d[i][j] - b.d[i][j];
  }
  return r;
}

inline VecD1 operator*(const D1& s, const VecD1& u) {
  VecD1 r;
  for (int i = 0; i < kMaxDim; ++i) {
    r.v[i] = s.v * u.v[i];
    for (int j = 0; j < kMaxDim; ++j) r.d[i][j] = s.d[j] * u.v[i] + s.v * u.d[i][j];
  }
  return r;
}

inline VecD1 operator*(double s, const VecD1& u) {
  VecD1 r;
  for (int i = 0; i < kMaxDim; ++i) {
    r.v[i] = s * u.v[i];
    for (int j = 0; j < kMaxDim; ++j) r.d[i][j] = s * u.d[i][j];
  }
  return r;
}

// Lie bracket [u,w]^i = u^j d_j w^i - w^j d_j u^i, first-order data dropped.
inline Vec bracket(const VecD1& u, const VecD1& w, int m) {
  Vec r{};
  for (int i = 0; i < m; ++i) {
    double s = 0;
    for (int j = 0; j < m; ++j) s += u.v[j] * w.d[i][j] - w.v[j] * u.d[i][j];
    r[i] = s;
  }
  return r;
}

}  // namespace weyl
