#pragma once
// Truncated Taylor expansions of order 3 in two parameters.
//
// A Jet3 carries the value, gradient, Hessian and third derivatives of a
// scalar quantity with respect to two surface parameters. Symmetric slots are
// stored deduplicated; with two variables the flat index of a symmetric entry
// is simply how many of its indices equal 1, so the Hessian needs 3 doubles
// and the third-order tensor 4.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace grw {

struct JetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Jet3 {
  double v = 0.0;
  std::array<double, 2> g{};  // d/dx, d/dy
  std::array<double, 3> h{};  // xx, xy, yy
  std::array<double, 4> t{};  // xxx, xxy, xyy, yyy

  double hess(int i, int j) const { return h[static_cast<size_t>(i + j)]; }
  double third(int i, int j, int k) const { return t[static_cast<size_t>(i + j + k)]; }
};

inline Jet3 jet_const(double c) {
  Jet3 r;
  r.v = c;
  return r;
}

inline Jet3 jet_var(int index, double value) {
  if (index < 0 || index > 1) throw JetError("jet_var: parameter index out of range");
  Jet3 r;
  r.v = value;
  r.g[static_cast<size_t>(index)] = 1.0;
  return r;
}

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
  Jet3 r;
  r.v = a.v + b.v;
  for (int i = 0; i < 2; ++i) r.g[i] = a.g[i] + b.g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = a.h[i] + b.h[i];
  for (int i = 0; i < 4; ++i) r.t[i] = a.t[i] + b.t[i];
  return r;
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
  Jet3 r;
  r.v = a.v - b.v;
  for (int i = 0; i < 2; ++i) r.g[i] = a.g[i] - b.g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = a.h[i] - b.h[i];
  for (int i = 0; i < 4; ++i) r.t[i] = a.t[i] - b.t[i];
  return r;
}

inline Jet3 operator-(const Jet3& a) {
  Jet3 r;
  r.v = -a.v;
  for (int i = 0; i < 2; ++i) r.g[i] = -a.g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = -a.h[i];
  for (int i = 0; i < 4; ++i) r.t[i] = -a.t[i];
  return r;
}

// Leibniz rule through order 3.
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  Jet3 r;
  r.v = a.v * b.v;
  r.g[0] = a.g[0] * b.v + a.v * b.g[0];
  r.g[1] = a.g[1] * b.v + a.v * b.g[1];
  r.h[0] = a.h[0] * b.v + 2.0 * a.g[0] * b.g[0] + a.v * b.h[0];
  r.h[1] = a.h[1] * b.v + a.g[0] * b.g[1] + a.g[1] * b.g[0] + a.v * b.h[1];
  r.h[2] = a.h[2] * b.v + 2.0 * a.g[1] * b.g[1] + a.v * b.h[2];
  r.t[0] = a.t[0] * b.v + 3.0 * a.h[0] * b.g[0] + 3.0 * a.g[0] * b.h[0] + a.v * b.t[0];
  r.t[1] = a.t[1] * b.v + (a.h[0] * b.g[1] + 2.0 * a.h[1] * b.g[0]) +
           (2.0 * a.g[0] * b.h[1] + a.g[1] * b.h[0]) + a.v * b.t[1];
  r.t[2] = a.t[2] * b.v + (2.0 * a.h[1] * b.g[1] + a.h[2] * b.g[0]) +
           (a.g[0] * b.h[2] + 2.0 * a.g[1] * b.h[1]) + a.v * b.t[2];
  r.t[3] = a.t[3] * b.v + 3.0 * a.h[2] * b.g[1] + 3.0 * a.g[1] * b.h[2] + a.v * b.t[3];
  return r;
}

// Quotient rule, solved order by order so the value slot is exactly a.v / b.v.
inline Jet3 operator/(const Jet3& a, const Jet3& b) {
  if (b.v == 0.0) throw JetError("jet division by zero");
  const double inv = 1.0 / b.v;
  Jet3 q;
  q.v = a.v / b.v;
  q.g[0] = (a.g[0] - q.v * b.g[0]) * inv;
  q.g[1] = (a.g[1] - q.v * b.g[1]) * inv;
  q.h[0] = (a.h[0] - 2.0 * q.g[0] * b.g[0] - q.v * b.h[0]) * inv;
  q.h[1] = (a.h[1] - q.g[0] * b.g[1] - q.g[1] * b.g[0] - q.v * b.h[1]) * inv;
  q.h[2] = (a.h[2] - 2.0 * q.g[1] * b.g[1] - q.v * b.h[2]) * inv;
  q.t[0] = (a.t[0] - 3.0 * q.h[0] * b.g[0] - 3.0 * q.g[0] * b.h[0] - q.v * b.t[0]) * inv;
  q.t[1] = (a.t[1] - (q.h[0] * b.g[1] + 2.0 * q.h[1] * b.g[0]) -
            (2.0 * q.g[0] * b.h[1] + q.g[1] * b.h[0]) - q.v * b.t[1]) * inv;
  q.t[2] = (a.t[2] - (2.0 * q.h[1] * b.g[1] + q.h[2] * b.g[0]) -
            (q.g[0] * b.h[2] + 2.0 * q.g[1] * b.h[1]) - q.v * b.t[2]) * inv;
  q.t[3] = (a.t[3] - 3.0 * q.h[2] * b.g[1] - 3.0 * q.g[1] * b.h[2] - q.v * b.t[3]) * inv;
  return q;
}

inline Jet3 operator+(const Jet3& a, double c) { return a + jet_const(c); }
inline Jet3 operator+(double c, const Jet3& a) { return jet_const(c) + a; }
inline Jet3 operator-(const Jet3& a, double c) { return a - jet_const(c); }
inline Jet3 operator-(double c, const Jet3& a) { return jet_const(c) - a; }

inline Jet3 operator*(const Jet3& a, double c) {
  Jet3 r;
  r.v = a.v * c;
  for (int i = 0; i < 2; ++i) r.g[i] = a.g[i] * c;
  for (int i = 0; i < 3; ++i) r.h[i] = a.h[i] * c;
  for (int i = 0; i < 4; ++i) r.t[i] = a.t[i] * c;
  return r;
}
inline Jet3 operator*(double c, const Jet3& a) { return a * c; }
inline Jet3 operator/(const Jet3& a, double c) { return a / jet_const(c); }
inline Jet3 operator/(double c, const Jet3& a) { return jet_const(c) / a; }

// Chain rule (univariate outer function) through order 3. d0..d3 are the
// outer function's derivatives evaluated at a.v.
inline Jet3 jet_compose(const Jet3& a, double d0, double d1, double d2, double d3) {
  Jet3 r;
  const double g0 = a.g[0], g1 = a.g[1];
  r.v = d0;
  r.g[0] = d1 * g0;
  r.g[1] = d1 * g1;
  r.h[0] = d2 * g0 * g0 + d1 * a.h[0];
  r.h[1] = d2 * g0 * g1 + d1 * a.h[1];
  r.h[2] = d2 * g1 * g1 + d1 * a.h[2];
  r.t[0] = d3 * g0 * g0 * g0 + 3.0 * d2 * a.h[0] * g0 + d1 * a.t[0];
  r.t[1] = d3 * g0 * g0 * g1 + d2 * (a.h[0] * g1 + 2.0 * a.h[1] * g0) + d1 * a.t[1];
  r.t[2] = d3 * g0 * g1 * g1 + d2 * (2.0 * a.h[1] * g1 + a.h[2] * g0) + d1 * a.t[2];
  r.t[3] = d3 * g1 * g1 * g1 + 3.0 * d2 * a.h[2] * g1 + d1 * a.t[3];
  return r;
}

inline Jet3 jet_sin(const Jet3& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return jet_compose(a, s, c, -s, -c);
}
inline Jet3 jet_cos(const Jet3& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return jet_compose(a, c, -s, -c, s);
}
inline Jet3 jet_sinh(const Jet3& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return jet_compose(a, s, c, s, c);
}
inline Jet3 jet_cosh(const Jet3& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return jet_compose(a, c, s, c, s);
}
inline Jet3 jet_exp(const Jet3& a) {
  const double e = std::exp(a.v);
  return jet_compose(a, e, e, e, e);
}
inline Jet3 jet_log(const Jet3& a) {
  if (a.v <= 0.0) throw JetError("jet log of non-positive value");
  const double i1 = 1.0 / a.v;
  return jet_compose(a, std::log(a.v), i1, -i1 * i1, 2.0 * i1 * i1 * i1);
}
inline Jet3 jet_sqrt(const Jet3& a) {
  if (a.v <= 0.0) throw JetError("jet sqrt of non-positive value");
  const double s = std::sqrt(a.v);
  const double d1 = 0.5 / s;
  const double d2 = -0.25 / (a.v * s);
  const double d3 = 0.375 / (a.v * a.v * s);
  return jet_compose(a, s, d1, d2, d3);
}

// Value kernel shared by jet and plain-scalar expression evaluation so both
// paths produce bit-identical values.
inline double pow_value(double v, long long num, long long den) {
  if (den == 1) {
    unsigned long long n = static_cast<unsigned long long>(num < 0 ? -num : num);
    double base = v, acc = 1.0;
    while (n) {
      if (n & 1ull) acc *= base;
      base *= base;
      n >>= 1;
    }
    return num < 0 ? 1.0 / acc : acc;
  }
  if (den == 2) return std::pow(v, static_cast<double>(num) / static_cast<double>(den));
  return std::exp(static_cast<double>(num) / static_cast<double>(den) * std::log(v));
}

// Power with a rational exponent. Integer and half-integer exponents use the
// direct power rule; other rationals go through exp(k log v) and require a
// positive base.
inline Jet3 jet_pow(const Jet3& a, long long num, long long den) {
  if (den <= 0) throw JetError("jet_pow: exponent denominator must be positive");
  if (den == 1) {
    const double k = static_cast<double>(num);
    const double c1 = k;
    const double c2 = k * (k - 1.0);
    const double c3 = k * (k - 1.0) * (k - 2.0);
    if (a.v == 0.0 && num < 0) throw JetError("jet_pow: zero base, negative exponent");
    auto term = [&](double c, long long e) {
      return c == 0.0 ? 0.0 : c * pow_value(a.v, e, 1);
    };
    return jet_compose(a, pow_value(a.v, num, 1), term(c1, num - 1), term(c2, num - 2),
                       term(c3, num - 3));
  }
  if (a.v <= 0.0) throw JetError("jet_pow: fractional exponent needs a positive base");
  if (den == 2) {
    const double k = static_cast<double>(num) / 2.0;
    const double p = pow_value(a.v, num, 2);
    const double d1 = k * p / a.v;
    const double d2 = k * (k - 1.0) * p / (a.v * a.v);
    const double d3 = k * (k - 1.0) * (k - 2.0) * p / (a.v * a.v * a.v);
    return jet_compose(a, p, d1, d2, d3);
  }
  const double k = static_cast<double>(num) / static_cast<double>(den);
  return jet_exp(k * jet_log(a));
}

// Order-2 jet of the dir-th partial derivative. The third-order slots of the
// result are not representable from order-3 data and are left zero; callers
// must not read them.
inline Jet3 jet_demote(const Jet3& a, int dir) {
  if (dir < 0 || dir > 1) throw JetError("jet_demote: parameter index out of range");
  Jet3 r;
  r.v = a.g[static_cast<size_t>(dir)];
  r.g[0] = a.hess(dir, 0);
  r.g[1] = a.hess(dir, 1);
  r.h[0] = a.third(dir, 0, 0);
  r.h[1] = a.third(dir, 0, 1);
  r.h[2] = a.third(dir, 1, 1);
  return r;
}

}  // namespace grw
