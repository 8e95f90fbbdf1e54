#include "dtwist/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace dtwist {

namespace {

std::string point_str(Point p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%g, %g)", p.x, p.y);
  return buf;
}

}  // namespace

TwistedMetric::TwistedMetric(ScalarField f, ScalarField g)
    : f_(std::move(f)), g_(std::move(g)) {}

double TwistedMetric::f_value(Point p) const {
  const double v = f_.eval(p.x, p.y);
  if (v <= 0.0)
    throw DomainError("f = " + std::to_string(v) + " <= 0 at " + point_str(p));
  return v;
}

double TwistedMetric::g_value(Point p) const {
  const double v = g_.eval(p.x, p.y);
  if (v <= 0.0)
    throw DomainError("g = " + std::to_string(v) + " <= 0 at " + point_str(p));
  return v;
}

Jet2 TwistedMetric::f_jet(Point p) const {
  Jet2 j = f_.eval_jet(p.x, p.y);
  if (j.v <= 0.0)
    throw DomainError("f = " + std::to_string(j.v) + " <= 0 at " + point_str(p));
  return j;
}

Jet2 TwistedMetric::g_jet(Point p) const {
  Jet2 j = g_.eval_jet(p.x, p.y);
  if (j.v <= 0.0)
    throw DomainError("g = " + std::to_string(j.v) + " <= 0 at " + point_str(p));
  return j;
}

double metric_inner(const TwistedMetric& m, Point p, TangentVector v, TangentVector w) {
  const double f = m.f_value(p);
  const double g = m.g_value(p);
  return f * f * v.vx * w.vx + g * g * v.vy * w.vy;
}

double metric_norm(const TwistedMetric& m, Point p, TangentVector v) {
  return std::sqrt(metric_inner(m, p, v, v));
}

Christoffels christoffels(const TwistedMetric& m, Point p) {
  const Jet2 fj = m.f_jet(p);
  const Jet2 gj = m.g_jet(p);
  const double f = fj.v, fx = fj.dx, fy = fj.dy;
  const double g = gj.v, gx = gj.dx, gy = gj.dy;
  Christoffels ch;
  ch.Gxx_x = fx / f;
  ch.Gxx_y = -f * fy / (g * g);
  ch.Gyy_x = -gx * g / (f * f);
  ch.Gyy_y = gy / g;
  ch.Gxy_x = fy / f;
  ch.Gxy_y = gx / g;
  return ch;
}

CurvaturePoint curvature(const TwistedMetric& m, Point p) {
  const Jet2 fj = m.f_jet(p);
  const Jet2 gj = m.g_jet(p);
  const double f = fj.v, fx = fj.dx, fy = fj.dy, fyy = fj.dyy;
  const double g = gj.v, gx = gj.dx, gy = gj.dy, gxx = gj.dxx;

  const double f2 = f * f, f3 = f2 * f;
  const double g2 = g * g, g3 = g2 * g;

  // Bracket terms expanded analytically by product/quotient rule:
  //   (f f_y / g^2)_y = (f_y^2 + f f_yy)/g^2 - 2 f f_y g_y / g^3
  //   (g_x / g)_x     = g_xx/g - g_x^2/g^2
  //   (f_y / f)_y     = f_yy/f - f_y^2/f^2
  //   (g g_x / f^2)_x = (g_x^2 + g g_xx)/f^2 - 2 g g_x f_x / f^3
  const double ffy_g2_y = (fy * fy + f * fyy) / g2 - 2.0 * f * fy * gy / g3;
  const double gx_g_x = gxx / g - gx * gx / g2;
  const double fy_f_y = fyy / f - fy * fy / f2;
  const double ggx_f2_x = (gx * gx + g * gxx) / f2 - 2.0 * g * gx * fx / f3;

  CurvaturePoint cp;
  cp.c = fy * fy / g2 - gx * gx / g2 + fx * gx / (f * g) - f * fy * gy / g3 -
         ffy_g2_y - gx_g_x;
  cp.d = fy * fy / f2 - gx * gx / f2 + g * fx * gx / f3 - gy * fy / (f * g) +
         fy_f_y + ggx_f2_x;
  cp.ip = g2 * cp.c;
  return cp;
}

double sectional_curvature(const TwistedMetric& m, Point p) {
  const CurvaturePoint cp = curvature(m, p);
  const double f = m.f_value(p);
  const double g = m.g_value(p);
  return cp.ip / (f * f * g * g);
}

TangentVector covariant_derivative(const TwistedMetric& m, Point p, TangentVector v,
                                   const ComponentJet1& w) {
  const Christoffels ch = christoffels(m, p);
  // nabla_dx W and nabla_dy W, then combine linearly with V's coordinates.
  const TangentVector ddx{w.a_x + w.a * ch.Gxx_x + w.b * ch.Gxy_x,
                          w.b_x + w.a * ch.Gxx_y + w.b * ch.Gxy_y};
  const TangentVector ddy{w.a_y + w.a * ch.Gxy_x + w.b * ch.Gyy_x,
                          w.b_y + w.a * ch.Gxy_y + w.b * ch.Gyy_y};
  return {v.vx * ddx.vx + v.vy * ddy.vx, v.vx * ddx.vy + v.vy * ddy.vy};
}

double ricci_direction(const TwistedMetric& m, Point p, TangentVector n) {
  const double nn = metric_inner(m, p, n, n);
  if (std::abs(nn - 1.0) > 1e-9)
    throw DomainError("ricci_direction: N is not unit at " + point_str(p) +
                      ": <N,N> = " + std::to_string(nn));
  const double f = m.f_value(p);
  const double g = m.g_value(p);
  const CurvaturePoint cp = curvature(m, p);
  const double r = n.vx, s = n.vy;
  // e1 = rotation of N by +90 degrees in the orthonormal frame dx/f, dy/g.
  const double p1 = -s * g / f;
  const double q1 = r * f / g;
  // <R(e1,N)e1, N> with R(e1,N) = (p1 s - q1 r) R(dx,dy).
  return (p1 * s - q1 * r) * (p1 * cp.c * s * g * g + q1 * cp.d * r * f * f);
}

double divergence(const TwistedMetric& m, Point p, const ComponentJet1& v) {
  const Christoffels ch = christoffels(m, p);
  // x-component of nabla_dx V plus y-component of nabla_dy V.
  return (v.a_x + v.a * ch.Gxx_x + v.b * ch.Gxy_x) +
         (v.b_y + v.a * ch.Gxy_y + v.b * ch.Gyy_y);
}

}  // namespace dtwist
