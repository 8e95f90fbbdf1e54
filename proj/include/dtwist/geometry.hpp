#pragma once

#include "dtwist/expr.hpp"

namespace dtwist {

/// Coordinates in the dx, dy basis at a point.
struct TangentVector {
  double vx = 0.0;
  double vy = 0.0;
};

/// Component values and first partials of a vector field a*dx + b*dy at a
/// point: (a, a_x, a_y, b, b_x, b_y).
struct ComponentJet1 {
  double a = 0.0, a_x = 0.0, a_y = 0.0;
  double b = 0.0, b_x = 0.0, b_y = 0.0;
};

/// The six connection coefficients at a point:
///   nabla_dx dx = Gxx_x dx + Gxx_y dy
///   nabla_dy dy = Gyy_x dx + Gyy_y dy
///   nabla_dx dy = nabla_dy dx = Gxy_x dx + Gxy_y dy
struct Christoffels {
  double Gxx_x, Gxx_y;
  double Gyy_x, Gyy_y;
  double Gxy_x, Gxy_y;
};

/// Curvature data at a point: R(dx,dy)dx = c*dy, R(dx,dy)dy = d*dx, and
/// ip = <R(dx,dy)dx, dy> = g^2 * c (same factors, no re-evaluation).
struct CurvaturePoint {
  double c, d, ip;
};

/// The metric <dx,dx> = f^2, <dy,dy> = g^2, <dx,dy> = 0 on R x R, with
/// positivity of f and g checked lazily at every evaluated point.
class TwistedMetric {
 public:
  TwistedMetric(ScalarField f, ScalarField g);

  const ScalarField& f() const { return f_; }
  const ScalarField& g() const { return g_; }

  double f_value(Point p) const;
  double g_value(Point p) const;
  Jet2 f_jet(Point p) const;
  Jet2 g_jet(Point p) const;

 private:
  ScalarField f_;
  ScalarField g_;
};

/// f(p)^2 vx wx + g(p)^2 vy wy.
double metric_inner(const TwistedMetric& m, Point p, TangentVector v, TangentVector w);

/// sqrt(metric_inner(v, v)).
double metric_norm(const TwistedMetric& m, Point p, TangentVector v);

Christoffels christoffels(const TwistedMetric& m, Point p);

CurvaturePoint curvature(const TwistedMetric& m, Point p);

/// <R(dx,dy)dx, dy> / (f^2 g^2). Under the convention
/// R(X,Y)Z = nabla_Y nabla_X Z - nabla_X nabla_Y Z - nabla_[Y,X] Z this gives
/// -1 for f = 1, g = e^x.
double sectional_curvature(const TwistedMetric& m, Point p);

/// nabla_V W at p, where V has coordinates v at p and W is given by its
/// component 1-jet at p.
TangentVector covariant_derivative(const TwistedMetric& m, Point p, TangentVector v,
                                   const ComponentJet1& w);

/// <R(e1,N)e1, N> for unit N, with e1 the unit vector orthogonal to N
/// (rotation by +90 degrees in the orthonormal frame dx/f, dy/g). In two
/// dimensions this is the Ricci curvature in the direction N (n = 1).
/// Throws DomainError unless |<N,N> - 1| <= 1e-9.
double ricci_direction(const TwistedMetric& m, Point p, TangentVector n);

/// sum_k <nabla_{e_k} V, e_k> over the orthonormal frame e1 = dx/f, e2 = dy/g.
double divergence(const TwistedMetric& m, Point p, const ComponentJet1& v);

}  // namespace dtwist
