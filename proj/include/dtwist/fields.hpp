#pragma once

#include <memory>
#include <utility>

#include "dtwist/geometry.hpp"

namespace dtwist {

/// A vector field a*dx + b*dy. Components are either expression-backed
/// (partials from 2-jet evaluation) or built-in closed forms (canonical,
/// orthogonal, constant) with exact partials.
class VectorField {
 public:
  static VectorField from_expressions(ScalarField a, ScalarField b);
  static VectorField constant(double vx, double vy);

  TangentVector at(Point p) const;
  ComponentJet1 jet1(Point p) const;

  /// True for built-in closed-form fields, whose components can also be
  /// evaluated as full 2-jets.
  bool has_exact_jets() const;
  std::pair<Jet2, Jet2> jet2(Point p) const;  // requires has_exact_jets()

  struct Impl;
  explicit VectorField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

/// U = (1/(sqrt(2) f)) dx + (1/(sqrt(2) g)) dy; unit for every metric, and
/// geodesic exactly when f_y = g_x.
VectorField canonical_unit_field(const TwistedMetric& m);

/// Rotation of U by +90 degrees in the orthonormal frame dx/f, dy/g:
/// V = (-b g/f) dx + (a f/g) dy. Unit and orthogonal to U wherever U is unit.
VectorField orthogonal_unit_field(const TwistedMetric& m, const VectorField& u);

/// The field with both components negated.
VectorField negated(const VectorField& f);

/// The two components of nabla_U U from the closed-form system
///   ( a^2 f_x/f - b^2 g_x g/f^2 + 2ab f_y/f + a a_x + b a_y ,
///     -a^2 f f_y/g^2 + b^2 g_y/g + 2ab g_x/g + a b_x + b b_y ).
TangentVector geodesic_residual(const TwistedMetric& m, Point p, const VectorField& u);

/// f_y(p) - g_x(p); zero everywhere iff the canonical field is geodesic.
double theorem1_residual(const TwistedMetric& m, Point p);

/// nabla_V W via the connection coefficients (independent route from
/// geodesic_residual when V = W).
TangentVector covariant_derivative(const TwistedMetric& m, Point p,
                                   const VectorField& v, const VectorField& w);

double divergence(const TwistedMetric& m, Point p, const VectorField& v);

struct FieldCheckReport {
  Rect region;
  int grid = 0;
  double tol = 0.0;
  double sup_residual = 0.0;     // max metric norm of nabla_U U over the grid
  double sup_unit_defect = 0.0;  // max |<U,U> - 1| over the grid
  Point worst_point;             // first row-major maximizer of the residual
  bool pass = false;             // sup_residual <= tol && sup_unit_defect <= tol
};

/// Samples geodesic residual and unit defect of u on a closed uniform
/// grid x grid over the region. grid must be >= 2.
FieldCheckReport check_geodesic_field(const TwistedMetric& m, const VectorField& u,
                                      const Rect& region, int grid, double tol);

struct TotalGeodesy {
  double ric = 0.0;       // Ric(N)
  double div_term = 0.0;  // div(nabla_N N), n = 1
  double criterion = 0.0; // ric - div_term; zero iff the foliation normal to N
                          // is totally geodesic
};

/// Evaluates Ric(N) - div(nabla_N N) at p for unit N (within 1e-9). The
/// component jets of nabla_N N come from exact jet composition for built-in
/// fields and from central differences (h = 1e-5) for expression fields.
TotalGeodesy total_geodesy_criterion(const TwistedMetric& m, Point p,
                                     const VectorField& n);

}  // namespace dtwist
