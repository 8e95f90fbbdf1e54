#pragma once

#include <string>
#include <vector>

#include "dtwist/fields.hpp"

namespace dtwist {

struct CurveSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;  // meaningful iff Curve::has_velocity
  double vy = 0.0;
};

/// Time-stamped polyline with constant step; velocities are present iff the
/// curve was produced by the geodesic integrator.
struct Curve {
  std::vector<CurveSample> samples;
  double step = 0.0;
  bool has_velocity = false;
};

/// Domain error hit mid-trajectory; last_valid_index is the index of the last
/// sample that was completed.
class TrajectoryError : public DomainError {
 public:
  TrajectoryError(const std::string& what, std::size_t last_valid_index,
                  std::size_t offset = DomainError::no_offset)
      : DomainError(what, offset), last_valid_index_(last_valid_index) {}
  std::size_t last_valid_index() const noexcept { return last_valid_index_; }

 private:
  std::size_t last_valid_index_;
};

/// Classical fixed-step RK4 on (x', y') = (a(x,y), b(x,y)); n+1 samples at
/// t = 0, h, ..., n*h.
Curve flow_integral_curve(const TwistedMetric& m, const VectorField& field, Point p0,
                          double h, int n);

/// RK4 on the geodesic system x'' = -(Gxx_x x'^2 + 2 Gxy_x x'y' + Gyy_x y'^2),
/// y'' = -(Gxx_y x'^2 + 2 Gxy_y x'y' + Gyy_y y'^2), with the connection
/// coefficients re-evaluated at every stage. Samples carry velocities.
Curve integrate_geodesic(const TwistedMetric& m, Point p0, TangentVector v0, double h,
                         int n);

/// Composite Simpson (trapezoid for even sample counts) of
/// sqrt(f^2 x'^2 + g^2 y'^2), with finite-difference velocities when the
/// curve carries none.
double arc_length(const TwistedMetric& m, const Curve& c);

struct ProjectionCheck {
  double L = 0.0;   // arc length in the twisted metric
  double Lx = 0.0;  // Euclidean length of the x-projection
  double Ly = 0.0;  // Euclidean length of the y-projection
  bool holds = false;
};

/// Desk check of the projection inequality L >= Lx and L >= Ly (up to
/// eps = 1e-9 (1+L)); requires f >= 1 and g >= 1 along the curve.
ProjectionCheck projection_inequality_check(const TwistedMetric& m, const Curve& c);

struct LeafTrace {
  Point seed;
  Curve curve;       // backward (field negated) then forward, t in [-n h, n h]
  bool ok = true;    // false if a domain error truncated either direction
  std::string error;
};

/// Integrates the leaf through each seed. Per-seed errors are captured in the
/// corresponding LeafTrace; other seeds are unaffected.
std::vector<LeafTrace> trace_leaves(const TwistedMetric& m, const VectorField& field,
                                    const std::vector<Point>& seeds, double h, int n);

}  // namespace dtwist
