#include "dtwist/fields.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dtwist {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::string point_str(Point p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%g, %g)", p.x, p.y);
  return buf;
}

double grid_sample(double lo, double hi, int i, int n) {
  return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(n - 1));
}

// First-order jet used to lift the residual system: carrying (value, d/dx,
// d/dy) through the closed-form expansion yields the component 1-jets of
// nabla_N N without numerical differentiation.
struct Jet1 {
  double v = 0.0, dx = 0.0, dy = 0.0;
};

Jet1 operator+(const Jet1& p, const Jet1& q) {
  return {p.v + q.v, p.dx + q.dx, p.dy + q.dy};
}
Jet1 operator-(const Jet1& p, const Jet1& q) {
  return {p.v - q.v, p.dx - q.dx, p.dy - q.dy};
}
Jet1 operator*(const Jet1& p, const Jet1& q) {
  return {p.v * q.v, p.dx * q.v + p.v * q.dx, p.dy * q.v + p.v * q.dy};
}
Jet1 operator*(double c, const Jet1& q) { return {c * q.v, c * q.dx, c * q.dy}; }
Jet1 operator/(const Jet1& p, const Jet1& q) {
  if (q.v == 0.0) throw DomainError("division by zero");
  const double v = p.v / q.v;
  return {v, (p.dx - v * q.dx) / q.v, (p.dy - v * q.dy) / q.v};
}

// Views of a Jet2 as first-order jets of the value and of its partials.
Jet1 jet1_value(const Jet2& j) { return {j.v, j.dx, j.dy}; }
Jet1 jet1_dx(const Jet2& j) { return {j.dx, j.dxx, j.dxy}; }
Jet1 jet1_dy(const Jet2& j) { return {j.dy, j.dxy, j.dyy}; }

// The section-3 system for nabla_U U, shared between the plain double path
// and the Jet1-lifted path.
template <class S>
struct SystemInput {
  S f, fx, fy, g, gx, gy;
  S a, ax, ay, b, bx, by;
};

template <class S>
std::pair<S, S> eval_geodesic_system(const SystemInput<S>& in) {
  const S rx = in.a * in.a * in.fx / in.f - in.b * in.b * in.gx * in.g / (in.f * in.f) +
               2.0 * (in.a * in.b) * in.fy / in.f + in.a * in.ax + in.b * in.ay;
  const S ry = in.b * in.b * in.gy / in.g - in.a * in.a * in.f * in.fy / (in.g * in.g) +
               2.0 * (in.a * in.b) * in.gx / in.g + in.a * in.bx + in.b * in.by;
  return {rx, ry};
}

}  // namespace

// ---------------------------------------------------------------------------
// VectorField implementations
// ---------------------------------------------------------------------------

struct VectorField::Impl {
  virtual ~Impl() = default;
  virtual TangentVector at(Point p) const = 0;
  virtual ComponentJet1 jet1(Point p) const = 0;
  virtual bool exact_jets() const = 0;
  virtual std::pair<Jet2, Jet2> jet2(Point p) const = 0;
};

namespace {

struct ExprField final : VectorField::Impl {
  ScalarField a, b;
  ExprField(ScalarField a_, ScalarField b_) : a(std::move(a_)), b(std::move(b_)) {}

  TangentVector at(Point p) const override { return {a.eval(p.x, p.y), b.eval(p.x, p.y)}; }

  ComponentJet1 jet1(Point p) const override {
    const Jet2 ja = a.eval_jet(p.x, p.y);
    const Jet2 jb = b.eval_jet(p.x, p.y);
    return {ja.v, ja.dx, ja.dy, jb.v, jb.dx, jb.dy};
  }

  bool exact_jets() const override { return false; }

  std::pair<Jet2, Jet2> jet2(Point) const override {
    throw std::logic_error("expression-backed vector fields expose first-order jets only");
  }
};

struct ConstantField final : VectorField::Impl {
  double vx, vy;
  ConstantField(double vx_, double vy_) : vx(vx_), vy(vy_) {}

  TangentVector at(Point) const override { return {vx, vy}; }
  ComponentJet1 jet1(Point) const override { return {vx, 0.0, 0.0, vy, 0.0, 0.0}; }
  bool exact_jets() const override { return true; }
  std::pair<Jet2, Jet2> jet2(Point) const override {
    return {jet_constant(vx), jet_constant(vy)};
  }
};

struct CanonicalField final : VectorField::Impl {
  TwistedMetric m;
  explicit CanonicalField(TwistedMetric m_) : m(std::move(m_)) {}

  TangentVector at(Point p) const override {
    return {1.0 / (kSqrt2 * m.f_value(p)), 1.0 / (kSqrt2 * m.g_value(p))};
  }

  std::pair<Jet2, Jet2> jet2(Point p) const override {
    const Jet2 one = jet_constant(1.0);
    return {one / (kSqrt2 * m.f_jet(p)), one / (kSqrt2 * m.g_jet(p))};
  }

  ComponentJet1 jet1(Point p) const override {
    const auto [ja, jb] = jet2(p);
    return {ja.v, ja.dx, ja.dy, jb.v, jb.dx, jb.dy};
  }

  bool exact_jets() const override { return true; }
};

struct OrthogonalField final : VectorField::Impl {
  TwistedMetric m;
  VectorField base;
  OrthogonalField(TwistedMetric m_, VectorField base_)
      : m(std::move(m_)), base(std::move(base_)) {}

  TangentVector at(Point p) const override {
    const TangentVector u = base.at(p);
    const double f = m.f_value(p);
    const double g = m.g_value(p);
    return {-u.vy * g / f, u.vx * f / g};
  }

  ComponentJet1 jet1(Point p) const override {
    const ComponentJet1 u = base.jet1(p);
    const Jet2 fj = m.f_jet(p);
    const Jet2 gj = m.g_jet(p);
    const Jet1 f = jet1_value(fj), g = jet1_value(gj);
    const Jet1 a{u.a, u.a_x, u.a_y}, b{u.b, u.b_x, u.b_y};
    const Jet1 zero{};
    const Jet1 v1 = (zero - b) * g / f;
    const Jet1 v2 = a * f / g;
    return {v1.v, v1.dx, v1.dy, v2.v, v2.dx, v2.dy};
  }

  bool exact_jets() const override { return base.has_exact_jets(); }

  std::pair<Jet2, Jet2> jet2(Point p) const override {
    const auto [ua, ub] = base.jet2(p);
    const Jet2 fj = m.f_jet(p);
    const Jet2 gj = m.g_jet(p);
    return {(-ub) * gj / fj, ua * fj / gj};
  }
};

struct NegatedField final : VectorField::Impl {
  VectorField base;
  explicit NegatedField(VectorField base_) : base(std::move(base_)) {}

  TangentVector at(Point p) const override {
    const TangentVector u = base.at(p);
    return {-u.vx, -u.vy};
  }
  ComponentJet1 jet1(Point p) const override {
    const ComponentJet1 u = base.jet1(p);
    return {-u.a, -u.a_x, -u.a_y, -u.b, -u.b_x, -u.b_y};
  }
  bool exact_jets() const override { return base.has_exact_jets(); }
  std::pair<Jet2, Jet2> jet2(Point p) const override {
    const auto [ua, ub] = base.jet2(p);
    return {-ua, -ub};
  }
};

}  // namespace

VectorField VectorField::from_expressions(ScalarField a, ScalarField b) {
  return VectorField(std::make_shared<ExprField>(std::move(a), std::move(b)));
}

VectorField VectorField::constant(double vx, double vy) {
  return VectorField(std::make_shared<ConstantField>(vx, vy));
}

TangentVector VectorField::at(Point p) const { return impl_->at(p); }
ComponentJet1 VectorField::jet1(Point p) const { return impl_->jet1(p); }
bool VectorField::has_exact_jets() const { return impl_->exact_jets(); }
std::pair<Jet2, Jet2> VectorField::jet2(Point p) const { return impl_->jet2(p); }

VectorField canonical_unit_field(const TwistedMetric& m) {
  return VectorField(std::make_shared<CanonicalField>(m));
}

VectorField orthogonal_unit_field(const TwistedMetric& m, const VectorField& u) {
  return VectorField(std::make_shared<OrthogonalField>(m, u));
}

VectorField negated(const VectorField& f) {
  return VectorField(std::make_shared<NegatedField>(f));
}

// ---------------------------------------------------------------------------
// Residuals and criteria
// ---------------------------------------------------------------------------

TangentVector geodesic_residual(const TwistedMetric& m, Point p, const VectorField& u) {
  const Jet2 fj = m.f_jet(p);
  const Jet2 gj = m.g_jet(p);
  const ComponentJet1 c = u.jet1(p);
  SystemInput<double> in{fj.v, fj.dx, fj.dy, gj.v, gj.dx, gj.dy,
                         c.a,  c.a_x, c.a_y, c.b,  c.b_x, c.b_y};
  const auto [rx, ry] = eval_geodesic_system(in);
  return {rx, ry};
}

double theorem1_residual(const TwistedMetric& m, Point p) {
  return m.f_jet(p).dy - m.g_jet(p).dx;
}

TangentVector covariant_derivative(const TwistedMetric& m, Point p,
                                   const VectorField& v, const VectorField& w) {
  return covariant_derivative(m, p, v.at(p), w.jet1(p));
}

double divergence(const TwistedMetric& m, Point p, const VectorField& v) {
  return divergence(m, p, v.jet1(p));
}

FieldCheckReport check_geodesic_field(const TwistedMetric& m, const VectorField& u,
                                      const Rect& region, int grid, double tol) {
  if (grid < 2) throw std::invalid_argument("check_geodesic_field: grid must be >= 2");
  FieldCheckReport rep;
  rep.region = region;
  rep.grid = grid;
  rep.tol = tol;
  bool first = true;
  for (int i = 0; i < grid; ++i) {
    const double x = grid_sample(region.x0, region.x1, i, grid);
    for (int j = 0; j < grid; ++j) {
      const Point p{x, grid_sample(region.y0, region.y1, j, grid)};
      double norm, defect;
      try {
        const TangentVector r = geodesic_residual(m, p, u);
        norm = metric_norm(m, p, r);
        const TangentVector up = u.at(p);
        defect = std::abs(metric_inner(m, p, up, up) - 1.0);
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " at grid point " + point_str(p),
                          e.offset());
      }
      if (first || norm > rep.sup_residual) {
        rep.sup_residual = norm;
        rep.worst_point = p;
        first = false;
      }
      rep.sup_unit_defect = std::max(rep.sup_unit_defect, defect);
    }
  }
  rep.pass = rep.sup_residual <= tol && rep.sup_unit_defect <= tol;
  return rep;
}

namespace {

// Component 1-jet of nabla_N N. Built-in fields go through the Jet1-lifted
// system; expression fields fall back to central differences of the residual
// components (h = 1e-5).
ComponentJet1 covariant_self_derivative_jets(const TwistedMetric& m, Point p,
                                             const VectorField& n) {
  if (n.has_exact_jets()) {
    const Jet2 fj = m.f_jet(p);
    const Jet2 gj = m.g_jet(p);
    const auto [aj, bj] = n.jet2(p);
    SystemInput<Jet1> in{jet1_value(fj), jet1_dx(fj), jet1_dy(fj),
                         jet1_value(gj), jet1_dx(gj), jet1_dy(gj),
                         jet1_value(aj), jet1_dx(aj), jet1_dy(aj),
                         jet1_value(bj), jet1_dx(bj), jet1_dy(bj)};
    const auto [rx, ry] = eval_geodesic_system(in);
    return {rx.v, rx.dx, rx.dy, ry.v, ry.dx, ry.dy};
  }
  const double h = 1e-5;
  const TangentVector r0 = geodesic_residual(m, p, n);
  const TangentVector rxp = geodesic_residual(m, {p.x + h, p.y}, n);
  const TangentVector rxm = geodesic_residual(m, {p.x - h, p.y}, n);
  const TangentVector ryp = geodesic_residual(m, {p.x, p.y + h}, n);
  const TangentVector rym = geodesic_residual(m, {p.x, p.y - h}, n);
  return {r0.vx, (rxp.vx - rxm.vx) / (2.0 * h), (ryp.vx - rym.vx) / (2.0 * h),
          r0.vy, (rxp.vy - rxm.vy) / (2.0 * h), (ryp.vy - rym.vy) / (2.0 * h)};
}

}  // namespace

TotalGeodesy total_geodesy_criterion(const TwistedMetric& m, Point p,
                                     const VectorField& n) {
  const TangentVector nv = n.at(p);
  const double nn = metric_inner(m, p, nv, nv);
  if (std::abs(nn - 1.0) > 1e-9)
    throw DomainError("total_geodesy_criterion: N is not unit at " + point_str(p) +
                      ": <N,N> = " + std::to_string(nn));
  TotalGeodesy out;
  out.ric = ricci_direction(m, p, nv);
  out.div_term = divergence(m, p, covariant_self_derivative_jets(m, p, n));
  out.criterion = out.ric - out.div_term;
  return out;
}

}  // namespace dtwist
