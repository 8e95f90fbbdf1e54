#include "dtwist/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace dtwist {

namespace {

// Neumaier-compensated accumulator for integrator state; keeps long flows
// (and the constant-field case) free of stepwise rounding drift.
struct Accum {
  double sum = 0.0;
  double comp = 0.0;

  explicit Accum(double v = 0.0) : sum(v) {}

  void add(double term) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

struct GeoDeriv {
  double dx, dy, dvx, dvy;
};

GeoDeriv geodesic_rhs(const TwistedMetric& m, double x, double y, double vx, double vy) {
  const Christoffels ch = christoffels(m, {x, y});
  return {vx, vy,
          -(ch.Gxx_x * vx * vx + 2.0 * ch.Gxy_x * vx * vy + ch.Gyy_x * vy * vy),
          -(ch.Gxx_y * vx * vx + 2.0 * ch.Gxy_y * vx * vy + ch.Gyy_y * vy * vy)};
}

// Internal integrators that report rather than throw, so trace_leaves can
// keep partial leaves.
Curve integrate_field_impl(const VectorField& field, Point p0, double h, int n,
                           std::string* error, std::size_t* last_valid) {
  Curve c;
  c.step = h;
  c.has_velocity = false;
  c.samples.reserve(static_cast<std::size_t>(n) + 1);
  Accum x(p0.x), y(p0.y);
  c.samples.push_back({0.0, p0.x, p0.y, 0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    const double cx = x.value(), cy = y.value();
    try {
      const TangentVector k1 = field.at({cx, cy});
      const TangentVector k2 = field.at({cx + 0.5 * h * k1.vx, cy + 0.5 * h * k1.vy});
      const TangentVector k3 = field.at({cx + 0.5 * h * k2.vx, cy + 0.5 * h * k2.vy});
      const TangentVector k4 = field.at({cx + h * k3.vx, cy + h * k3.vy});
      x.add(h * ((k1.vx + 2.0 * (k2.vx + k3.vx) + k4.vx) / 6.0));
      y.add(h * ((k1.vy + 2.0 * (k2.vy + k3.vy) + k4.vy) / 6.0));
    } catch (const DomainError& e) {
      if (error) *error = e.what();
      if (last_valid) *last_valid = c.samples.size() - 1;
      return c;
    }
    c.samples.push_back({(i + 1) * h, x.value(), y.value(), 0.0, 0.0});
  }
  return c;
}

}  // namespace

Curve flow_integral_curve(const TwistedMetric&, const VectorField& field, Point p0,
                          double h, int n) {
  if (h <= 0.0) throw std::invalid_argument("flow_integral_curve: h must be > 0");
  if (n < 1) throw std::invalid_argument("flow_integral_curve: n must be >= 1");
  std::string error;
  std::size_t last_valid = 0;
  Curve c = integrate_field_impl(field, p0, h, n, &error, &last_valid);
  if (!error.empty())
    throw TrajectoryError(error + " (last valid sample index " +
                              std::to_string(last_valid) + ")",
                          last_valid);
  return c;
}

Curve integrate_geodesic(const TwistedMetric& m, Point p0, TangentVector v0, double h,
                         int n) {
  if (h <= 0.0) throw std::invalid_argument("integrate_geodesic: h must be > 0");
  if (n < 1) throw std::invalid_argument("integrate_geodesic: n must be >= 1");
  Curve c;
  c.step = h;
  c.has_velocity = true;
  c.samples.reserve(static_cast<std::size_t>(n) + 1);
  Accum x(p0.x), y(p0.y), vx(v0.vx), vy(v0.vy);
  c.samples.push_back({0.0, p0.x, p0.y, v0.vx, v0.vy});
  for (int i = 0; i < n; ++i) {
    const double cx = x.value(), cy = y.value();
    const double cvx = vx.value(), cvy = vy.value();
    try {
      const GeoDeriv k1 = geodesic_rhs(m, cx, cy, cvx, cvy);
      const GeoDeriv k2 = geodesic_rhs(m, cx + 0.5 * h * k1.dx, cy + 0.5 * h * k1.dy,
                                       cvx + 0.5 * h * k1.dvx, cvy + 0.5 * h * k1.dvy);
      const GeoDeriv k3 = geodesic_rhs(m, cx + 0.5 * h * k2.dx, cy + 0.5 * h * k2.dy,
                                       cvx + 0.5 * h * k2.dvx, cvy + 0.5 * h * k2.dvy);
      const GeoDeriv k4 = geodesic_rhs(m, cx + h * k3.dx, cy + h * k3.dy,
                                       cvx + h * k3.dvx, cvy + h * k3.dvy);
      x.add(h * ((k1.dx + 2.0 * (k2.dx + k3.dx) + k4.dx) / 6.0));
      y.add(h * ((k1.dy + 2.0 * (k2.dy + k3.dy) + k4.dy) / 6.0));
      vx.add(h * ((k1.dvx + 2.0 * (k2.dvx + k3.dvx) + k4.dvx) / 6.0));
      vy.add(h * ((k1.dvy + 2.0 * (k2.dvy + k3.dvy) + k4.dvy) / 6.0));
    } catch (const DomainError& e) {
      throw TrajectoryError(std::string(e.what()) + " (last valid sample index " +
                                std::to_string(c.samples.size() - 1) + ")",
                            c.samples.size() - 1, e.offset());
    }
    c.samples.push_back({(i + 1) * h, x.value(), y.value(), vx.value(), vy.value()});
  }
  return c;
}

namespace {

// Velocities for quadrature: the curve's own when present, otherwise central
// differences (one-sided at the endpoints).
void sample_velocity(const Curve& c, std::size_t i, double h, double* vx, double* vy) {
  const auto& s = c.samples;
  if (c.has_velocity) {
    *vx = s[i].vx;
    *vy = s[i].vy;
    return;
  }
  const std::size_t n = s.size();
  if (i == 0) {
    *vx = (s[1].x - s[0].x) / h;
    *vy = (s[1].y - s[0].y) / h;
  } else if (i == n - 1) {
    *vx = (s[n - 1].x - s[n - 2].x) / h;
    *vy = (s[n - 1].y - s[n - 2].y) / h;
  } else {
    *vx = (s[i + 1].x - s[i - 1].x) / (2.0 * h);
    *vy = (s[i + 1].y - s[i - 1].y) / (2.0 * h);
  }
}

double curve_step(const Curve& c) {
  const double h = c.step > 0.0 ? c.step : c.samples[1].t - c.samples[0].t;
  if (h <= 0.0) throw std::invalid_argument("curve t must be strictly increasing");
  return h;
}

// Composite Simpson over uniformly spaced values; trapezoid when the interval
// count is odd.
double quadrature(const std::vector<double>& s, double h) {
  const std::size_t n = s.size();
  if ((n - 1) % 2 == 0) {
    double sum = s[0] + s[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * s[i];
    return h * sum / 3.0;
  }
  double sum = 0.5 * (s[0] + s[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += s[i];
  return h * sum;
}

}  // namespace

double arc_length(const TwistedMetric& m, const Curve& c) {
  const std::size_t n = c.samples.size();
  if (n < 2) return 0.0;
  const double h = curve_step(c);
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    double vx, vy;
    sample_velocity(c, i, h, &vx, &vy);
    const Point p{c.samples[i].x, c.samples[i].y};
    const double f = m.f_value(p);
    const double g = m.g_value(p);
    integrand[i] = std::sqrt(f * f * vx * vx + g * g * vy * vy);
  }
  return quadrature(integrand, h);
}

ProjectionCheck projection_inequality_check(const TwistedMetric& m, const Curve& c) {
  const std::size_t n = c.samples.size();
  if (n < 2) throw std::invalid_argument("projection_inequality_check: need >= 2 samples");
  const double h = curve_step(c);

  std::vector<double> twisted(n), proj_x(n), proj_y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point p{c.samples[i].x, c.samples[i].y};
    const double f = m.f_value(p);
    const double g = m.g_value(p);
    if (f < 1.0)
      throw DomainError("projection inequality requires f >= 1; f = " +
                        std::to_string(f) + " at sample " + std::to_string(i));
    if (g < 1.0)
      throw DomainError("projection inequality requires g >= 1; g = " +
                        std::to_string(g) + " at sample " + std::to_string(i));
    double vx, vy;
    sample_velocity(c, i, h, &vx, &vy);
    twisted[i] = std::sqrt(f * f * vx * vx + g * g * vy * vy);
    proj_x[i] = std::abs(vx);
    proj_y[i] = std::abs(vy);
  }

  ProjectionCheck out;
  out.L = quadrature(twisted, h);
  out.Lx = quadrature(proj_x, h);
  out.Ly = quadrature(proj_y, h);
  const double eps = 1e-9 * (1.0 + out.L);
  out.holds = out.L >= out.Lx - eps && out.L >= out.Ly - eps;
  return out;
}

std::vector<LeafTrace> trace_leaves(const TwistedMetric&, const VectorField& field,
                                    const std::vector<Point>& seeds, double h, int n) {
  if (seeds.empty()) throw std::invalid_argument("trace_leaves: seeds must be non-empty");
  if (h <= 0.0) throw std::invalid_argument("trace_leaves: h must be > 0");
  if (n < 1) throw std::invalid_argument("trace_leaves: n must be >= 1");

  const VectorField backward_field = negated(field);
  std::vector<LeafTrace> out;
  out.reserve(seeds.size());
  for (const Point& seed : seeds) {
    LeafTrace leaf;
    leaf.seed = seed;
    std::string err_b, err_f;
    std::size_t last_b = 0, last_f = 0;
    const Curve bw = integrate_field_impl(backward_field, seed, h, n, &err_b, &last_b);
    const Curve fw = integrate_field_impl(field, seed, h, n, &err_f, &last_f);

    Curve& c = leaf.curve;
    c.step = h;
    c.has_velocity = false;
    c.samples.reserve(bw.samples.size() + fw.samples.size() - 1);
    for (std::size_t j = bw.samples.size(); j-- > 1;) {
      const CurveSample& s = bw.samples[j];
      c.samples.push_back({-s.t, s.x, s.y, 0.0, 0.0});
    }
    c.samples.insert(c.samples.end(), fw.samples.begin(), fw.samples.end());

    if (!err_b.empty() || !err_f.empty()) {
      leaf.ok = false;
      leaf.error = !err_b.empty() ? "backward: " + err_b : "forward: " + err_f;
      if (!err_b.empty() && !err_f.empty()) leaf.error += "; forward: " + err_f;
    }
    out.push_back(std::move(leaf));
  }
  return out;
}

}  // namespace dtwist
