#pragma once

// Shared test helpers: deterministic RNG, random expression generators,
// finite-difference oracles, CLI driver.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dtwist/flow.hpp"

namespace support {

using dtwist::Point;
using dtwist::Rect;
using dtwist::ScalarField;
using dtwist::TwistedMetric;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

inline Point random_point(std::mt19937_64& rng, const Rect& r = {-1.0, 1.0, -1.0, 1.0}) {
  return {uniform(rng, r.x0, r.x1), uniform(rng, r.y0, r.y1)};
}

inline std::string fmt_const(double v) {
  char b[32];
  std::snprintf(b, sizeof(b), "%.3f", v);
  return b;
}

// Small random expression over x, y. Fully parenthesized; kept tame so that
// finite-difference oracles stay well conditioned (callers still reject
// samples with large jets).
inline std::string random_expr(std::mt19937_64& rng, int depth) {
  if (depth <= 0) {
    switch (uniform_int(rng, 0, 3)) {
      case 0: return "x";
      case 1: return "y";
      case 2: return fmt_const(uniform(rng, 0.2, 2.0));
      default: return uniform_int(rng, 0, 1) ? "x" : "y";
    }
  }
  const std::string u = random_expr(rng, depth - 1);
  switch (uniform_int(rng, 0, 13)) {
    case 0: return "sin(" + u + ")";
    case 1: return "cos(" + u + ")";
    case 2: return "tanh(" + u + ")";
    case 3: return "exp(0.5*(" + u + "))";
    case 4: return "(" + u + ")+(" + random_expr(rng, depth - 1) + ")";
    case 5: return "(" + u + ")-(" + random_expr(rng, depth - 1) + ")";
    case 6: return "(" + u + ")*(" + random_expr(rng, depth - 1) + ")";
    case 7: return "(" + u + ")^2";
    case 8: return "-(" + u + ")";
    case 9: return "(" + u + ")/(1+(" + random_expr(rng, depth - 1) + ")^2)";
    case 10: return "sqrt(1+(" + u + ")^2)";
    case 11: return "log(1+(" + u + ")^2)";
    case 12: return "sinh(0.5*(" + u + "))";
    default: return "tan(0.5*tanh(" + u + "))";
  }
}

// Positive-by-construction metric component.
inline std::string random_positive_expr(std::mt19937_64& rng) {
  const std::string u = random_expr(rng, 2);
  switch (uniform_int(rng, 0, 4)) {
    case 0: return "exp(tanh(" + u + "))";
    case 1: return "(" + u + ")^2+" + fmt_const(uniform(rng, 0.5, 1.5));
    case 2: return "cosh(0.5*(" + u + "))";
    case 3: return "sin(" + u + ")^2+" + fmt_const(uniform(rng, 0.5, 1.5));
    default: return "exp(0.4*tanh(" + u + "))+" + fmt_const(uniform(rng, 0.1, 1.0));
  }
}

// Pair with f_y = g_x by construction: f = C(x+y) + A(x) + 3, g = C(x+y) + B(y) + 3.
inline std::pair<std::string, std::string> random_matched_pair(std::mt19937_64& rng) {
  static const char* kShared[] = {"exp(x+y)", "sin(x+y)", "tanh(x+y)", "cosh(0.5*(x+y))"};
  static const char* kOnlyX[] = {"sin(x)^2", "0.3*x", "x^2", "cos(x)", "0"};
  static const char* kOnlyY[] = {"sin(y)^2", "0.25*y", "y^2", "cos(y)", "0"};
  const std::string c = kShared[uniform_int(rng, 0, 3)];
  return {c + "+" + kOnlyX[uniform_int(rng, 0, 4)] + "+3",
          c + "+" + kOnlyY[uniform_int(rng, 0, 4)] + "+3"};
}

inline TwistedMetric make_metric(const std::string& f, const std::string& g) {
  return TwistedMetric(dtwist::parse_expression(f), dtwist::parse_expression(g));
}

// ---------------------------------------------------------------------------
// Finite-difference oracles
// ---------------------------------------------------------------------------

struct JetFD {
  double dx, dy, dxx, dxy, dyy;
};

// Central differences of eval_scalar, h = 1e-4.
inline JetFD fd_jet(const ScalarField& f, double x, double y, double h = 1e-4) {
  const double fp0 = f.eval(x + h, y), fm0 = f.eval(x - h, y);
  const double f0p = f.eval(x, y + h), f0m = f.eval(x, y - h);
  const double f00 = f.eval(x, y);
  const double fpp = f.eval(x + h, y + h), fpm = f.eval(x + h, y - h);
  const double fmp = f.eval(x - h, y + h), fmm = f.eval(x - h, y - h);
  JetFD r;
  r.dx = (fp0 - fm0) / (2.0 * h);
  r.dy = (f0p - f0m) / (2.0 * h);
  r.dxx = (fp0 - 2.0 * f00 + fm0) / (h * h);
  r.dyy = (f0p - 2.0 * f00 + f0m) / (h * h);
  r.dxy = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
  return r;
}

// R(dx,dy)dx evaluated as nabla_dy nabla_dx dx - nabla_dx nabla_dy dx with the
// connection-coefficient fields differentiated by central differences. The
// y-component approximates c; the x-component approximates 0.
struct CurvatureFD {
  double rx, ry;
};

inline CurvatureFD fd_curvature(const TwistedMetric& m, Point p, double h = 1e-4) {
  using dtwist::christoffels;
  const auto ch = christoffels(m, p);
  const auto chyp = christoffels(m, {p.x, p.y + h});
  const auto chym = christoffels(m, {p.x, p.y - h});
  const auto chxp = christoffels(m, {p.x + h, p.y});
  const auto chxm = christoffels(m, {p.x - h, p.y});
  // A = nabla_dx dx, B = nabla_dy dx as coordinate fields.
  const double A1 = ch.Gxx_x, A2 = ch.Gxx_y;
  const double B1 = ch.Gxy_x, B2 = ch.Gxy_y;
  const double dyA1 = (chyp.Gxx_x - chym.Gxx_x) / (2.0 * h);
  const double dyA2 = (chyp.Gxx_y - chym.Gxx_y) / (2.0 * h);
  const double dxB1 = (chxp.Gxy_x - chxm.Gxy_x) / (2.0 * h);
  const double dxB2 = (chxp.Gxy_y - chxm.Gxy_y) / (2.0 * h);
  const double nyA1 = dyA1 + A1 * ch.Gxy_x + A2 * ch.Gyy_x;
  const double nyA2 = dyA2 + A1 * ch.Gxy_y + A2 * ch.Gyy_y;
  const double nxB1 = dxB1 + B1 * ch.Gxx_x + B2 * ch.Gxy_x;
  const double nxB2 = dxB2 + B1 * ch.Gxx_y + B2 * ch.Gxy_y;
  return {nyA1 - nxB1, nyA2 - nxB2};
}

// Largest |<gamma',gamma'> - <v0,v0>| along a geodesic curve.
inline double max_energy_drift(const TwistedMetric& m, const dtwist::Curve& c) {
  const auto& s0 = c.samples.front();
  const double e0 =
      dtwist::metric_inner(m, {s0.x, s0.y}, {s0.vx, s0.vy}, {s0.vx, s0.vy});
  double worst = 0.0;
  for (const auto& s : c.samples) {
    const double e =
        dtwist::metric_inner(m, {s.x, s.y}, {s.vx, s.vy}, {s.vx, s.vy});
    worst = std::max(worst, std::abs(e - e0));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// CLI driver
// ---------------------------------------------------------------------------

inline int run_cli(const std::string& args, const std::string& stdout_path = "",
                   const std::string& stderr_path = "") {
  std::string cmd = std::string(DTWIST_CLI_PATH) + " " + args;
  cmd += stdout_path.empty() ? " > /dev/null" : " > " + stdout_path;
  cmd += stderr_path.empty() ? " 2> /dev/null" : " 2> " + stderr_path;
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WEXITSTATUS(rc);
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace support
