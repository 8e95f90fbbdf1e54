#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dtwist/fields.hpp"
#include "support.hpp"

using namespace dtwist;

namespace {

const char* kF3 = "exp(x+y)+sin(x)^2+1";
const char* kG3 = "exp(x+y)+1";
const char* kF4 = "exp(x)+1";
const char* kG4 = "sin(y)^2+1";

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

TEST_CASE("canonical_unit_field: values and unit norm") {
  const auto euclid = support::make_metric("1", "1");
  const auto u0 = canonical_unit_field(euclid).at({0.8, -0.2});
  CHECK(u0.vx == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(u0.vy == doctest::Approx(kInvSqrt2).epsilon(1e-15));

  // section-3 example at the origin: f = g = 2
  const auto m3 = support::make_metric(kF3, kG3);
  const auto u3 = canonical_unit_field(m3);
  const auto v = u3.at({0, 0});
  CHECK(v.vx == doctest::Approx(1.0 / (2.0 * std::numbers::sqrt2)).epsilon(1e-15));
  CHECK(v.vy == doctest::Approx(1.0 / (2.0 * std::numbers::sqrt2)).epsilon(1e-15));

  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const Point p = support::random_point(rng);
    const auto up = u3.at(p);
    CHECK(std::abs(metric_inner(m3, p, up, up) - 1.0) <= 1e-12);
  }

  // jet values agree with the scalar path exactly
  for (int i = 0; i < 20; ++i) {
    const Point p = support::random_point(rng);
    const auto up = u3.at(p);
    const auto j = u3.jet1(p);
    CHECK(j.a == up.vx);
    CHECK(j.b == up.vy);
  }
}

TEST_CASE("orthogonal_unit_field: rotations and orthonormality") {
  const auto euclid = support::make_metric("1", "1");
  const auto e1 = orthogonal_unit_field(euclid, VectorField::constant(1, 0)).at({0, 0});
  CHECK(e1.vx == 0.0);
  CHECK(e1.vy == 1.0);

  const auto diag = VectorField::constant(kInvSqrt2, kInvSqrt2);
  const auto e2 = orthogonal_unit_field(euclid, diag).at({0, 0});
  CHECK(e2.vx == doctest::Approx(-kInvSqrt2).epsilon(1e-15));
  CHECK(e2.vy == doctest::Approx(kInvSqrt2).epsilon(1e-15));

  // section-3 example at the origin, canonical base
  const auto m3 = support::make_metric(kF3, kG3);
  const auto u3 = canonical_unit_field(m3);
  const auto v3 = orthogonal_unit_field(m3, u3);
  const auto w = v3.at({0, 0});
  CHECK(w.vx == doctest::Approx(-1.0 / (2.0 * std::numbers::sqrt2)).epsilon(1e-15));
  CHECK(w.vy == doctest::Approx(1.0 / (2.0 * std::numbers::sqrt2)).epsilon(1e-15));

  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    const Point p = support::random_point(rng);
    const auto up = u3.at(p);
    const auto vp = v3.at(p);
    CHECK(std::abs(metric_inner(m3, p, vp, vp) - 1.0) <= 1e-12);
    CHECK(std::abs(metric_inner(m3, p, up, vp)) <= 1e-12);
  }
}

TEST_CASE("geodesic_residual: frozen examples") {
  // Theorem 1 positive case: f_y = g_x, canonical U is geodesic.
  const auto m3 = support::make_metric(kF3, kG3);
  const auto u3 = canonical_unit_field(m3);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const Point p = support::random_point(rng);
    const auto r = geodesic_residual(m3, p, u3);
    CHECK(std::abs(r.vx) <= 1e-12);
    CHECK(std::abs(r.vy) <= 1e-12);
  }

  // Contrapositive: g = 1 gives f_y - g_x = e^{x+y}. Substituting into the
  // system at the origin: ((f_y-g_x)/(2 f^2 g), -(f_y-g_x)/(2 f g^2))
  // = (1/8, -1/4).
  const auto mc = support::make_metric(kF3, "1");
  const auto uc = canonical_unit_field(mc);
  const auto r = geodesic_residual(mc, {0, 0}, uc);
  CHECK(r.vx == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(r.vy == doctest::Approx(-0.25).epsilon(1e-12));

  // constant-coefficient fields on the Euclidean plane flow straight
  const auto euclid = support::make_metric("1", "1");
  const auto cf = VectorField::constant(0.3, -0.8);
  const auto rz = geodesic_residual(euclid, {0.1, 0.2}, cf);
  CHECK(rz.vx == 0.0);
  CHECK(rz.vy == 0.0);
}

TEST_CASE("geodesic_residual equals covariant_derivative(U,U)") {
  std::mt19937_64 rng(53);
  int tested = 0;
  while (tested < 200) {
    const auto m = support::make_metric(support::random_positive_expr(rng),
                                        support::random_positive_expr(rng));
    const auto u = VectorField::from_expressions(
        parse_expression(support::random_expr(rng, 2)),
        parse_expression(support::random_expr(rng, 2)));
    const Point p = support::random_point(rng);
    try {
      const auto a = geodesic_residual(m, p, u);
      const auto b = covariant_derivative(m, p, u, u);
      if (!std::isfinite(a.vx) || std::abs(a.vx) + std::abs(a.vy) > 1e4) continue;
      CHECK(std::abs(a.vx - b.vx) <= 1e-10 * std::max(1.0, std::abs(a.vx)));
      CHECK(std::abs(a.vy - b.vy) <= 1e-10 * std::max(1.0, std::abs(a.vy)));
      ++tested;
    } catch (const DomainError&) {
    }
  }
}

TEST_CASE("theorem1_residual: frozen examples") {
  const auto m3 = support::make_metric(kF3, kG3);
  std::mt19937_64 rng(59);
  for (int i = 0; i < 50; ++i)
    CHECK(theorem1_residual(m3, support::random_point(rng)) == 0.0);

  const auto m4 = support::make_metric(kF4, kG4);
  for (int i = 0; i < 50; ++i)
    CHECK(theorem1_residual(m4, support::random_point(rng)) == 0.0);

  const auto mc = support::make_metric(kF3, "1");
  CHECK(theorem1_residual(mc, {0, 0}) == 1.0);  // f_y = 1, g_x = 0
}

TEST_CASE("theorem 1 equivalence: residual vanishes exactly when f_y = g_x") {
  std::mt19937_64 rng(61);
  int pairs = 0;
  while (pairs < 60) {
    std::string fs, gs;
    if (pairs % 2 == 0) {
      std::tie(fs, gs) = support::random_matched_pair(rng);
    } else {
      fs = support::random_positive_expr(rng);
      gs = support::random_positive_expr(rng);
    }
    const auto m = support::make_metric(fs, gs);
    const auto u = canonical_unit_field(m);
    bool used = false;
    for (int k = 0; k < 8; ++k) {
      const Point p = support::random_point(rng);
      try {
        const double D = std::abs(theorem1_residual(m, p));
        const double R = metric_norm(m, p, geodesic_residual(m, p, u));
        if (!std::isfinite(D) || !std::isfinite(R)) continue;
        const double f = m.f_value(p);
        const double g = m.g_value(p);
        INFO("f = " << fs << " g = " << gs);
        if (D <= 1e-12)
          CHECK(R <= 1e-9);
        else
          CHECK(R >= 1e-6 * D / (2.0 * f * g * g) * g);
        used = true;
      } catch (const DomainError&) {
      }
    }
    if (used) ++pairs;
  }
}

TEST_CASE("check_geodesic_field: positive, negative and trivial cases") {
  const auto m3 = support::make_metric(kF3, kG3);
  const auto rep = check_geodesic_field(m3, canonical_unit_field(m3),
                                        {-1, 1, -1, 1}, 21, 1e-9);
  CHECK(rep.pass);
  CHECK(rep.sup_residual <= 1e-9);
  CHECK(rep.sup_unit_defect <= 1e-12);

  // negative control: g = 1. Substituting the canonical field into the system
  // gives residual (D/(2f^2 g), -D/(2f g^2)) with D = f_y - g_x = e^{x+y},
  // whose twisted norm is D/(sqrt(2) f g); sup over the grid computed
  // independently below.
  const auto mc = support::make_metric(kF3, "1");
  const auto repc = check_geodesic_field(mc, canonical_unit_field(mc),
                                         {-1, 1, -1, 1}, 21, 1e-9);
  CHECK(!repc.pass);
  CHECK(repc.sup_residual > 0.1);
  double expect_sup = 0.0;
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j) {
      const double x = -1.0 + 2.0 * i / 20.0;
      const double y = -1.0 + 2.0 * j / 20.0;
      const double f = std::exp(x + y) + std::sin(x) * std::sin(x) + 1.0;
      const double D = std::exp(x + y);
      expect_sup = std::max(expect_sup, D / (std::numbers::sqrt2 * f));
    }
  CHECK(repc.sup_residual == doctest::Approx(expect_sup).epsilon(1e-10));
  // worst point sits where f_y - g_x is large
  CHECK(std::abs(theorem1_residual(mc, repc.worst_point)) > 0.3);

  const auto euclid = support::make_metric("1", "1");
  const auto repe = check_geodesic_field(euclid, VectorField::constant(1, 0),
                                         {-1, 1, -1, 1}, 5, 1e-12);
  CHECK(repe.pass);
  CHECK(repe.sup_residual == 0.0);

  CHECK_THROWS_AS(check_geodesic_field(euclid, VectorField::constant(1, 0),
                                       {-1, 1, -1, 1}, 1, 1e-9),
                  std::invalid_argument);

  const auto bad = support::make_metric("x", "1");
  try {
    check_geodesic_field(bad, VectorField::constant(1, 0), {-1, 1, -1, 1}, 5, 1e-9);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("grid point") != std::string::npos);
  }
}

TEST_CASE("total_geodesy_criterion: frozen examples") {
  // Theorem 3 example: flat and geodesic, so (0, 0, 0).
  const auto m4 = support::make_metric(kF4, kG4);
  const auto n4 = canonical_unit_field(m4);
  std::mt19937_64 rng(67);
  for (int i = 0; i < 50; ++i) {
    const auto tg = total_geodesy_criterion(m4, support::random_point(rng), n4);
    CHECK(tg.ric == 0.0);
    CHECK(std::abs(tg.div_term) <= 1e-12);
    CHECK(std::abs(tg.criterion) <= 1e-12);
  }

  const auto euclid = support::make_metric("1", "1");
  const auto tg0 = total_geodesy_criterion(euclid, {0, 0}, VectorField::constant(1, 0));
  CHECK(tg0.ric == 0.0);
  CHECK(tg0.div_term == 0.0);
  CHECK(tg0.criterion == 0.0);

  // f = 1, g = e^x, N = e^{-x} dy: nabla_N N = -dx, div(-dx) = -1, Ric = -1,
  // so the two terms cancel: a totally geodesic foliation with Ric != 0.
  const auto hyp = support::make_metric("1", "exp(x)");
  const auto n = VectorField::from_expressions(parse_expression("0"),
                                               parse_expression("exp(-x)"));
  for (int i = 0; i < 20; ++i) {
    const Point p = support::random_point(rng);
    const auto tg = total_geodesy_criterion(hyp, p, n);
    CHECK(tg.ric == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(tg.div_term == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(std::abs(tg.criterion) <= 1e-6);
  }

  CHECK_THROWS_AS(total_geodesy_criterion(euclid, {0, 0}, VectorField::constant(2, 0)),
                  DomainError);
}

TEST_CASE("total_geodesy_criterion: built-in and expression paths agree") {
  // same canonical field, once built-in and once spelled out as expressions
  const auto m4 = support::make_metric(kF4, kG4);
  const auto builtin = canonical_unit_field(m4);
  const auto expr = VectorField::from_expressions(
      parse_expression("1/(sqrt(2)*(exp(x)+1))"),
      parse_expression("1/(sqrt(2)*(sin(y)^2+1))"));
  CHECK(builtin.has_exact_jets());
  CHECK(!expr.has_exact_jets());
  std::mt19937_64 rng(71);
  for (int i = 0; i < 20; ++i) {
    const Point p = support::random_point(rng);
    const auto a = total_geodesy_criterion(m4, p, builtin);
    const auto b = total_geodesy_criterion(m4, p, expr);
    CHECK(std::abs(a.ric - b.ric) <= 1e-9);
    CHECK(std::abs(a.div_term - b.div_term) <= 1e-6);
    CHECK(std::abs(a.criterion - b.criterion) <= 1e-6);
  }
}

TEST_CASE("corollary 1 consistency: geodesic N makes criterion track Ric") {
  // For fields that pass the geodesic check, the divergence term vanishes and
  // criterion == ric up to 1e-6 on the grid.
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [fs, gs] = support::random_matched_pair(rng);
    const auto m = support::make_metric(fs, gs);
    const auto u = canonical_unit_field(m);
    const auto rep = check_geodesic_field(m, u, {-1, 1, -1, 1}, 9, 1e-9);
    if (!rep.pass) continue;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        const Point p{-1.0 + 2.0 * i / 8.0, -1.0 + 2.0 * j / 8.0};
        const auto tg = total_geodesy_criterion(m, p, u);
        CHECK(std::abs(tg.criterion - tg.ric) <= 1e-6);
      }
  }
}
