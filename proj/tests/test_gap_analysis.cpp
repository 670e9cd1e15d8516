#include "doctest.h"

#include "ymgap/gap_analysis.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace ymgap;
using std::numbers::pi;

namespace {

double instanton_density(double r, double c) { return 96.0 * c / std::pow(1.0 + r * r, 4); }

std::vector<double> radius_grid() {
  std::vector<double> r;
  for (int i = 0; i <= 12; ++i) r.push_back(0.25 * i);
  return r;
}

}  // namespace

TEST_CASE("sphere volumes") {
  const auto v = sphere_volumes();
  CHECK(v.s3 == doctest::Approx(2.0 * pi * pi));
  CHECK(v.s4 == doctest::Approx(8.0 * pi * pi / 3.0));
}

TEST_CASE("radial quadrature against Beta integrals") {
  // int_0^inf r^3 (1 + r^2)^-4 dr = B(2, 2) / 2 = 1/12 and int_0^inf r^3 (1 + r^2)^-3 dr = B(2, 1) / 2 = 1/4
  const double s3 = 2.0 * pi * pi;
  CHECK(ym_energy_radial([](double r) { return std::pow(1.0 + r * r, -4); }) ==
        doctest::Approx(s3 / 12.0).epsilon(1e-12));
  CHECK(ym_energy_radial([](double r) { return std::pow(1.0 + r * r, -3); }) ==
        doctest::Approx(s3 / 4.0).epsilon(1e-12));
  CHECK(ym_energy_radial([](double) { return 0.0; }) == 0.0);
}

TEST_CASE("instanton energy is 16 c pi^2") {
  for (double c : {0.5, 1.0, 2.0}) {
    const double e = ym_energy_radial([c](double r) { return instanton_density(r, c); });
    CHECK(std::abs(e - 16.0 * c * pi * pi) <= 1e-8 * 16.0 * c * pi * pi);
  }
}

TEST_CASE("divergent integrands raise AccuracyError") {
  RadialQuadratureOptions opts;
  opts.max_panels = 256;
  CHECK_THROWS_AS(ym_energy_radial([](double r) { return 1.0 / (1.0 + r * r * r * r); }, opts), AccuracyError);
  opts.tol = 0.0;
  CHECK_THROWS_AS(ym_energy_radial([](double) { return 1.0; }, opts), std::invalid_argument);
}

TEST_CASE("grid quadrature agrees with the radial value") {
  const AlgebraContext ctx(4);
  const double exact = 16.0 * pi * pi;
  GridQuadratureOptions opts;
  opts.decay_constant = basic_instanton_density_constant(ctx);
  CHECK(opts.decay_constant == doctest::Approx(96.0));
  const GridEnergy g = ym_energy_grid(basic_curvature_closed(ctx), 20.0, opts);
  CHECK(std::abs(g.value - exact) <= 1e-4 * exact);
  CHECK(g.tail_bound > 0.0);
  // the cube misses at most the exterior of the inscribed ball
  CHECK(exact - g.value >= 0.0);
  CHECK(exact - g.value <= g.tail_bound + 1e-8 * exact);
  CHECK_THROWS_AS(ym_energy_grid(basic_curvature_closed(ctx), -1.0, opts), std::invalid_argument);
}

TEST_CASE("grid quadrature is independent of the worker count") {
  const AlgebraContext ctx(4);
  GridQuadratureOptions one, three;
  one.decay_constant = three.decay_constant = 96.0;
  three.workers = 3;
  const auto f = basic_curvature_closed(ctx);
  CHECK(ym_energy_grid(f, 5.0, one).value == ym_energy_grid(f, 5.0, three).value);
}

TEST_CASE("Yamabe constants and the threshold") {
  const double expected = 12.0 * std::sqrt(8.0 * pi * pi / 3.0);
  CHECK(expected == doctest::Approx(8.0 * std::sqrt(6.0) * pi));
  for (auto s : {ModelSpace::Sphere4, ModelSpace::Euclidean4, ModelSpace::Cylinder3x1})
    CHECK(yamabe_constant(s) == doctest::Approx(expected));
  CHECK(corollary5_threshold(AlgebraContext(4, 1.0)) == doctest::Approx(4.0 * pi));
  CHECK(corollary5_threshold(AlgebraContext(6, 2.0)) == doctest::Approx(4.0 * pi * std::sqrt(2.0)));
  CHECK(corollary5_threshold(AlgebraContext(3, 1.0)) == doctest::Approx(4.0 * pi * std::sqrt(2.0)));
}

TEST_CASE("gap verdicts") {
  const AlgebraContext ctx(4);
  const double t = corollary5_threshold(ctx);
  const auto eq = theorem1_evaluate(4.0 * pi, 0.0, ctx, ModelSpace::Euclidean4);
  CHECK(eq.verdict == Verdict::EqualityCase);
  CHECK(eq.lhs == doctest::Approx(eq.yamabe));
  CHECK(std::abs(eq.margin) <= 1e-12 * eq.yamabe);
  CHECK(theorem1_evaluate(1.01 * t, 0.0, ctx, ModelSpace::Sphere4).verdict == Verdict::GapRespected);
  CHECK(theorem1_evaluate(0.99 * t, 0.0, ctx, ModelSpace::Sphere4).verdict == Verdict::BelowThreshold);
  CHECK(theorem1_evaluate(t, 0.5, ctx, ModelSpace::Sphere4).verdict == Verdict::GapRespected);
  const auto zero = theorem1_evaluate(0.0, 0.0, ctx, ModelSpace::Euclidean4);
  CHECK(zero.vanishing_f_plus);
  CHECK(zero.verdict == Verdict::BelowThreshold);
  CHECK_THROWS_AS(theorem1_evaluate(-1.0, 0.0, ctx, ModelSpace::Euclidean4), std::invalid_argument);
  CHECK_THROWS_AS(theorem1_evaluate(1.0, -1.0, ctx, ModelSpace::Euclidean4), std::invalid_argument);
}

TEST_CASE("the instanton verdict does not depend on c") {
  for (double c : {0.25, 0.5, 1.0, 2.0}) {
    const AlgebraContext ctx(4, c);
    const double e = ym_energy_radial([c](double r) { return instanton_density(r, c); });
    const auto rep = theorem1_evaluate(std::sqrt(e), 0.0, ctx, ModelSpace::Euclidean4);
    CHECK(rep.verdict == Verdict::EqualityCase);
    CHECK(std::abs(rep.f_plus_l2 - rep.threshold) <= 1e-6 * rep.threshold);
  }
}

TEST_CASE("report serialization") {
  const AlgebraContext ctx(4);
  const auto rep = theorem1_evaluate(4.0 * pi, 0.0, ctx, ModelSpace::Euclidean4);
  const auto j = to_json(rep);
  for (const char* key : {"gamma", "f_plus_l2", "w_plus_l2", "yamabe", "lhs", "threshold", "margin", "verdict",
                          "tolerances", "config"})
    CHECK(j.contains(key));
  CHECK(j["verdict"] == "EqualityCase");
  CHECK(j["config"]["N"] == 4);
  CHECK(j.dump() == to_json(rep).dump());
}

TEST_CASE("sqrt density profile") {
  const AlgebraContext ctx(4, 2.0);
  CHECK(basic_instanton_sqrt_density(0.0, ctx) == doctest::Approx(std::pow(192.0, 0.25)));
  CHECK(basic_instanton_sqrt_density(1.0, ctx) == doctest::Approx(std::pow(192.0, 0.25) / 2.0));
}

TEST_CASE("radial Laplacian of r^2 is 8 everywhere") {
  for (double r : {0.0, 0.5, 2.0}) CHECK(radial_laplacian([](double s) { return s * s; }, r, 1e-3) == doctest::Approx(8.0));
  CHECK_THROWS_AS(radial_laplacian([](double s) { return s; }, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("the Bochner equality residual converges at second order") {
  for (double c : {0.5, 1.0}) {
    const AlgebraContext ctx(4, c);
    for (double r : radius_grid()) {
      const double a = bochner_equality_residual(0.5, r, 1e-3, ctx);
      const double b = bochner_equality_residual(0.5, r, 5e-4, ctx);
      CHECK(a / b == doctest::Approx(4.0).epsilon(0.125));
    }
  }
}

TEST_CASE("the Bochner residual at the origin is 8 k h^2") {
  // f = k / (1 + r^2), k = (96c)^{1/4}: 8 (f(h) - f(0)) / h^2 = -8k + 8k h^2 + O(h^4)
  const AlgebraContext ctx(4);
  const double k = std::pow(96.0, 0.25);
  for (double h : {1e-3, 5e-4}) CHECK(bochner_equality_residual(0.5, 0.0, h, ctx) == doctest::Approx(8.0 * k * h * h).epsilon(1e-3));
}

TEST_CASE("Bochner inequality on hand samples") {
  const AlgebraContext ctx(4);
  const double g = gamma(ctx);
  const std::vector<BochnerSample> samples = {
      {0.0, 0.0, 0.0},                   // vanishing field: every term is zero
      {1.0, 0.0, 0.0},                   // only the cubic term
      {2.0, 1.0, 0.5, 0.0, 0.0},
      {1.0, 0.0, 0.0, 3.0, 0.0},         // positive scalar curvature raises the right side
      {1.0, 0.0, 0.0, 0.0, 1.0},
  };
  const auto m = lemma4_inequality_check(1.0, samples, ctx);
  CHECK(m[0] == 0.0);
  CHECK(m[1] == doctest::Approx(g));
  CHECK(m[2] == doctest::Approx(2.0 - 0.5 * 0.25 + 8.0 * g));
  CHECK(m[3] == doctest::Approx(-1.0 + g));
  CHECK(m[4] == doctest::Approx(2.0 * std::sqrt(2.0 / 3.0) + g));
  CHECK_THROWS_AS(lemma4_inequality_check(0.0, samples, ctx), std::invalid_argument);
}

TEST_CASE("the instanton is an equality case of the Bochner inequality for every p") {
  // margins vanish up to the O(h^2) stencil error, measured against p gamma |F|^{2p+1}
  const AlgebraContext ctx(4);
  const auto radii = radius_grid();
  for (double p : {0.5, 1.0, 2.0}) {
    const auto samples = instanton_bochner_samples(p, radii, 1e-3, ctx);
    const auto m1 = lemma4_inequality_check(p, samples, ctx);
    const auto m2 = lemma4_inequality_check(p, instanton_bochner_samples(p, radii, 5e-4, ctx), ctx);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      CHECK(std::abs(m1[i]) < 1e-4 * p * gamma(ctx) * std::pow(samples[i].f_norm, 2 * p + 1));
      CHECK(m1[i] / m2[i] == doctest::Approx(4.0).epsilon(0.125));
    }
  }
}
