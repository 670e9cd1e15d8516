#pragma once

#include "ymgap/instanton.hpp"
#include "ymgap/lie_algebra.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ymgap {

struct SphereVolumes {
  double s3;  // 2 pi^2
  double s4;  // 8 pi^2 / 3
};

SphereVolumes sphere_volumes();

/// Quadrature did not reach the requested tolerance within its budget.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double last, double previous);
  double last() const { return last_; }
  double previous() const { return previous_; }

 private:
  double last_;
  double previous_;
};

struct RadialQuadratureOptions {
  double tol = 1e-12;    // relative change between successive panel doublings
  int max_panels = 4096;
};

/// vol(S^3) * int_0^inf g(r) r^3 dr, computed with r = tan(theta) and composite
/// 20-point Gauss-Legendre panels on [0, pi/2), doubling until converged.
double ym_energy_radial(const std::function<double(double)>& g, const RadialQuadratureOptions& options = {});

struct GridQuadratureOptions {
  double tol = 1e-7;     // relative change between successive rule refinements
  int max_level = 7;     // per-axis rules: 15, 20, 25, 30 nodes, then 2, 3, 4 panels of 30
  // Envelope |F|^2 <= decay_constant |x|^{-decay_power} outside the box, used for
  // the reported tail bound. decay_power must exceed 4.
  double decay_constant = 0.0;
  double decay_power = 8.0;
  int workers = 1;
};

struct GridEnergy {
  double value;       // integral of |F|^2 over [-R, R]^4
  double tail_bound;  // bound on the integral outside the box
  int nodes_per_axis;
};

/// Tensor-product quadrature of form_norm_sq(F(x)) over [-R, R]^4 with the
/// per-axis substitution x = tan(t).
GridEnergy ym_energy_grid(const CurvatureField& f, double truncation_r, const GridQuadratureOptions& options = {});

/// |F|^2 envelope constant 96 c of the basic instanton.
double basic_instanton_density_constant(const AlgebraContext& ctx);

enum class ModelSpace { Sphere4, Euclidean4, Cylinder3x1 };

std::string to_string(ModelSpace space);

/// 12 vol(S^4)^{1/2}, shared by the three model spaces.
double yamabe_constant(ModelSpace space);

/// 4 vol(S^4)^{1/2} / gamma.
double corollary5_threshold(const AlgebraContext& ctx);

enum class Verdict { GapRespected, EqualityCase, BelowThreshold };

std::string to_string(Verdict verdict);

inline constexpr double kEqualityTolerance = 1e-6;

struct GapReport {
  double gamma = 0.0;
  double f_plus_l2 = 0.0;
  double w_plus_l2 = 0.0;
  double yamabe = 0.0;
  double lhs = 0.0;        // 3 gamma |F+| + 2 sqrt(6) |W+|
  double threshold = 0.0;  // 4 vol(S^4)^{1/2} / gamma
  double margin = 0.0;     // lhs - yamabe
  Verdict verdict = Verdict::GapRespected;
  bool vanishing_f_plus = false;  // |F+| = 0: the gap statement has no content
  double equality_tolerance = kEqualityTolerance;

  // run configuration echoed into the serialized report
  int n = 4;
  double c = 1.0;
  std::uint64_t seed = 0;
  double h = 1e-3;
};

/// Fills a GapReport for the pair (|F+|_{L2}, |W+|_{L2}). Throws on negative input.
GapReport theorem1_evaluate(double f_plus_l2, double w_plus_l2, const AlgebraContext& ctx, ModelSpace space);

nlohmann::json to_json(const GapReport& report);

/// Radial profile f = |F|^{1/2} of the basic instanton: (96c)^{1/4} / (1 + r^2).
double basic_instanton_sqrt_density(double r, const AlgebraContext& ctx);

/// Radial Laplacian u'' + 3u'/r on R^4 by central differences; at r = 0 the
/// even extension gives 4u''(0) = 8 (u(h) - u(0)) / h^2.
double radial_laplacian(const std::function<double(double)>& u, double r, double h);

/// Delta f + (gamma/2) f^3 at radius r for the basic instanton profile u = |F|^p,
/// written as [u Delta u - (1 - 1/(2p)) |u'|^2 + p gamma |F|^{2p+1}] / u, which is
/// Delta f + (gamma/2) f^3 at p = 1/2.
double bochner_equality_residual(double p, double r, double h, const AlgebraContext& ctx);

/// One point of scalar data for the Bochner inequality.
struct BochnerSample {
  double f_norm;          // |F+|
  double laplacian_pow;   // Delta |F+|^p
  double gradient_pow;    // |grad |F+|^p|
  double scalar_curvature = 0.0;
  double weyl_plus_norm = 0.0;
};

/// LHS - RHS of
/// |F|^p Delta|F|^p >= (1 - 1/(2p)) |grad|F|^p|^2 + (p/3) S |F|^{2p}
///                     - 2p sqrt(2/3) |W+| |F|^{2p} - p gamma |F|^{2p+1}
/// per sample. Throws for p <= 0.
std::vector<double> lemma4_inequality_check(double p, std::span<const BochnerSample> samples,
                                            const AlgebraContext& ctx);

/// Samples of the basic instanton (flat space: S = 0, W+ = 0) at the given
/// radii, derivatives of |F|^p taken by central differences of step h.
std::vector<BochnerSample> instanton_bochner_samples(double p, std::span<const double> radii, double h,
                                                     const AlgebraContext& ctx);

}  // namespace ymgap
