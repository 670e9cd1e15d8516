#include "ymgap/gap_analysis.hpp"

#include "ymgap/detail/parallel.hpp"
#include "ymgap/forms4d.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace ymgap {

namespace {

using std::numbers::pi;

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

template <unsigned Points>
Rule1d gauss_rule() {
  using Gauss = boost::math::quadrature::gauss<double, Points>;
  const auto& x = Gauss::abscissa();
  const auto& w = Gauss::weights();
  Rule1d rule;
  // boost stores the non-negative half; an odd rule starts with the node 0
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == 0.0) continue;
    rule.nodes.push_back(-x[i]);
    rule.weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes.push_back(x[i]);
    rule.weights.push_back(w[i]);
  }
  return rule;
}

Rule1d reference_rule(int level) {
  switch (level) {
    case 0: return gauss_rule<15>();
    case 1: return gauss_rule<20>();
    case 2: return gauss_rule<25>();
    default: return gauss_rule<30>();
  }
}

// Per-axis rule on [-R, R] after x = tan(t), t in [-atan R, atan R].
Rule1d axis_rule(int level, double r) {
  const int panels = level <= 3 ? 1 : level - 2;
  const Rule1d ref = reference_rule(level);
  const double half_span = std::atan(r);
  const double width = 2.0 * half_span / panels;
  Rule1d rule;
  for (int p = 0; p < panels; ++p) {
    const double lo = -half_span + p * width;
    for (std::size_t q = 0; q < ref.nodes.size(); ++q) {
      const double t = lo + 0.5 * width * (ref.nodes[q] + 1.0);
      const double sec = 1.0 / std::cos(t);
      rule.nodes.push_back(std::tan(t));
      rule.weights.push_back(0.5 * width * ref.weights[q] * sec * sec);
    }
  }
  return rule;
}

double grid_sum(const CurvatureField& f, const Rule1d& rule, int workers) {
  const std::size_t m = rule.nodes.size();
  const auto slabs = detail::parallel_map(m, workers, [&](std::size_t a) {
    double slab = 0.0;
    Point4 x;
    x[0] = rule.nodes[a];
    for (std::size_t b = 0; b < m; ++b) {
      x[1] = rule.nodes[b];
      double row = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        x[2] = rule.nodes[c];
        double line = 0.0;
        for (std::size_t d = 0; d < m; ++d) {
          x[3] = rule.nodes[d];
          line += rule.weights[d] * form_norm_sq(f.eval(x));
        }
        row += rule.weights[c] * line;
      }
      slab += rule.weights[b] * row;
    }
    return rule.weights[a] * slab;
  });
  double total = 0.0;
  for (double s : slabs) total += s;
  return total;
}

std::string accuracy_message(const char* what, double last, double previous) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " did not converge: last " << last << ", previous " << previous;
  return msg.str();
}

}  // namespace

SphereVolumes sphere_volumes() { return {2.0 * pi * pi, 8.0 * pi * pi / 3.0}; }

AccuracyError::AccuracyError(const std::string& what, double last, double previous)
    : std::runtime_error(what), last_(last), previous_(previous) {}

double ym_energy_radial(const std::function<double(double)>& g, const RadialQuadratureOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  auto integrand = [&](double theta) {
    const double r = std::tan(theta);
    const double sec = 1.0 / std::cos(theta);
    return g(r) * r * r * r * sec * sec;
  };
  auto composite = [&](int panels) {
    const double width = 0.5 * pi / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) sum += Gauss::integrate(integrand, p * width, (p + 1) * width);
    return sum;
  };
  const double vol_s3 = sphere_volumes().s3;
  double previous = composite(1);
  double current = previous;
  for (int panels = 2; panels <= options.max_panels; panels *= 2) {
    previous = current;
    current = composite(panels);
    if (std::abs(current - previous) <= options.tol * std::abs(current)) return vol_s3 * current;
  }
  throw AccuracyError(accuracy_message("radial energy quadrature", vol_s3 * current, vol_s3 * previous),
                      vol_s3 * current, vol_s3 * previous);
}

GridEnergy ym_energy_grid(const CurvatureField& f, double truncation_r, const GridQuadratureOptions& options) {
  if (!(truncation_r > 0.0)) throw std::invalid_argument("truncation radius must be positive");
  if (!(options.decay_power > 4.0)) throw std::invalid_argument("tail envelope must decay faster than |x|^-4");
  double previous = 0.0;
  double current = grid_sum(f, axis_rule(0, truncation_r), options.workers);
  for (int level = 1; level <= options.max_level; ++level) {
    const Rule1d rule = axis_rule(level, truncation_r);
    previous = current;
    current = grid_sum(f, rule, options.workers);
    if (std::abs(current - previous) <= options.tol * std::abs(current)) {
      // outside the box lies outside the ball of radius R:
      // vol(S^3) K int_R^inf r^{3 - p} dr = vol(S^3) K R^{4 - p} / (p - 4)
      const double p = options.decay_power;
      const double tail = sphere_volumes().s3 * options.decay_constant * std::pow(truncation_r, 4.0 - p) / (p - 4.0);
      return {current, tail, static_cast<int>(rule.nodes.size())};
    }
  }
  throw AccuracyError(accuracy_message("grid energy quadrature", current, previous), current, previous);
}

double basic_instanton_density_constant(const AlgebraContext& ctx) { return 96.0 * ctx.c(); }

std::string to_string(ModelSpace space) {
  switch (space) {
    case ModelSpace::Sphere4: return "S4";
    case ModelSpace::Euclidean4: return "R4";
    case ModelSpace::Cylinder3x1: return "S3xR";
  }
  return "unknown";
}

double yamabe_constant([[maybe_unused]] ModelSpace space) {
  // S^4 and R^4 (Aubin, Talenti) and S^3 x R (Ammann-Dahl-Humbert) share the value.
  return 12.0 * std::sqrt(sphere_volumes().s4);
}

double corollary5_threshold(const AlgebraContext& ctx) { return 4.0 * std::sqrt(sphere_volumes().s4) / gamma(ctx); }

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::GapRespected: return "GapRespected";
    case Verdict::EqualityCase: return "EqualityCase";
    case Verdict::BelowThreshold: return "BelowThreshold";
  }
  return "unknown";
}

GapReport theorem1_evaluate(double f_plus_l2, double w_plus_l2, const AlgebraContext& ctx, ModelSpace space) {
  if (!(f_plus_l2 >= 0.0) || !(w_plus_l2 >= 0.0))
    throw std::invalid_argument("L2 norms must be non-negative");
  GapReport report;
  report.gamma = gamma(ctx);
  report.f_plus_l2 = f_plus_l2;
  report.w_plus_l2 = w_plus_l2;
  report.yamabe = yamabe_constant(space);
  report.lhs = 3.0 * report.gamma * f_plus_l2 + 2.0 * std::sqrt(6.0) * w_plus_l2;
  report.threshold = corollary5_threshold(ctx);
  report.margin = report.lhs - report.yamabe;
  report.vanishing_f_plus = f_plus_l2 == 0.0;
  report.n = ctx.n();
  report.c = ctx.c();

  const double band = report.equality_tolerance * report.yamabe;
  if (!report.vanishing_f_plus && w_plus_l2 == 0.0 && std::abs(report.margin) <= band)
    report.verdict = Verdict::EqualityCase;
  else if (report.margin < -band)
    report.verdict = Verdict::BelowThreshold;
  else
    report.verdict = Verdict::GapRespected;
  return report;
}

nlohmann::json to_json(const GapReport& report) {
  nlohmann::json j;
  j["gamma"] = report.gamma;
  j["f_plus_l2"] = report.f_plus_l2;
  j["w_plus_l2"] = report.w_plus_l2;
  j["yamabe"] = report.yamabe;
  j["lhs"] = report.lhs;
  j["threshold"] = report.threshold;
  j["margin"] = report.margin;
  j["verdict"] = to_string(report.verdict);
  j["vanishing_f_plus"] = report.vanishing_f_plus;
  j["tolerances"] = {{"equality_relative", report.equality_tolerance}};
  j["config"] = {{"N", report.n}, {"c", report.c}, {"seed", report.seed}, {"h", report.h}};
  return j;
}

double basic_instanton_sqrt_density(double r, const AlgebraContext& ctx) {
  return std::pow(96.0 * ctx.c(), 0.25) / (1.0 + r * r);
}

double radial_laplacian(const std::function<double(double)>& u, double r, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  if (r < 0.0) throw std::invalid_argument("radius must be non-negative");
  if (r == 0.0) return 8.0 * (u(h) - u(0.0)) / (h * h);
  const double second = (u(r + h) - 2.0 * u(r) + u(r - h)) / (h * h);
  const double first = (u(r + h) - u(r - h)) / (2.0 * h);
  return second + 3.0 * first / r;
}

namespace {

double instanton_density(double r, const AlgebraContext& ctx) {
  const double s = 1.0 + r * r;
  return std::sqrt(96.0 * ctx.c()) / (s * s);
}

// u(r) = |F|(|r|)^p; even in r so the stencil may step through the origin
BochnerSample instanton_sample(double p, double r, double h, const AlgebraContext& ctx) {
  auto u = [&](double s) { return std::pow(instanton_density(std::abs(s), ctx), p); };
  BochnerSample sample{};
  sample.f_norm = instanton_density(r, ctx);
  sample.laplacian_pow = radial_laplacian(u, r, h);
  sample.gradient_pow = r == 0.0 ? 0.0 : std::abs(u(r + h) - u(r - h)) / (2.0 * h);
  return sample;
}

}  // namespace

double bochner_equality_residual(double p, double r, double h, const AlgebraContext& ctx) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be positive");
  const BochnerSample s = instanton_sample(p, r, h, ctx);
  const double u = std::pow(s.f_norm, p);
  const double numerator = u * s.laplacian_pow - (1.0 - 1.0 / (2.0 * p)) * s.gradient_pow * s.gradient_pow +
                           p * gamma(ctx) * std::pow(s.f_norm, 2.0 * p + 1.0);
  return numerator / u;
}

std::vector<double> lemma4_inequality_check(double p, std::span<const BochnerSample> samples,
                                            const AlgebraContext& ctx) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be positive");
  const double g = gamma(ctx);
  std::vector<double> margins;
  margins.reserve(samples.size());
  for (const auto& s : samples) {
    const double fp = std::pow(s.f_norm, p);
    const double f2p = fp * fp;
    const double lhs = fp * s.laplacian_pow;
    const double rhs = (1.0 - 1.0 / (2.0 * p)) * s.gradient_pow * s.gradient_pow +
                       (p / 3.0) * s.scalar_curvature * f2p - 2.0 * p * std::sqrt(2.0 / 3.0) * s.weyl_plus_norm * f2p -
                       p * g * f2p * s.f_norm;
    margins.push_back(lhs - rhs);
  }
  return margins;
}

std::vector<BochnerSample> instanton_bochner_samples(double p, std::span<const double> radii, double h,
                                                     const AlgebraContext& ctx) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be positive");
  std::vector<BochnerSample> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(instanton_sample(p, r, h, ctx));
  return out;
}

}  // namespace ymgap
