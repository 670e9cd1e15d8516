#include "ymgap/cli.hpp"

#include "ymgap/detail/parallel.hpp"
#include "ymgap/detail/seed.hpp"
#include "ymgap/extremizer.hpp"
#include "ymgap/forms4d.hpp"
#include "ymgap/gap_analysis.hpp"
#include "ymgap/instanton.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

namespace ymgap::cli {

namespace {

using nlohmann::json;
using std::numbers::pi;

constexpr double kOrderLow = 3.5;
constexpr double kOrderHigh = 4.5;

class Checks {
 public:
  void require(const std::string& name, bool passed, json measured, json bound) {
    entries_.push_back({{"name", name}, {"passed", passed}, {"measured", std::move(measured)}, {"bound", std::move(bound)}});
    ok_ = ok_ && passed;
  }
  bool ok() const { return ok_; }
  const json& entries() const { return entries_; }

 private:
  json entries_ = json::array();
  bool ok_ = true;
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool order_two(double ratio) { return ratio >= kOrderLow && ratio <= kOrderHigh; }

json config_json(const RunConfig& cfg) {
  return {{"N", cfg.n},          {"c", cfg.c},
          {"seed", cfg.seed},    {"samples", cfg.samples},
          {"tol", cfg.tol},      {"h", cfg.grid_h},
          {"truncation_r", cfg.truncation_r}, {"restarts", cfg.restarts},
          {"max_iters", cfg.max_iters},       {"duality", cfg.duality}};
}

AlgebraContext make_context(const RunConfig& cfg) {
  try {
    return AlgebraContext(cfg.n, cfg.c);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void require_instanton_dimension(const RunConfig& cfg) {
  if (cfg.n < 4) throw UsageError("the basic instanton needs --n >= 4");
}

Duality parse_duality(const std::string& s) {
  if (s == "sd") return Duality::SelfDual;
  if (s == "asd") return Duality::AntiSelfDual;
  throw UsageError("--duality must be 'sd' or 'asd'");
}

std::vector<Point4> instanton_grid() {
  std::vector<Point4> pts;
  const double axis[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  for (double a : axis)
    for (double b : axis)
      for (double c : axis)
        for (double d : axis) pts.emplace_back(a, b, c, d);
  return pts;
}

// uniform in the ball |x| <= radius
std::vector<Point4> random_points(std::uint64_t seed, int count, double radius) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Point4> pts;
  for (int i = 0; i < count; ++i) {
    Point4 x(normal(rng), normal(rng), normal(rng), normal(rng));
    x *= radius * std::pow(uniform(rng), 0.25) / x.norm();
    pts.push_back(x);
  }
  return pts;
}

RunOutcome verify_instanton(const RunConfig& cfg) {
  require_instanton_dimension(cfg);
  const AlgebraContext ctx = make_context(cfg);
  const GaugeField a = basic_connection(ctx);
  const CurvatureField f = basic_curvature_closed(ctx);
  const double h = cfg.grid_h;

  struct GridPoint {
    double sd_norm = 0.0;
    double dev_h = 0.0;
    double dev_half = 0.0;
    double amp_error = 0.0;
    double residual = 0.0;
    bool equivalent = false;
  };
  const auto grid = instanton_grid();
  const auto per_point = detail::parallel_map(grid.size(), cfg.workers, [&](std::size_t i) {
    GridPoint out;
    const Point4& x = grid[i];
    const TwoForm fx = f.eval(x);
    out.sd_norm = form_norm(sd_part(fx));
    out.dev_h = max_entry_deviation(numeric_curvature(a, x, h), fx);
    out.dev_half = max_entry_deviation(numeric_curvature(a, x, 0.5 * h), fx);
    try {
      const QuatTriple t = pointwise_equality_structure(f, x, kDefaultEquivalenceTolerance);
      const double expected = basic_instanton_amplitude(x);
      for (double am : t.a) out.amp_error = std::max(out.amp_error, std::abs(std::abs(am) - expected));
      out.residual = t.residual;
      out.equivalent = true;
    } catch (const NotEquivalentError&) {
      out.equivalent = false;
    }
    return out;
  });

  double max_sd = 0.0, dev_h = 0.0, dev_half = 0.0, amp_error = 0.0, residual = 0.0;
  bool all_equivalent = true;
  for (const auto& p : per_point) {
    max_sd = std::max(max_sd, p.sd_norm);
    dev_h = std::max(dev_h, p.dev_h);
    dev_half = std::max(dev_half, p.dev_half);
    amp_error = std::max(amp_error, p.amp_error);
    residual = std::max(residual, p.residual);
    all_equivalent = all_equivalent && p.equivalent;
  }

  const auto ym_points = random_points(detail::mix_seed(cfg.seed, 1), 20, 5.0);
  const auto ym = detail::parallel_map(ym_points.size(), cfg.workers, [&](std::size_t i) {
    return std::array<double, 2>{yang_mills_residual(a, f, ym_points[i], h),
                                 yang_mills_residual(a, f, ym_points[i], 0.5 * h)};
  });
  double ym_h = 0.0, ym_half = 0.0;
  for (const auto& r : ym) {
    ym_h = std::max(ym_h, r[0]);
    ym_half = std::max(ym_half, r[1]);
  }

  Checks checks;
  checks.require("anti_self_dual_exact", max_sd == 0.0, max_sd, 0.0);
  checks.require("curvature_oracle_order", order_two(dev_h / dev_half), dev_h / dev_half, {kOrderLow, kOrderHigh});
  checks.require("yang_mills_residual", ym_h <= 1e-5, ym_h, 1e-5);
  checks.require("yang_mills_order", order_two(ym_h / ym_half), ym_h / ym_half, {kOrderLow, kOrderHigh});
  checks.require("equality_structure_equivalent", all_equivalent, all_equivalent, true);
  checks.require("equality_structure_amplitude", amp_error <= cfg.tol, amp_error, cfg.tol);

  json results = {{"grid_points", grid.size()},
                  {"max_sd_part_norm", max_sd},
                  {"curvature_max_deviation_h", dev_h},
                  {"curvature_max_deviation_half_h", dev_half},
                  {"yang_mills_points", ym_points.size()},
                  {"yang_mills_max_residual_h", ym_h},
                  {"yang_mills_max_residual_half_h", ym_half},
                  {"structure_max_amplitude_error", amp_error},
                  {"structure_max_residual", residual}};
  return {checks.ok() ? 0 : 1, {{"results", results}, {"checks", checks.entries()}}};
}

RunOutcome lemma3_sample(const RunConfig& cfg) {
  const AlgebraContext ctx = make_context(cfg);
  if (cfg.samples < 1) throw UsageError("--samples must be positive");
  const double g = gamma(ctx);

  struct Sample {
    double rel_margin = 0.0;
    double ratio = 0.0;
    double identity_error = 0.0;
  };
  json per_duality = json::object();
  Checks checks;
  const std::pair<Duality, const char*> kinds[] = {{Duality::SelfDual, "sd"}, {Duality::AntiSelfDual, "asd"}};
  for (std::size_t kind = 0; kind < 2; ++kind) {
    const auto [duality, label] = kinds[kind];
    const auto samples = detail::parallel_map(static_cast<std::size_t>(cfg.samples), cfg.workers, [&](std::size_t i) {
      const TwoForm w = random_form(ctx, detail::mix_seed(cfg.seed, 2 * i + kind), duality);
      const double nrm = form_norm(w);
      const double scale = g * nrm * nrm * nrm;
      Sample s;
      s.rel_margin = lemma3_margin(w) / scale;
      const double t = trilinear(w);
      s.ratio = std::abs(t) / (nrm * nrm * nrm);
      if (duality == Duality::SelfDual)
        s.identity_error = std::abs(t - 24.0 * inner(bracket(w.at(1, 2), w.at(2, 3)), w.at(3, 1))) / scale;
      return s;
    });
    double min_margin = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0, max_identity = 0.0, mean_ratio = 0.0;
    for (const auto& s : samples) {
      min_margin = std::min(min_margin, s.rel_margin);
      max_ratio = std::max(max_ratio, s.ratio);
      max_identity = std::max(max_identity, s.identity_error);
      mean_ratio += s.ratio;
    }
    mean_ratio /= static_cast<double>(samples.size());
    json stats = {{"min_relative_margin", min_margin}, {"max_ratio", max_ratio}, {"mean_ratio", mean_ratio}};
    checks.require(std::string("trilinear_margin_") + label, min_margin >= -1e-12, min_margin, -1e-12);
    if (duality == Duality::SelfDual) {
      stats["max_identity_error"] = max_identity;
      checks.require("trilinear_identity_sd", max_identity <= 1e-12, max_identity, 1e-12);
    }
    per_duality[label] = stats;
  }
  json results = {{"gamma", g}, {"samples", cfg.samples}, {"by_duality", per_duality}};
  return {checks.ok() ? 0 : 1, {{"results", results}, {"checks", checks.entries()}}};
}

json classification_json(const Classification& cls) {
  if (const auto* q = std::get_if<QuatTriple>(&cls))
    return {{"kind", "quaternion_triple"}, {"a", q->a}, {"residual", q->residual}};
  if (const auto* s = std::get_if<So3Basis>(&cls)) return {{"kind", "so3_basis"}, {"is_basis", s->is_basis}};
  const auto& ne = std::get<NotEquivalent>(cls);
  return {{"kind", "not_equivalent"}, {"failure", to_string(ne.failure)}, {"measured", ne.measured}};
}

RunOutcome extremize(const RunConfig& cfg) {
  const AlgebraContext ctx = make_context(cfg);
  const Duality duality = parse_duality(cfg.duality);
  ExtremizerOptions opt;
  opt.restarts = cfg.restarts;
  opt.max_iters = cfg.max_iters;
  opt.seed = cfg.seed;
  opt.workers = cfg.workers;
  opt.record_trace = cfg.trace_path.has_value();
  if (opt.restarts < 1 || opt.max_iters < 1) throw UsageError("--restarts and --max-iters must be positive");

  const ExtremizerResult res = maximize_ratio(ctx, duality, opt);
  if (cfg.trace_path) {
    std::ofstream trace(*cfg.trace_path);
    if (!trace) throw UsageError("cannot open trace file " + *cfg.trace_path);
    write_trace_csv(trace, res.trace);
  }

  const double g = gamma(ctx);
  const auto profile = component_norm_profile(res.omega);
  double profile_dev = 0.0;
  for (double v : profile) profile_dev = std::max(profile_dev, std::abs(v - 1.0 / std::sqrt(6.0)));

  Checks checks;
  checks.require("best_ratio_reaches_gamma", res.best_ratio >= g - 1e-3, res.best_ratio, g - 1e-3);
  checks.require("iterates_respect_bound", res.max_iterate_ratio <= g + 1e-10, res.max_iterate_ratio, g + 1e-10);
  if (ctx.n() >= 4) checks.require("equal_component_norms", profile_dev <= 1e-4, profile_dev, 1e-4);
  if (const auto* q = std::get_if<QuatTriple>(&res.classification)) {
    const auto [lo, hi] = std::minmax({std::abs(q->a[0]), std::abs(q->a[1]), std::abs(q->a[2])});
    checks.require("quaternion_triple_residual", q->residual <= 1e-4, q->residual, 1e-4);
    checks.require("equal_amplitudes", hi - lo <= 1e-4, hi - lo, 1e-4);
  } else if (const auto* s = std::get_if<So3Basis>(&res.classification)) {
    checks.require("so3_basis", s->is_basis, s->is_basis, true);
  } else {
    checks.require("quaternion_triple_detected", false, classification_json(res.classification), "quaternion_triple");
  }

  json results = {{"gamma", g},
                  {"best_ratio", res.best_ratio},
                  {"gap_to_gamma", g - res.best_ratio},
                  {"iterations", res.iterations},
                  {"restarts_used", res.restarts_used},
                  {"best_restart", res.best_restart},
                  {"converged", res.converged},
                  {"max_iterate_ratio", res.max_iterate_ratio},
                  {"component_norms", profile},
                  {"classification", classification_json(res.classification)}};
  return {checks.ok() ? 0 : 1, {{"results", results}, {"checks", checks.entries()}}};
}

RunOutcome energy(const RunConfig& cfg) {
  require_instanton_dimension(cfg);
  const AlgebraContext ctx = make_context(cfg);
  if (!(cfg.truncation_r > 0.0)) throw UsageError("--truncation-r must be positive");
  const double k = basic_instanton_density_constant(ctx);
  const double radial = ym_energy_radial([k](double r) {
    const double s = 1.0 + r * r;
    return k / (s * s * s * s);
  });
  GridQuadratureOptions gopt;
  gopt.decay_constant = k;
  gopt.workers = cfg.workers;
  const GridEnergy grid = ym_energy_grid(basic_curvature_closed(ctx), cfg.truncation_r, gopt);
  const double exact = 16.0 * ctx.c() * pi * pi;
  const double l2 = std::sqrt(radial);
  const double threshold = corollary5_threshold(ctx);

  Checks checks;
  checks.require("radial_energy", rel_diff(radial, exact) <= 1e-8, rel_diff(radial, exact), 1e-8);
  checks.require("grid_vs_radial", rel_diff(grid.value, radial) <= 1e-4, rel_diff(grid.value, radial), 1e-4);
  checks.require("grid_tail_consistent", radial - grid.value <= grid.tail_bound + 1e-8 * radial,
                 radial - grid.value, grid.tail_bound + 1e-8 * radial);
  checks.require("l2_norm_vs_threshold", rel_diff(l2, threshold) <= cfg.tol, rel_diff(l2, threshold), cfg.tol);

  json results = {{"radial_energy", radial},     {"exact_energy", exact},
                  {"grid_energy", grid.value},   {"grid_tail_bound", grid.tail_bound},
                  {"grid_nodes_per_axis", grid.nodes_per_axis},
                  {"l2_norm", l2},               {"corollary5_threshold", threshold}};
  return {checks.ok() ? 0 : 1, {{"results", results}, {"checks", checks.entries()}}};
}

RunOutcome bochner(const RunConfig& cfg) {
  const AlgebraContext ctx = make_context(cfg);
  const double h = cfg.grid_h;
  std::vector<double> radii;
  for (int i = 0; i <= 12; ++i) radii.push_back(0.25 * i);
  const auto margins_p1 = lemma4_inequality_check(1.0, instanton_bochner_samples(1.0, radii, h, ctx), ctx);
  const auto margins_p1_half = lemma4_inequality_check(1.0, instanton_bochner_samples(1.0, radii, 0.5 * h, ctx), ctx);

  Checks checks;
  json rows = json::array();
  double max_residual = 0.0, min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double res_h = bochner_equality_residual(0.5, r, h, ctx);
    const double res_half = bochner_equality_residual(0.5, r, 0.5 * h, ctx);
    const double order = res_h / res_half;
    const double margin_order = margins_p1[i] / margins_p1_half[i];
    max_residual = std::max(max_residual, std::abs(res_h));
    min_margin = std::min(min_margin, margins_p1[i]);
    rows.push_back({{"r", r},
                    {"residual_h", res_h},
                    {"residual_half_h", res_half},
                    {"residual_order_ratio", order},
                    {"bochner_margin_p1_h", margins_p1[i]},
                    {"bochner_margin_p1_half_h", margins_p1_half[i]},
                    {"bochner_margin_order_ratio", margin_order}});
    checks.require("residual_order_r=" + std::to_string(r), order_two(order), order, {kOrderLow, kOrderHigh});
    checks.require("bochner_margin_order_r=" + std::to_string(r), order_two(margin_order), margin_order,
                   {kOrderLow, kOrderHigh});
  }
  json results = {{"table", rows}, {"max_abs_residual_h", max_residual}, {"min_bochner_margin_p1_h", min_margin}};
  return {checks.ok() ? 0 : 1, {{"results", results}, {"checks", checks.entries()}}};
}

RunOutcome gap_report(const RunConfig& cfg) {
  require_instanton_dimension(cfg);
  const AlgebraContext ctx = make_context(cfg);
  const double k = basic_instanton_density_constant(ctx);
  const double energy = ym_energy_radial([k](double r) {
    const double s = 1.0 + r * r;
    return k / (s * s * s * s);
  });
  // F is anti-self-dual, so F- = F carries the whole energy and W = 0 on R^4
  GapReport report = theorem1_evaluate(std::sqrt(energy), 0.0, ctx, ModelSpace::Euclidean4);
  report.seed = cfg.seed;
  report.h = cfg.grid_h;

  Checks checks;
  checks.require("l2_norm_equals_threshold", rel_diff(report.f_plus_l2, report.threshold) <= cfg.tol,
                 rel_diff(report.f_plus_l2, report.threshold), cfg.tol);
  checks.require("lhs_equals_yamabe", rel_diff(report.lhs, report.yamabe) <= cfg.tol,
                 rel_diff(report.lhs, report.yamabe), cfg.tol);
  checks.require("verdict_equality_case", report.verdict == Verdict::EqualityCase, to_string(report.verdict),
                 to_string(Verdict::EqualityCase));

  json doc = to_json(report);
  doc["checks"] = checks.entries();
  return {checks.ok() ? 0 : 1, doc};
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"verify-instanton", "lemma3-sample", "extremize",
                                                 "energy",           "bochner",       "gap-report"};
  return names;
}

RunOutcome run(const std::string& subcommand, const RunConfig& config) {
  if (config.workers < 1) throw UsageError("--workers must be positive");
  RunOutcome outcome{0, {}};
  if (subcommand == "verify-instanton")
    outcome = verify_instanton(config);
  else if (subcommand == "lemma3-sample")
    outcome = lemma3_sample(config);
  else if (subcommand == "extremize")
    outcome = extremize(config);
  else if (subcommand == "energy")
    outcome = energy(config);
  else if (subcommand == "bochner")
    outcome = bochner(config);
  else if (subcommand == "gap-report")
    outcome = gap_report(config);
  else
    throw UsageError("unknown subcommand '" + subcommand + "'");

  outcome.report["schema_version"] = kSchemaVersion;
  outcome.report["subcommand"] = subcommand;
  if (!outcome.report.contains("config")) outcome.report["config"] = config_json(config);
  outcome.report["passed"] = outcome.exit_code == 0;
  return outcome;
}

std::string render(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace ymgap::cli
