#include "ymgap/extremizer.hpp"

#include "ymgap/detail/parallel.hpp"
#include "ymgap/detail/seed.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace ymgap {

namespace {

constexpr std::uint64_t kGradientStream = 0xC0FFEEULL;

std::string gradient_message(double deviation, double tolerance) {
  std::ostringstream msg;
  msg << "analytic trilinear gradient disagrees with central differences: deviation " << deviation
      << " > " << tolerance;
  return msg.str();
}

double ratio_of(const TwoForm& w) {
  const double n = form_norm(w);
  return n == 0.0 ? 0.0 : std::abs(trilinear(w)) / (n * n * n);
}

TwoForm normalized(const TwoForm& w) { return w * (1.0 / form_norm(w)); }

struct RestartOutcome {
  std::optional<TwoForm> omega;
  double ratio = 0.0;
  int iterations = 0;
  double max_seen = 0.0;
  std::vector<TraceRow> trace;
};

RestartOutcome ascend(const AlgebraContext& ctx, Duality duality, const ExtremizerOptions& opt, int restart) {
  RestartOutcome out;
  TwoForm w = opt.initial ? normalized(project(*opt.initial, duality))
                          : normalized(random_form(ctx, detail::mix_seed(opt.seed, restart), duality));
  double ratio = ratio_of(w);
  out.max_seen = ratio;
  double step = 0.05;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(opt.max_iters) + 1);
  int iter = 0;
  for (; iter < opt.max_iters; ++iter) {
    const TwoForm g = projected_gradient(w, duality);
    const double gnorm = form_norm(g);
    if (opt.record_trace) out.trace.push_back({restart, iter, ratio, gnorm});
    history.push_back(ratio);
    if (gnorm <= opt.gradient_floor) break;
    if (iter >= opt.stall_window &&
        ratio - history[static_cast<std::size_t>(iter - opt.stall_window)] <= opt.improvement_floor)
      break;

    // Armijo backtracking along the tangent direction, retracted to the sphere
    step = std::min(2.0 * step, 1.0);
    bool accepted = false;
    while (step > 1e-14) {
      TwoForm candidate = normalized(project(w + step * g, duality));
      const double cand_ratio = ratio_of(candidate);
      out.max_seen = std::max(out.max_seen, cand_ratio);
      if (cand_ratio >= ratio + 1e-4 * step * gnorm * gnorm) {
        w = std::move(candidate);
        ratio = cand_ratio;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  out.omega = w;
  out.ratio = ratio;
  out.iterations = iter;
  return out;
}

}  // namespace

GradientValidationError::GradientValidationError(double deviation, double tolerance)
    : std::runtime_error(gradient_message(deviation, tolerance)), deviation_(deviation) {}

double gradient_check(const AlgebraContext& ctx, Duality duality, std::uint64_t seed, int points) {
  double worst = 0.0;
  for (int p = 0; p < points; ++p) {
    const TwoForm w = random_form(ctx, detail::mix_seed(seed, 2 * p), duality);
    const TwoForm dir = random_form(ctx, detail::mix_seed(seed, 2 * p + 1), Duality::None);
    const TwoForm grad = trilinear_gradient(w);
    const double eps = 1e-4 * form_norm(w) / form_norm(dir);
    const double fd = (trilinear(w + eps * dir) - trilinear(w - eps * dir)) / (2.0 * eps);
    const double analytic = form_inner(grad, dir);
    const double scale = form_norm(grad) * form_norm(dir);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(fd - analytic) / scale);
  }
  return worst;
}

TwoForm projected_gradient(const TwoForm& w, Duality duality) {
  const double t = trilinear(w);
  const double sign = t < 0.0 ? -1.0 : 1.0;
  const TwoForm g = project(trilinear_gradient(w), duality) * sign;
  return g - (form_inner(g, w) / form_norm_sq(w)) * w;
}

ExtremizerResult maximize_ratio(const AlgebraContext& ctx, Duality duality, const ExtremizerOptions& options) {
  if (duality == Duality::None)
    throw std::invalid_argument("the trilinear bound only holds on self-dual or anti-self-dual forms");
  if (options.restarts < 1 || options.max_iters < 1)
    throw std::invalid_argument("restarts and max_iters must be at least 1");

  const double deviation =
      gradient_check(ctx, duality, detail::mix_seed(options.seed, kGradientStream), options.gradient_checks);
  if (!(deviation <= options.gradient_tolerance)) throw GradientValidationError(deviation, options.gradient_tolerance);

  auto outcomes = detail::parallel_map(static_cast<std::size_t>(options.restarts), options.workers,
                                       [&](std::size_t k) { return ascend(ctx, duality, options, static_cast<int>(k)); });

  // ties go to the lowest restart index
  std::size_t best = 0;
  double max_seen = 0.0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (outcomes[k].ratio > outcomes[best].ratio) best = k;
    max_seen = std::max(max_seen, outcomes[k].max_seen);
  }

  const TwoForm& omega = *outcomes[best].omega;
  Classification classification = So3Basis{false};
  if (ctx.n() == 3) {
    classification = So3Basis{check_so3_basis(omega.at(1, 2), omega.at(1, 3), omega.at(1, 4),
                                              options.classification_tolerance)};
  } else {
    auto detected =
        detect_quaternion_triple(omega.at(1, 2), omega.at(1, 3), omega.at(1, 4), options.classification_tolerance);
    if (auto* q = std::get_if<QuatTriple>(&detected))
      classification = *q;
    else
      classification = std::get<NotEquivalent>(detected);
  }

  std::vector<TraceRow> trace;
  if (options.record_trace)
    for (auto& o : outcomes) trace.insert(trace.end(), o.trace.begin(), o.trace.end());

  const double best_ratio = outcomes[best].ratio;
  return ExtremizerResult{best_ratio,
                          omega,
                          outcomes[best].iterations,
                          options.restarts,
                          static_cast<int>(best),
                          std::move(classification),
                          best_ratio >= 0.5 * gamma(ctx),
                          max_seen,
                          std::move(trace)};
}

std::array<double, 6> component_norm_profile(const TwoForm& w) {
  std::array<double, 6> out{};
  for (int s = 0; s < TwoForm::kComponents; ++s) out[s] = norm(w.components()[s]);
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "restart,iter,ratio,grad_norm\n";
  out << std::setprecision(17);
  for (const auto& row : trace) out << row.restart << ',' << row.iter << ',' << row.ratio << ',' << row.grad_norm << '\n';
}

}  // namespace ymgap
