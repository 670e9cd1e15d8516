// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "ymgap/cli.hpp"
#include "ymgap/detail/parallel.hpp"
#include "ymgap/detail/seed.hpp"
#include "ymgap/extremizer.hpp"
#include "ymgap/gap_analysis.hpp"
#include "ymgap/instanton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace ymgap;
using std::numbers::pi;

namespace {

constexpr double kOrderLow = 3.5;
constexpr double kOrderHigh = 4.5;

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

bool order_two(double ratio) { return ratio >= kOrderLow && ratio <= kOrderHigh; }

struct Outcome {
  bool passed;
  std::string detail;
};

class Detail {
 public:
  Detail& add(const std::string& what, double value) {
    std::ostringstream s;
    s.precision(3);
    s << (text_.empty() ? "" : "; ") << what << "=" << value;
    text_ += s.str();
    return *this;
  }
  Detail& note(const std::string& what) {
    text_ += (text_.empty() ? "" : "; ") + what;
    return *this;
  }
  std::string str() const { return text_; }

 private:
  std::string text_;
};

std::vector<Point4> grid_points() {
  std::vector<Point4> pts;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) pts.emplace_back(a, b, c, d);
  return pts;
}

std::vector<Point4> random_points(std::uint64_t seed, int count, double box) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<Point4> pts;
  for (int i = 0; i < count; ++i) pts.emplace_back(u(rng), u(rng), u(rng), u(rng));
  return pts;
}

// 1. numeric curvature against the closed form on the 5^4 grid
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const AlgebraContext ctx(4);
  const auto a = basic_connection(ctx);
  const auto f = basic_curvature_closed(ctx);
  double dev_h = 0.0, dev_half = 0.0;
  for (const auto& x : grid_points()) {
    const TwoForm fx = f.eval(x);
    dev_h = std::max(dev_h, max_entry_deviation(numeric_curvature(a, x, 1e-3), fx));
    dev_half = std::max(dev_half, max_entry_deviation(numeric_curvature(a, x, 5e-4), fx));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double ratio = dev_h / dev_half;
  const bool ok = dev_h <= 1e-6 && order_two(ratio) && secs < 10.0;
  return {ok, Detail().add("max_dev(h=1e-3)", dev_h).add("bound", 1e-6).add("ratio", ratio).add("seconds", secs).str()};
}

// 2. exact anti-self-duality and the Yang-Mills residual
Outcome criterion2() {
  const AlgebraContext ctx(4);
  const auto a = basic_connection(ctx);
  const auto f = basic_curvature_closed(ctx);
  double sd = 0.0;
  for (const auto& x : grid_points()) sd = std::max(sd, form_norm(sd_part(f.eval(x))));
  for (const auto& x : random_points(101, 1000, 5.0)) sd = std::max(sd, form_norm(sd_part(f.eval(x))));
  double r_h = 0.0, r_half = 0.0;
  for (const auto& x : random_points(202, 20, 2.0)) {
    r_h = std::max(r_h, yang_mills_residual(a, f, x, 1e-3));
    r_half = std::max(r_half, yang_mills_residual(a, f, x, 5e-4));
  }
  const bool ok = sd == 0.0 && r_h <= 1e-5 && order_two(r_h / r_half);
  return {ok, Detail().add("max|sd_part|", sd).add("max_ym_residual", r_h).add("ratio", r_h / r_half).str()};
}

// 3. trilinear bound and the self-dual identity on random forms
Outcome criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::size_t kSamples = 100000;
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_identity = 0.0;
  std::uint64_t stream = 0;
  for (int n : {3, 4, 6}) {
    for (double c : {0.5, 1.0}) {
      const AlgebraContext ctx(n, c);
      const double g = gamma(ctx);
      for (auto d : {Duality::SelfDual, Duality::AntiSelfDual}) {
        const std::uint64_t base = detail::mix_seed(3, stream++);
        const auto res = detail::parallel_map(kSamples, workers(), [&](std::size_t i) {
          const TwoForm w = random_form(ctx, detail::mix_seed(base, i), d);
          const double scale = g * std::pow(form_norm(w), 3);
          double identity = 0.0;
          if (d == Duality::SelfDual)
            identity = std::abs(trilinear(w) - 24.0 * inner(bracket(w.at(1, 2), w.at(2, 3)), w.at(3, 1))) / scale;
          return std::array<double, 2>{lemma3_margin(w) / scale, identity};
        });
        for (const auto& r : res) {
          worst_margin = std::min(worst_margin, r[0]);
          worst_identity = std::max(worst_identity, r[1]);
        }
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = worst_margin >= -1e-12 && worst_identity <= 1e-12 && secs < 60.0;
  return {ok, Detail()
                  .add("min_margin/(gamma|w|^3)", worst_margin)
                  .add("max_identity_error", worst_identity)
                  .add("seconds", secs)
                  .str()};
}

// 4. the optimizer reaches gamma and its maximizers have the quaternion structure
Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_gap = 0.0, worst_excess = -1.0, worst_residual = 0.0, worst_profile = 0.0;
  Detail detail;
  for (int n : {3, 4, 5, 7}) {
    for (auto d : {Duality::SelfDual, Duality::AntiSelfDual}) {
      const AlgebraContext ctx(n, 1.0);
      ExtremizerOptions opt;
      opt.restarts = 20;
      opt.max_iters = 5000;
      opt.workers = workers();
      const auto res = maximize_ratio(ctx, d, opt);
      const double g = gamma(ctx);
      worst_gap = std::max(worst_gap, g - res.best_ratio);
      worst_excess = std::max(worst_excess, res.max_iterate_ratio - g);
      bool structured = false;
      if (n == 3) {
        const auto* s = std::get_if<So3Basis>(&res.classification);
        structured = s && s->is_basis;
      } else if (const auto* q = std::get_if<QuatTriple>(&res.classification)) {
        double profile = 0.0;
        for (double v : component_norm_profile(res.omega)) profile = std::max(profile, std::abs(v - 1.0 / std::sqrt(6.0)));
        worst_residual = std::max(worst_residual, q->residual);
        worst_profile = std::max(worst_profile, profile);
        structured = q->residual <= 1e-4 && profile <= 1e-4;
      }
      const bool this_ok = res.best_ratio >= g - 1e-3 && res.max_iterate_ratio <= g + 1e-10 && structured;
      if (!this_ok) detail.note("failed N=" + std::to_string(n) + (d == Duality::SelfDual ? " SD" : " ASD"));
      ok = ok && this_ok;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 300.0;
  detail.add("max(gamma-best)", worst_gap)
      .add("max(iterate-gamma)", worst_excess)
      .add("max_residual", worst_residual)
      .add("max_profile_dev", worst_profile)
      .add("seconds", secs);
  return {ok, detail.str()};
}

// 5. energy, threshold and Yamabe equality chain
Outcome criterion5() {
  const AlgebraContext ctx(4, 1.0);
  const double exact = 16.0 * pi * pi;
  const auto density = [](double c) {
    return [c](double r) { return 96.0 * c / std::pow(1.0 + r * r, 4); };
  };
  const double radial = ym_energy_radial(density(1.0));
  GridQuadratureOptions gopt;
  gopt.decay_constant = basic_instanton_density_constant(ctx);
  gopt.workers = workers();
  const GridEnergy grid = ym_energy_grid(basic_curvature_closed(ctx), 20.0, gopt);
  const double l2 = std::sqrt(radial);
  const double threshold = corollary5_threshold(ctx);
  const double yamabe = yamabe_constant(ModelSpace::Euclidean4);
  const double rel_radial = std::abs(radial - exact) / exact;
  const double rel_grid = std::abs(grid.value - radial) / radial;
  const bool tail_ok = radial - grid.value <= grid.tail_bound + 1e-8 * radial;
  const double rel_l2 = std::max(std::abs(l2 - 4.0 * pi), std::abs(threshold - 4.0 * pi)) / (4.0 * pi);
  const double rel_yamabe = std::max(std::abs(3.0 * gamma(ctx) * l2 - yamabe),
                                     std::abs(yamabe - 12.0 * std::sqrt(sphere_volumes().s4))) / yamabe;
  bool verdicts = true;
  for (double c : {0.25, 0.5, 1.0, 2.0}) {
    const AlgebraContext cc(4, c);
    verdicts = verdicts && theorem1_evaluate(std::sqrt(ym_energy_radial(density(c))), 0.0, cc, ModelSpace::Euclidean4)
                                   .verdict == Verdict::EqualityCase;
  }
  const bool ok = rel_radial <= 1e-8 && rel_grid <= 1e-4 && tail_ok && rel_l2 <= 1e-6 && rel_yamabe <= 1e-6 && verdicts;
  return {ok, Detail()
                  .add("radial_rel_err", rel_radial)
                  .add("grid_rel_err", rel_grid)
                  .add("tail_bound", grid.tail_bound)
                  .add("l2_rel_err", rel_l2)
                  .add("yamabe_rel_err", rel_yamabe)
                  .note(verdicts ? "EqualityCase for all c" : "verdict varies with c")
                  .str()};
}

// 6. Bochner equality residual and Bochner inequality margins on the radial grid
Outcome criterion6() {
  const AlgebraContext ctx(4, 1.0);
  std::vector<double> radii;
  for (int i = 0; i <= 12; ++i) radii.push_back(0.25 * i);
  double max_res = 0.0, worst_order = 4.0;
  for (double r : radii) {
    const double a = bochner_equality_residual(0.5, r, 1e-3, ctx);
    const double b = bochner_equality_residual(0.5, r, 5e-4, ctx);
    max_res = std::max(max_res, std::abs(a));
    if (std::abs(a / b - 4.0) > std::abs(worst_order - 4.0)) worst_order = a / b;
  }
  const auto margins = lemma4_inequality_check(1.0, instanton_bochner_samples(1.0, radii, 1e-3, ctx), ctx);
  const double min_margin = *std::min_element(margins.begin(), margins.end());
  const bool ok = max_res <= 1e-5 && order_two(worst_order) && min_margin >= -1e-5;
  return {ok, Detail()
                  .add("max|residual|", max_res)
                  .add("bound", 1e-5)
                  .add("worst_ratio", worst_order)
                  .add("min_bochner_margin(p=1)", min_margin)
                  .str()};
}

// 7. planted quaternion triples and the instanton's pointwise structure
Outcome criterion7() {
  double worst_mag = 0.0, worst_res = 0.0;
  bool all_found = true;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(0.1, 3.0);
  std::bernoulli_distribution flip(0.5);
  for (int n : {4, 5, 7}) {
    const AlgebraContext ctx(n);
    const auto e = quaternion_basis(ctx);
    for (int t = 0; t < 1000; ++t) {
      const Eigen::MatrixXd q = random_orthogonal(n, rng);
      std::array<double, 3> a{};
      for (auto& v : a) v = (flip(rng) ? -1.0 : 1.0) * amp(rng);
      const auto result = detect_quaternion_triple((e[0] * a[0]).conjugated(q), (e[1] * a[1]).conjugated(q),
                                                   (e[2] * a[2]).conjugated(q));
      const auto* found = std::get_if<QuatTriple>(&result);
      if (!found) {
        all_found = false;
        continue;
      }
      for (int k = 0; k < 3; ++k)
        worst_mag = std::max(worst_mag, std::abs(std::abs(found->a[k]) - std::abs(a[k])) / std::abs(a[k]));
      worst_res = std::max(worst_res, found->residual);
    }
  }
  double worst_amp = 0.0;
  const AlgebraContext ctx(4);
  const auto f = basic_curvature_closed(ctx);
  for (const auto& x : random_points(707, 100, 2.0)) {
    try {
      const QuatTriple s = pointwise_equality_structure(f, x);
      const double expected = 2.0 / std::pow(1.0 + x.squaredNorm(), 2);
      for (double am : s.a) worst_amp = std::max(worst_amp, std::abs(std::abs(am) - expected));
    } catch (const NotEquivalentError&) {
      all_found = false;
    }
  }
  const bool ok = all_found && worst_mag <= 1e-8 && worst_res <= 1e-8 && worst_amp <= 1e-8;
  return {ok, Detail()
                  .add("max_rel_magnitude_err", worst_mag)
                  .add("max_residual", worst_res)
                  .add("max_instanton_amp_err", worst_amp)
                  .str()};
}

// 8. algebra invariants
Outcome criterion8() {
  std::mt19937_64 rng(8);
  double worst_ad = 0.0;
  for (int n : {3, 4, 6}) {
    const AlgebraContext ctx(n, 0.5);
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_element(ctx, rng), y = random_element(ctx, rng), z = random_element(ctx, rng);
      worst_ad = std::max(worst_ad, std::abs(inner(bracket(x, y), z) + inner(y, bracket(x, z))) /
                                        (norm(x) * norm(y) * norm(z)));
    }
  }

  const AlgebraContext q4(4);
  const auto e = quaternion_basis(q4);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  const auto& i = e[0].entries();
  const auto& j = e[1].entries();
  const auto& k = e[2].entries();
  const bool table = i * i == -id && j * j == -id && k * k == -id && i * j == k && j * k == i && k * i == j &&
                     j * i == -k && k * j == -i && i * k == -j && i * j * k == -id;

  double worst_margin = std::numeric_limits<double>::infinity();
  for (int n : {3, 4, 7}) {
    for (double c : {0.5, 1.0}) {
      const AlgebraContext ctx(n, c);
      for (int t = 0; t < 10000; ++t) {
        const auto a = random_element(ctx, rng), b = random_element(ctx, rng);
        worst_margin = std::min(worst_margin, commutator_bound_margin(a, b) / (norm(a) * norm(b)));
      }
    }
  }
  const double witness = commutator_bound_margin(e[0], e[1], commutator_bound_constant(AlgebraContext(3)));
  const bool ok = worst_ad <= 1e-12 && table && worst_margin >= -1e-12 && witness < 0.0;
  return {ok, Detail()
                  .add("max_ad_defect", worst_ad)
                  .note(table ? "quaternion table exact" : "quaternion table wrong")
                  .add("min_commutator_margin", worst_margin)
                  .add("so3_constant_margin_on_(i,j)", witness)
                  .str()};
}

// 9. byte-identical CLI reports across worker counts
Outcome criterion9() {
  bool ok = true;
  Detail detail;
  for (const auto& sub : cli::subcommands()) {
    cli::RunConfig cfg;
    cfg.samples = 20000;
    cfg.seed = 9;
    std::string first;
    bool same = true;
    for (int w : {1, 1, 4}) {
      cfg.workers = w;
      const std::string text = cli::render(cli::run(sub, cfg).report);
      if (first.empty())
        first = text;
      else
        same = same && text == first;
    }
    if (!same) detail.note(sub + " differs");
    ok = ok && same;
  }
  if (ok) detail.note("all subcommands byte-identical for workers 1, 1, 4");
  return {ok, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"instanton oracle equivalence", criterion1},
      {"anti-self-duality and Yang-Mills", criterion2},
      {"trilinear property suite", criterion3},
      {"sharpness of gamma by optimization", criterion4},
      {"energy and threshold equality chain", criterion5},
      {"Bochner equality PDE", criterion6},
      {"equality classifier round trip", criterion7},
      {"algebra invariants", criterion8},
      {"CLI determinism", criterion9},
  };
  int failures = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome out{false, ""};
    try {
      out = criteria[n].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += out.passed ? 0 : 1;
    std::printf("%s %zu %s: %s\n", out.passed ? "PASS" : "FAIL", n + 1, criteria[n].first, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
