#pragma once

#include "ymgap/forms4d.hpp"
#include "ymgap/quaternion_equiv.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <variant>
#include <vector>

namespace ymgap {

struct ExtremizerOptions {
  int restarts = 20;
  int max_iters = 5000;
  std::uint64_t seed = 0;
  int workers = 1;
  bool record_trace = false;
  // Start every restart here instead of at a random form.
  std::optional<TwoForm> initial;
  int gradient_checks = 3;
  double gradient_tolerance = 1e-6;
  double classification_tolerance = 1e-4;
  // stop when the projected gradient or the 50-iteration improvement falls below these
  double gradient_floor = 1e-8;
  double improvement_floor = 1e-12;
  int stall_window = 50;
};

struct TraceRow {
  int restart;
  int iter;
  double ratio;
  double grad_norm;
};

/// so(3) equality-case verdict for N = 3 maximizers.
struct So3Basis {
  bool is_basis;
};

using Classification = std::variant<QuatTriple, So3Basis, NotEquivalent>;

struct ExtremizerResult {
  double best_ratio;
  TwoForm omega;
  int iterations;
  int restarts_used;
  int best_restart;
  Classification classification;
  bool converged;             // false when every restart stagnated below gamma / 2
  double max_iterate_ratio;   // largest |T| / |w|^3 seen at any evaluated point
  std::vector<TraceRow> trace;
};

class GradientValidationError : public std::runtime_error {
 public:
  GradientValidationError(double deviation, double tolerance);
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

/// Largest deviation |fd - <G, H>| / (|G| |H|) between the analytic gradient and
/// central differences along random directions, over `points` random forms.
double gradient_check(const AlgebraContext& ctx, Duality duality, std::uint64_t seed, int points);

/// Component of the gradient of |trilinear| tangent to the unit sphere of the
/// duality eigenspace at w (|w| = 1).
TwoForm projected_gradient(const TwoForm& w, Duality duality);

/// Projected gradient ascent of |trilinear(w)| over unit (anti-)self-dual forms.
ExtremizerResult maximize_ratio(const AlgebraContext& ctx, Duality duality, const ExtremizerOptions& options = {});

/// The six component norms |w_12|, |w_13|, |w_14|, |w_23|, |w_24|, |w_34|.
std::array<double, 6> component_norm_profile(const TwoForm& w);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace ymgap
