#pragma once

#include "ymgap/lie_algebra.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>

namespace ymgap {

enum class Duality { SelfDual, AntiSelfDual, None };

/// so(N)-valued 2-form on oriented R^4, stored as the six components
/// w12, w13, w14, w23, w24, w34 (1-based indices).
class TwoForm {
 public:
  static constexpr int kComponents = 6;

  TwoForm(const AlgebraContext& ctx, std::array<LieElement, kComponents> components);
  static TwoForm zero(const AlgebraContext& ctx);

  const AlgebraContext& ctx() const { return ctx_; }
  const std::array<LieElement, kComponents>& components() const { return components_; }

  /// w_ij for 1 <= i, j <= 4; w_ji = -w_ij and w_ii = 0.
  LieElement at(int i, int j) const;
  /// Position of (i, j), i < j, in components().
  static int slot(int i, int j);

  TwoForm operator+(const TwoForm& other) const;
  TwoForm operator-(const TwoForm& other) const;
  TwoForm operator*(double s) const;
  friend TwoForm operator*(double s, const TwoForm& w) { return w * s; }

  /// Conjugates every component by the same orthogonal matrix.
  TwoForm conjugated(const Eigen::MatrixXd& q) const;

 private:
  AlgebraContext ctx_;
  std::array<LieElement, kComponents> components_;
};

/// Hodge star on 2-forms in oriented orthonormal coordinates:
/// *w12 = w34, *w13 = -w24, *w14 = w23 (and symmetrically).
TwoForm hodge(const TwoForm& w);
TwoForm sd_part(const TwoForm& w);
TwoForm asd_part(const TwoForm& w);

/// Sum of <w_ij, w_kl> over the six components.
double form_inner(const TwoForm& a, const TwoForm& b);
double form_norm_sq(const TwoForm& w);
double form_norm(const TwoForm& w);

/// sum over i, j, k in 1..4 of <[w_ij, w_jk], w_ki>.
double trilinear(const TwoForm& w);

/// Gradient of trilinear() with respect to form_inner: the form G with
/// d/dt trilinear(w + t H) = form_inner(G, H) at t = 0.
TwoForm trilinear_gradient(const TwoForm& w);

/// Sharp constant: 4/sqrt(12c) on so(3), 4/sqrt(6c) for N >= 4.
double gamma(const AlgebraContext& ctx);

/// Raised by lemma3_margin when the input is neither self-dual nor anti-self-dual.
class DualityViolation : public std::invalid_argument {
 public:
  DualityViolation(double sd_defect, double asd_defect, double scale);

  double sd_defect() const { return sd_defect_; }
  double asd_defect() const { return asd_defect_; }

 private:
  double sd_defect_;
  double asd_defect_;
};

/// Duality of w within `rel_tol` relative to |w|; None if neither holds.
Duality classify_duality(const TwoForm& w, double rel_tol = 1e-10);

/// gamma |w|^3 - |trilinear(w)|; throws DualityViolation unless w is
/// self-dual or anti-self-dual within 1e-10 relative.
double lemma3_margin(const TwoForm& w);

/// Gaussian skew components projected onto the requested duality eigenspace.
/// Deterministic in `seed`.
TwoForm random_form(const AlgebraContext& ctx, std::uint64_t seed, Duality duality);

TwoForm project(const TwoForm& w, Duality duality);

}  // namespace ymgap
