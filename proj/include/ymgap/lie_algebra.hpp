#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace ymgap {

/// Dimension N of so(N) and the scale c of the inner product <A,B> = -c tr(AB).
class AlgebraContext {
 public:
  explicit AlgebraContext(int n = 4, double c = 1.0);

  int n() const { return n_; }
  double c() const { return c_; }

  friend bool operator==(const AlgebraContext&, const AlgebraContext&) = default;

 private:
  int n_;
  double c_;
};

/// Thrown when two values from different algebra contexts are combined.
class ContextMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An element of so(N): a real skew-symmetric N x N matrix tied to its context.
///
/// Construction accepts matrices that are skew up to 1e-12 relative to their
/// Frobenius norm and stores the exact skew part (M - M^T)/2.
class LieElement {
 public:
  LieElement(const AlgebraContext& ctx, const Eigen::MatrixXd& entries);

  static LieElement zero(const AlgebraContext& ctx);
  /// Skew part (M - M^T)/2 of an arbitrary square matrix; never throws on asymmetry.
  static LieElement skew_part(const AlgebraContext& ctx, const Eigen::MatrixXd& m);

  const Eigen::MatrixXd& entries() const { return entries_; }
  const AlgebraContext& ctx() const { return ctx_; }

  LieElement operator+(const LieElement& other) const;
  LieElement operator-(const LieElement& other) const;
  LieElement operator-() const;
  LieElement operator*(double s) const;
  friend LieElement operator*(double s, const LieElement& a) { return a * s; }

  /// Conjugation Q A Q^T by an orthogonal matrix.
  LieElement conjugated(const Eigen::MatrixXd& q) const;

 private:
  struct Trusted {};
  LieElement(Trusted, const AlgebraContext& ctx, Eigen::MatrixXd entries);

  AlgebraContext ctx_;
  Eigen::MatrixXd entries_;
};

/// <A,B> = -c tr(AB).
double inner(const LieElement& a, const LieElement& b);
double norm(const LieElement& a);
/// Matrix commutator AB - BA.
LieElement bracket(const LieElement& a, const LieElement& b);

/// Left multiplication by i, j, k on the quaternions with real basis (1, i, j, k),
/// zero-padded into so(N). Requires N >= 4.
std::array<LieElement, 3> quaternion_basis(const AlgebraContext& ctx);

/// Constant in |[A,B]| <= c~ |A||B|: 1/sqrt(2c) on so(3), 1/sqrt(c) for N >= 4.
double commutator_bound_constant(const AlgebraContext& ctx);

/// c~ |A||B| - |[A,B]| with the regime constant of the shared context.
double commutator_bound_margin(const LieElement& a, const LieElement& b);
/// Same margin with an explicitly supplied constant.
double commutator_bound_margin(const LieElement& a, const LieElement& b, double constant);

/// Skew part (G - G^T)/2 of a matrix G with independent standard normal entries.
LieElement random_element(const AlgebraContext& ctx, std::mt19937_64& rng);

/// Haar-distributed orthogonal matrix via QR of a Gaussian matrix with sign fix.
Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng);

}  // namespace ymgap
