#pragma once

#include "ymgap/forms4d.hpp"
#include "ymgap/lie_algebra.hpp"
#include "ymgap/quaternion_equiv.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>

namespace ymgap {

using Point4 = Eigen::Vector4d;
using Covector4 = std::array<double, 4>;

/// A connection on the trivial so(N) bundle over R^4: x -> (A_1, ..., A_4).
struct GaugeField {
  AlgebraContext ctx;
  std::function<std::array<LieElement, 4>(const Point4&)> eval;
};

/// A curvature (or any so(N)-valued 2-form field) on R^4.
struct CurvatureField {
  AlgebraContext ctx;
  std::function<TwoForm(const Point4&)> eval;
};

/// Components (dx1..dx4) of the 1-forms theta_1, theta_2, theta_3; m in 1..3.
Covector4 theta(int m, const Point4& x);

/// A = (1 + |x|^2)^{-1} (theta_1 i + theta_2 j + theta_3 k). Requires N >= 4.
GaugeField basic_connection(const AlgebraContext& ctx);

/// Closed-form curvature of basic_connection:
/// F = 2 (1 + |x|^2)^{-2} ((dx12 - dx34) i + (dx13 + dx24) j + (dx14 - dx23) k).
CurvatureField basic_curvature_closed(const AlgebraContext& ctx);

/// The zero connection.
GaugeField trivial_connection(const AlgebraContext& ctx);
CurvatureField zero_curvature(const AlgebraContext& ctx);

/// Global gauge rotation: every value conjugated by the orthogonal matrix q.
GaugeField conjugated(const GaugeField& a, const Eigen::MatrixXd& q);
CurvatureField conjugated(const CurvatureField& f, const Eigen::MatrixXd& q);

/// F_ij = d_i A_j - d_j A_i + [A_i, A_j] with central differences of step h.
TwoForm numeric_curvature(const GaugeField& a, const Point4& x, double h);

/// max_j | sum_i d_i F_ij + [A_i, F_ij] | with central differences of step h.
double yang_mills_residual(const GaugeField& a, const CurvatureField& f, const Point4& x, double h);

/// Largest absolute matrix-entry difference between two forms.
double max_entry_deviation(const TwoForm& lhs, const TwoForm& rhs);

/// Runs detect_quaternion_triple on (F12, F13, F14) at x; throws
/// NotEquivalentError if the triple is not of quaternion type.
QuatTriple pointwise_equality_structure(const CurvatureField& f, const Point4& x,
                                        double tol = kDefaultEquivalenceTolerance);

/// 2 (1 + |x|^2)^{-2}: the common magnitude |a_m| of the basic instanton triple.
double basic_instanton_amplitude(const Point4& x);

}  // namespace ymgap
