#include "ymgap/instanton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ymgap {

namespace {

void require_quaternionic(const AlgebraContext& ctx) {
  if (ctx.n() < 4) throw std::invalid_argument("the basic instanton needs N >= 4");
}

std::array<LieElement, 4> zero_components(const AlgebraContext& ctx) {
  const auto z = LieElement::zero(ctx);
  return {z, z, z, z};
}

}  // namespace

Covector4 theta(int m, const Point4& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  switch (m) {
    case 1: return {-x2, x1, x4, -x3};   // x1 dx2 - x2 dx1 - x3 dx4 + x4 dx3
    case 2: return {-x3, -x4, x1, x2};   // x1 dx3 - x3 dx1 + x2 dx4 - x4 dx2
    case 3: return {-x4, x3, -x2, x1};   // x1 dx4 - x4 dx1 - x2 dx3 + x3 dx2
    default: throw std::out_of_range("theta index must be 1, 2 or 3");
  }
}

GaugeField basic_connection(const AlgebraContext& ctx) {
  require_quaternionic(ctx);
  const auto basis = quaternion_basis(ctx);
  return {ctx, [basis](const Point4& x) {
            const double s = 1.0 / (1.0 + x.squaredNorm());
            const std::array<Covector4, 3> t = {theta(1, x), theta(2, x), theta(3, x)};
            auto comp = [&](int i) {
              return s * (t[0][i] * basis[0] + t[1][i] * basis[1] + t[2][i] * basis[2]);
            };
            return std::array<LieElement, 4>{comp(0), comp(1), comp(2), comp(3)};
          }};
}

CurvatureField basic_curvature_closed(const AlgebraContext& ctx) {
  require_quaternionic(ctx);
  const auto basis = quaternion_basis(ctx);
  return {ctx, [ctx, basis](const Point4& x) {
            const double r2 = 1.0 + x.squaredNorm();
            const double g = 2.0 / (r2 * r2);
            const LieElement i = g * basis[0];
            const LieElement j = g * basis[1];
            const LieElement k = g * basis[2];
            // slots 12, 13, 14, 23, 24, 34
            return TwoForm(ctx, {i, j, k, -k, j, -i});
          }};
}

GaugeField trivial_connection(const AlgebraContext& ctx) {
  return {ctx, [ctx](const Point4&) { return zero_components(ctx); }};
}

CurvatureField zero_curvature(const AlgebraContext& ctx) {
  return {ctx, [ctx](const Point4&) { return TwoForm::zero(ctx); }};
}

GaugeField conjugated(const GaugeField& a, const Eigen::MatrixXd& q) {
  return {a.ctx, [eval = a.eval, q](const Point4& x) {
            auto c = eval(x);
            return std::array<LieElement, 4>{c[0].conjugated(q), c[1].conjugated(q), c[2].conjugated(q),
                                             c[3].conjugated(q)};
          }};
}

CurvatureField conjugated(const CurvatureField& f, const Eigen::MatrixXd& q) {
  return {f.ctx, [eval = f.eval, q](const Point4& x) { return eval(x).conjugated(q); }};
}

TwoForm numeric_curvature(const GaugeField& a, const Point4& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const auto& ctx = a.ctx;
  // d[i][j] = central difference of A_j along x_i
  std::array<std::array<Eigen::MatrixXd, 4>, 4> d;
  for (int i = 0; i < 4; ++i) {
    Point4 step = Point4::Zero();
    step[i] = h;
    const auto plus = a.eval(x + step);
    const auto minus = a.eval(x - step);
    for (int j = 0; j < 4; ++j) d[i][j] = (plus[j].entries() - minus[j].entries()) / (2.0 * h);
  }
  const auto at = a.eval(x);
  auto component = [&](int i, int j) {
    Eigen::MatrixXd f = d[i][j] - d[j][i] + at[i].entries() * at[j].entries() - at[j].entries() * at[i].entries();
    return LieElement::skew_part(ctx, f);
  };
  return TwoForm(ctx, {component(0, 1), component(0, 2), component(0, 3), component(1, 2), component(1, 3),
                       component(2, 3)});
}

double yang_mills_residual(const GaugeField& a, const CurvatureField& f, const Point4& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  if (!(a.ctx == f.ctx)) throw ContextMismatch("connection and curvature must share one context");
  const int n = a.ctx.n();
  const auto at = a.eval(x);
  const TwoForm fx = f.eval(x);
  std::array<Eigen::MatrixXd, 4> divergence;
  for (auto& m : divergence) m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= 4; ++i) {
    Point4 step = Point4::Zero();
    step[i - 1] = h;
    const TwoForm plus = f.eval(x + step);
    const TwoForm minus = f.eval(x - step);
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      const Eigen::MatrixXd fij = fx.at(i, j).entries();
      const Eigen::MatrixXd& ai = at[i - 1].entries();
      divergence[j - 1] += (plus.at(i, j).entries() - minus.at(i, j).entries()) / (2.0 * h) + ai * fij - fij * ai;
    }
  }
  double worst = 0.0;
  for (const auto& m : divergence) worst = std::max(worst, norm(LieElement::skew_part(a.ctx, m)));
  return worst;
}

double max_entry_deviation(const TwoForm& lhs, const TwoForm& rhs) {
  double worst = 0.0;
  for (int s = 0; s < TwoForm::kComponents; ++s)
    worst = std::max(worst, (lhs.components()[s].entries() - rhs.components()[s].entries()).cwiseAbs().maxCoeff());
  return worst;
}

QuatTriple pointwise_equality_structure(const CurvatureField& f, const Point4& x, double tol) {
  require_quaternionic(f.ctx);
  const TwoForm fx = f.eval(x);
  auto result = detect_quaternion_triple(fx.at(1, 2), fx.at(1, 3), fx.at(1, 4), tol);
  if (auto* failure = std::get_if<NotEquivalent>(&result)) throw NotEquivalentError(*failure);
  return std::get<QuatTriple>(result);
}

double basic_instanton_amplitude(const Point4& x) {
  const double r2 = 1.0 + x.squaredNorm();
  return 2.0 / (r2 * r2);
}

}  // namespace ymgap
