#include "ymgap/lie_algebra.hpp"

#include <cmath>
#include <sstream>

namespace ymgap {

namespace {

constexpr double kSkewTolerance = 1e-12;

void require_same_context(const LieElement& a, const LieElement& b) {
  if (!(a.ctx() == b.ctx())) {
    std::ostringstream msg;
    msg << "so(N) context mismatch: (N=" << a.ctx().n() << ", c=" << a.ctx().c() << ") vs (N="
        << b.ctx().n() << ", c=" << b.ctx().c() << ")";
    throw ContextMismatch(msg.str());
  }
}

}  // namespace

AlgebraContext::AlgebraContext(int n, double c) : n_(n), c_(c) {
  if (n < 3) throw std::invalid_argument("so(N) requires N >= 3, got N=" + std::to_string(n));
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("inner product scale c must be positive and finite");
}

LieElement::LieElement(Trusted, const AlgebraContext& ctx, Eigen::MatrixXd entries)
    : ctx_(ctx), entries_(std::move(entries)) {}

LieElement::LieElement(const AlgebraContext& ctx, const Eigen::MatrixXd& entries) : ctx_(ctx) {
  if (entries.rows() != ctx.n() || entries.cols() != ctx.n())
    throw std::invalid_argument("matrix shape does not match so(N) dimension");
  const double scale = entries.norm();
  const double defect = (entries + entries.transpose()).norm();
  if (defect > kSkewTolerance * scale)
    throw std::invalid_argument("matrix is not skew-symmetric (defect " + std::to_string(defect) + ")");
  entries_ = 0.5 * (entries - entries.transpose());
}

LieElement LieElement::zero(const AlgebraContext& ctx) {
  return {Trusted{}, ctx, Eigen::MatrixXd::Zero(ctx.n(), ctx.n())};
}

LieElement LieElement::skew_part(const AlgebraContext& ctx, const Eigen::MatrixXd& m) {
  if (m.rows() != ctx.n() || m.cols() != ctx.n())
    throw std::invalid_argument("matrix shape does not match so(N) dimension");
  return {Trusted{}, ctx, 0.5 * (m - m.transpose())};
}

LieElement LieElement::operator+(const LieElement& other) const {
  require_same_context(*this, other);
  return {Trusted{}, ctx_, entries_ + other.entries_};
}

LieElement LieElement::operator-(const LieElement& other) const {
  require_same_context(*this, other);
  return {Trusted{}, ctx_, entries_ - other.entries_};
}

LieElement LieElement::operator-() const { return {Trusted{}, ctx_, -entries_}; }

LieElement LieElement::operator*(double s) const { return {Trusted{}, ctx_, s * entries_}; }

LieElement LieElement::conjugated(const Eigen::MatrixXd& q) const {
  return skew_part(ctx_, q * entries_ * q.transpose());
}

double inner(const LieElement& a, const LieElement& b) {
  require_same_context(a, b);
  // tr(AB) = sum_ij A_ij B_ji
  return -a.ctx().c() * (a.entries().array() * b.entries().transpose().array()).sum();
}

double norm(const LieElement& a) { return std::sqrt(std::max(0.0, inner(a, a))); }

LieElement bracket(const LieElement& a, const LieElement& b) {
  require_same_context(a, b);
  const Eigen::MatrixXd ab = a.entries() * b.entries();
  // AB - BA = AB - (AB)^T for skew A, B
  return LieElement::skew_part(a.ctx(), 2.0 * ab);
}

std::array<LieElement, 3> quaternion_basis(const AlgebraContext& ctx) {
  if (ctx.n() < 4)
    throw std::invalid_argument("quaternion basis needs N >= 4; so(3) has no su(2) embedding of this form");
  const int n = ctx.n();
  Eigen::MatrixXd i = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  // column q holds the coordinates of (unit) * e_q, basis order (1, i, j, k)
  i.topLeftCorner<4, 4>() << 0, -1, 0, 0,
                             1, 0, 0, 0,
                             0, 0, 0, -1,
                             0, 0, 1, 0;
  j.topLeftCorner<4, 4>() << 0, 0, -1, 0,
                             0, 0, 0, 1,
                             1, 0, 0, 0,
                             0, -1, 0, 0;
  k.topLeftCorner<4, 4>() << 0, 0, 0, -1,
                             0, 0, -1, 0,
                             0, 1, 0, 0,
                             1, 0, 0, 0;
  return {LieElement(ctx, i), LieElement(ctx, j), LieElement(ctx, k)};
}

double commutator_bound_constant(const AlgebraContext& ctx) {
  return ctx.n() == 3 ? 1.0 / std::sqrt(2.0 * ctx.c()) : 1.0 / std::sqrt(ctx.c());
}

double commutator_bound_margin(const LieElement& a, const LieElement& b) {
  require_same_context(a, b);
  return commutator_bound_margin(a, b, commutator_bound_constant(a.ctx()));
}

double commutator_bound_margin(const LieElement& a, const LieElement& b, double constant) {
  return constant * norm(a) * norm(b) - norm(bracket(a, b));
}

LieElement random_element(const AlgebraContext& ctx, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(ctx.n(), ctx.n());
  for (int c = 0; c < g.cols(); ++c)
    for (int r = 0; r < g.rows(); ++r) g(r, c) = normal(rng);
  return LieElement::skew_part(ctx, g);
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) g(r, c) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int c = 0; c < n; ++c)
    if (r(c, c) < 0) q.col(c) = -q.col(c);
  return q;
}

}  // namespace ymgap
