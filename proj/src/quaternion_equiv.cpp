#include "ymgap/quaternion_equiv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ymgap {

namespace {

NotEquivalent fail(EquivalenceFailure f, double measured, const std::string& detail) {
  return NotEquivalent{f, measured, detail};
}

}  // namespace

std::string to_string(EquivalenceFailure failure) {
  switch (failure) {
    case EquivalenceFailure::NormMismatch: return "norm mismatch";
    case EquivalenceFailure::StructureConstants: return "structure-constant failure";
    case EquivalenceFailure::ProjectorRank: return "projector rank";
    case EquivalenceFailure::Residual: return "residual above tolerance";
  }
  return "unknown";
}

NotEquivalentError::NotEquivalentError(NotEquivalent reason)
    : std::runtime_error("not equivalent to a quaternion triple: " + to_string(reason.failure) + " (" +
                         reason.detail + ")"),
      reason_(std::move(reason)) {}

EquivalenceResult detect_quaternion_triple(const LieElement& m1, const LieElement& m2, const LieElement& m3,
                                           double tol) {
  if (!(m1.ctx() == m2.ctx()) || !(m1.ctx() == m3.ctx()))
    throw ContextMismatch("quaternion triple components must share one so(N) context");
  const AlgebraContext& ctx = m1.ctx();
  if (ctx.n() < 4) throw std::invalid_argument("quaternion triple detection needs N >= 4");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const int n = ctx.n();
  const std::array<const Eigen::MatrixXd*, 3> raw = {&m1.entries(), &m2.entries(), &m3.entries()};
  const double scale = std::max({raw[0]->norm(), raw[1]->norm(), raw[2]->norm()});
  if (scale == 0.0) return QuatTriple{Eigen::MatrixXd::Identity(n, n), {0.0, 0.0, 0.0}, 0.0};

  // Work with the triple normalized to unit scale. In raw matrices a e_m has
  // Frobenius norm 2|a|, so b_m = ||N_m||_F / 2 are the normalized magnitudes.
  std::array<Eigen::MatrixXd, 3> unit;
  std::array<double, 3> b{};
  for (int m = 0; m < 3; ++m) {
    unit[m] = *raw[m] / scale;
    b[m] = 0.5 * unit[m].norm();
  }
  const double b_min = std::min({b[0], b[1], b[2]});
  if (b_min <= tol) {
    return fail(EquivalenceFailure::NormMismatch, b_min,
                "a component vanishes while max |M| > 0");
  }

  // [e1, e2] = 2 e3 and cyclic, so [M1, M2] = sigma 2 (a1 a2 / |a3|) M3 with one
  // orientation sign sigma shared by all three relations.
  const Eigen::MatrixXd c12 = unit[0] * unit[1] - unit[1] * unit[0];
  const double sigma = (c12.array() * unit[2].array()).sum() >= 0.0 ? 1.0 : -1.0;
  for (int m = 0; m < 3; ++m) {
    const int p = m;
    const int q = (m + 1) % 3;
    const int r = (m + 2) % 3;
    const Eigen::MatrixXd commutator = unit[p] * unit[q] - unit[q] * unit[p];
    const double defect = (commutator - sigma * 2.0 * b[p] * b[q] / b[r] * unit[r]).norm();
    if (defect > tol) {
      std::ostringstream msg;
      msg << "|[M" << p + 1 << ", M" << q + 1 << "] - s M" << r + 1 << "| = " << defect;
      return fail(EquivalenceFailure::StructureConstants, defect, msg.str());
    }
  }

  // (a i)^2 = -a^2 diag(I4, 0), so -M1^2 / a1^2 projects onto the invariant 4-space.
  const Eigen::MatrixXd proj = -(unit[0] * unit[0]) / (b[0] * b[0]);
  const double proj_tol = tol / b[0];
  const double idempotence = (proj * proj - proj).norm() + (proj - proj.transpose()).norm();
  const double trace = proj.trace();
  if (idempotence > proj_tol || std::abs(trace - 4.0) > proj_tol) {
    std::ostringstream msg;
    msg << "trace " << trace << ", |P^2 - P| + |P - P^T| = " << idempotence;
    return fail(EquivalenceFailure::ProjectorRank, std::max(idempotence, std::abs(trace - 4.0)), msg.str());
  }

  // Adapted basis (v0, M1 v0 / a1, M2 v0 / a2, M3 v0 / a3) of the invariant space,
  // mirroring (1, i, j, k) under left multiplication.
  Eigen::Index pivot = 0;
  proj.colwise().norm().maxCoeff(&pivot);
  const Eigen::VectorXd v0 = proj.col(pivot).normalized();
  Eigen::MatrixXd adapted(n, 4);
  adapted.col(0) = v0;
  adapted.col(1) = unit[0] * v0 / b[0];
  adapted.col(2) = unit[1] * v0 / b[1];
  adapted.col(3) = sigma * unit[2] * v0 / b[2];

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(adapted);
  Eigen::MatrixXd q = qr.householderQ();
  for (int col = 0; col < 4; ++col)
    if (qr.matrixQR()(col, col) < 0) q.col(col) = -q.col(col);

  QuatTriple out;
  out.q = q;
  out.a = {scale * b[0], scale * b[1], sigma * scale * b[2]};
  const auto basis = quaternion_basis(ctx);
  double residual = 0.0;
  for (int m = 0; m < 3; ++m) {
    const Eigen::MatrixXd diff = q.transpose() * *raw[m] * q - out.a[m] * basis[m].entries();
    residual = std::max(residual, std::sqrt(ctx.c()) * diff.norm());
  }
  out.residual = residual;

  double max_norm = 0.0;
  for (const auto* r : raw) max_norm = std::max(max_norm, std::sqrt(ctx.c()) * r->norm());
  if (residual > tol * max_norm) {
    std::ostringstream msg;
    msg << "residual " << residual << " exceeds " << tol * max_norm;
    return fail(EquivalenceFailure::Residual, residual, msg.str());
  }
  return out;
}

bool check_so3_basis(const LieElement& m1, const LieElement& m2, const LieElement& m3, double tol) {
  if (!(m1.ctx() == m2.ctx()) || !(m1.ctx() == m3.ctx()))
    throw ContextMismatch("so(3) basis check needs one shared context");
  if (m1.ctx().n() != 3) throw std::invalid_argument("so(3) basis check requires N = 3");
  const std::array<const LieElement*, 3> v = {&m1, &m2, &m3};
  std::array<double, 3> norms{};
  for (int m = 0; m < 3; ++m) norms[m] = norm(*v[m]);
  const double scale = std::max({norms[0], norms[1], norms[2]});
  if (scale == 0.0) return false;
  for (double nm : norms)
    if (nm <= tol * scale) return false;
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q)
      if (std::abs(inner(*v[p], *v[q])) > tol * norms[p] * norms[q]) return false;
  return true;
}

}  // namespace ymgap
