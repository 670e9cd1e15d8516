#pragma once

#include "ymgap/lie_algebra.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <variant>

namespace ymgap {

/// Certificate that (M1, M2, M3) = Q (a1 i, a2 j, a3 k) Q^T.
///
/// Signs are canonicalized to a1 >= 0, a2 >= 0; a3 carries the orientation of
/// the triple (the sign of <[M1, M2], M3>). `residual` is
/// max_m |Q^T M_m Q - a_m e_m| in the so(N) norm.
struct QuatTriple {
  Eigen::MatrixXd q;
  std::array<double, 3> a{};
  double residual = 0.0;
};

enum class EquivalenceFailure {
  NormMismatch,        // some components vanish while others do not
  StructureConstants,  // [M1, M2] is not the required multiple of M3 (or cyclic)
  ProjectorRank,       // -M1^2 / a1^2 is not a rank-4 orthogonal projector
  Residual,            // the assembled Q does not reproduce the inputs
};

struct NotEquivalent {
  EquivalenceFailure failure;
  double measured = 0.0;  // defect found by the failing check
  std::string detail;
};

std::string to_string(EquivalenceFailure failure);

using EquivalenceResult = std::variant<QuatTriple, NotEquivalent>;

/// Default tolerance; applied to unit-scale inputs and scaled by max |M_m|.
inline constexpr double kDefaultEquivalenceTolerance = 1e-8;

/// Decides whether the triple is simultaneously orthogonally equivalent to
/// multiples of the embedded quaternion basis, constructing Q when it is.
/// Requires N >= 4 and tol > 0.
EquivalenceResult detect_quaternion_triple(const LieElement& m1, const LieElement& m2, const LieElement& m3,
                                           double tol = kDefaultEquivalenceTolerance);

/// True iff the three values are nonzero and pairwise orthogonal within `tol`
/// (relative to their norms). Requires N = 3.
bool check_so3_basis(const LieElement& m1, const LieElement& m2, const LieElement& m3,
                     double tol = kDefaultEquivalenceTolerance);

/// Exception form of a NotEquivalent result, for callers that require equivalence.
class NotEquivalentError : public std::runtime_error {
 public:
  explicit NotEquivalentError(NotEquivalent reason);
  const NotEquivalent& reason() const { return reason_; }

 private:
  NotEquivalent reason_;
};

}  // namespace ymgap
