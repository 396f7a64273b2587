#pragma once

// *-g-frames {Lambda_i} on a module H, their frame operator
// S = sum_i Lambda_i^* Lambda_i, and certification of the frame inequality
//
//   A <x,x> A^*  <=  sum_i <Lambda_i x, Lambda_i x>  <=  B <x,x> B^*   for all x.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgf/operators.hpp"

namespace sgf {

struct FrameBounds {
  AlgebraElement lower;
  AlgebraElement upper;

  friend bool operator==(const FrameBounds&, const FrameBounds&) = default;
};

class StarGFrame {
 public:
  StarGFrame() = default;
  /// Throws InvalidParams on an empty op list, SpaceMismatch when an op does not
  /// start at `space`, NotInvertible when declared bounds are not invertible.
  StarGFrame(ModuleSpace space, std::vector<AdjointableOp> ops,
             std::optional<FrameBounds> declared_bounds = std::nullopt);

  const ModuleSpace& space() const { return space_; }
  const std::vector<AdjointableOp>& ops() const { return ops_; }
  const std::optional<FrameBounds>& declared_bounds() const { return declared_bounds_; }

  StarGFrame with_bounds(std::optional<FrameBounds> bounds) const;

  friend bool operator==(const StarGFrame&, const StarGFrame&) = default;

 private:
  ModuleSpace space_;
  std::vector<AdjointableOp> ops_;
  std::optional<FrameBounds> declared_bounds_;
};

enum class CertificateStatus {
  kCertifiedExact,
  kCertifiedByConstruction,
  kNoCounterexampleFound,
  kRefuted,
};

const char* to_string(CertificateStatus status);
CertificateStatus parse_status(const std::string& s);

struct BoundsCertificate {
  CertificateStatus status = CertificateStatus::kNoCounterexampleFound;
  std::optional<ModuleVector> witness;  // present iff Refuted
  std::string method;
  std::size_t samples_used = 0;
  Tolerance tol;

  bool refuted() const { return status == CertificateStatus::kRefuted; }
  friend bool operator==(const BoundsCertificate&, const BoundsCertificate&) = default;
};

struct CertifyOptions {
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  bool force_sampling = false;
  int descent_steps = 200;
  int descent_starts = 5;
  double descent_step = 1e-2;
};

AdjointableOp frame_operator(const StarGFrame& frame);

/// sum_i <Lambda_i x, Lambda_i x>.
AlgebraElement frame_sum(const StarGFrame& frame, const ModuleVector& x);

/// Smallest eigenvalues of the lower gap  frame_sum(x) - A<x,x>A^*
/// and of the upper gap  B<x,x>B^* - frame_sum(x).
struct InequalityGap {
  double lower;
  double upper;
  double worst() const { return lower < upper ? lower : upper; }
};

/// A frame seen only through its quadratic form; lets the sampler run on
/// module structures other than the standard left one.
struct FrameModel {
  ModuleSpace space;
  InnerForm form = InnerForm::kLeft;
  std::function<AlgebraElement(const ModuleVector&)> frame_sum;
};

FrameModel model_of(const StarGFrame& frame);

InequalityGap inequality_gap(const FrameModel& model, const AlgebraElement& lower,
                             const AlgebraElement& upper, const ModuleVector& x);
InequalityGap inequality_gap(const StarGFrame& frame, const AlgebraElement& lower,
                             const AlgebraElement& upper, const ModuleVector& x);

/// Random sampling plus finite-difference descent. Never certifies; returns
/// Refuted with a witness or NoCounterexampleFound.
BoundsCertificate sample_certify(const FrameModel& model, const AlgebraElement& lower,
                                 const AlgebraElement& upper, const Tolerance& tol,
                                 const CertifyOptions& options);

/// Exact spectral test when both bounds are central, sampling otherwise.
/// Throws NotInvertible when a bound is not invertible.
BoundsCertificate certify_bounds(const StarGFrame& frame, const AlgebraElement& lower,
                                 const AlgebraElement& upper, const Tolerance& tol = {},
                                 const CertifyOptions& options = {});

/// Block t of the bounds is sqrt(lambda_min) and sqrt(lambda_max) of block t
/// of flatten(S). Throws NotAFrame when some block of S is singular.
FrameBounds optimal_central_bounds(const StarGFrame& frame, const Tolerance& tol = {});

/// Declared bounds if present, optimal central bounds otherwise.
FrameBounds bounds_or_optimal(const StarGFrame& frame, const Tolerance& tol = {});

/// Lambda_i x = <x, x_i> into A^1, so frame_sum(x) = sum_i <x,x_i><x_i,x>.
StarGFrame frame_from_vectors(const std::vector<ModuleVector>& xs);

/// Scalar-bound g-frame test, exact through the central path.
bool is_g_frame(const StarGFrame& frame, double lower, double upper, const Tolerance& tol = {});

/// Random ops with codomain ranks drawn from [1, max_codomain_rank].
StarGFrame random_frame(const ModuleSpace& space, int num_ops, int max_codomain_rank,
                        std::uint64_t seed);

}  // namespace sgf
