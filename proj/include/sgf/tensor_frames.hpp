#pragma once

// Frames on exterior tensor products H (x) K: the product frame
// {Lambda_i (x) Gamma_j}, the transform of a frame on H (x) K by Q^* (x) I for
// invertible Q on H, and the module-valued norm sandwich for Q^* (x) I.

#include "sgf/star_g_frames.hpp"

namespace sgf {

struct TensorVerification {
  double operator_residual = 0.0;
  BoundsCertificate certificate;

  friend bool operator==(const TensorVerification&, const TensorVerification&) = default;
};

struct TensorFrameResult {
  StarGFrame frame;
  AdjointableOp predicted_operator;
  FrameBounds predicted_bounds;
  TensorVerification verification;

  /// Operator residual within eq_rtol and a non-refuting certificate.
  bool verified() const;

  friend bool operator==(const TensorFrameResult&, const TensorFrameResult&) = default;
};

/// Recovers K from H (x) K and H. Throws SpaceMismatch when `hk` does not factor.
ModuleSpace factor_right(const ModuleSpace& hk, const ModuleSpace& h);

/// Ops ordered lexicographically by (i, j). Bounds of each factor are the
/// declared ones, or optimal central bounds (MissingBounds if neither exists).
TensorFrameResult tensor_product_frame(const StarGFrame& f, const StarGFrame& g,
                                       const Tolerance& tol = {},
                                       const CertifyOptions& options = {});

/// Frame {Lambda_i (Q^* (x) I_K)} with predicted operator (Q (x) I) S (Q^* (x) I)
/// and predicted bounds (||Q^{*-1}||^{-1} A, ||Q|| B).
TensorFrameResult transform_frame(const StarGFrame& f, const AdjointableOp& q,
                                  const ModuleSpace& right_factor, const Tolerance& tol = {},
                                  const CertifyOptions& options = {});

/// Scalars of the sandwich c_low |z| <= |(Q^* (x) I) z| <= c_high |z|.
struct SandwichConstants {
  double lower;  // ||Q^{*-1}||^{-1}
  double upper;  // ||Q||
};
SandwichConstants sandwich_constants(const AdjointableOp& q, const Tolerance& tol = {});

struct SandwichCheck {
  bool holds = false;
  /// Smallest eigenvalue over both Loewner differences.
  double margin = 0.0;
};

SandwichCheck lemma_sandwich(const AdjointableOp& q, const ModuleSpace& right_factor,
                             const ModuleVector& z, const Tolerance& tol = {});
bool check_lemma_sandwich(const AdjointableOp& q, const ModuleSpace& right_factor,
                          const ModuleVector& z, const Tolerance& tol = {});

}  // namespace sgf
