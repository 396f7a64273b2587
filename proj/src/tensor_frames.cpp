#include "sgf/tensor_frames.hpp"

#include <algorithm>

namespace sgf {

bool TensorFrameResult::verified() const {
  return verification.operator_residual <= verification.certificate.tol.eq_rtol &&
         !verification.certificate.refuted();
}

ModuleSpace factor_right(const ModuleSpace& hk, const ModuleSpace& h) {
  const auto& outer = hk.algebra.blocks();
  const auto& left = h.algebra.blocks();
  if (hk.rank % h.rank != 0 || outer.size() % left.size() != 0) {
    throw Error(ErrorCode::kSpaceMismatch, "module does not factor through the left space");
  }
  const std::size_t nt = outer.size() / left.size();
  std::vector<int> right;
  for (std::size_t t = 0; t < nt; ++t) {
    if (outer[t] % left[0] != 0) {
      throw Error(ErrorCode::kSpaceMismatch, "block sizes do not factor");
    }
    right.push_back(outer[t] / left[0]);
  }
  const ModuleSpace k(AlgebraShape(right), hk.rank / h.rank);
  if (!(tensor_space(h, k) == hk)) {
    throw Error(ErrorCode::kSpaceMismatch, "module does not factor through the left space");
  }
  return k;
}

namespace {

FrameBounds factor_bounds(const StarGFrame& f, const Tolerance& tol) {
  try {
    return bounds_or_optimal(f, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotAFrame) {
      throw Error(ErrorCode::kMissingBounds, "factor has no declared bounds and is not a frame");
    }
    throw;
  }
}

}  // namespace

TensorFrameResult tensor_product_frame(const StarGFrame& f, const StarGFrame& g,
                                       const Tolerance& tol, const CertifyOptions& options) {
  const FrameBounds fb = factor_bounds(f, tol);
  const FrameBounds gb = factor_bounds(g, tol);

  std::vector<AdjointableOp> ops;
  ops.reserve(f.ops().size() * g.ops().size());
  for (const auto& lambda : f.ops()) {
    for (const auto& gamma : g.ops()) ops.push_back(tensor_op(lambda, gamma));
  }
  FrameBounds predicted{tensor_elem(fb.lower, gb.lower), tensor_elem(fb.upper, gb.upper)};

  TensorFrameResult result{
      StarGFrame(tensor_space(f.space(), g.space()), std::move(ops), predicted),
      tensor_op(frame_operator(f), frame_operator(g)), predicted, {}};
  result.verification.operator_residual =
      relative_distance(frame_operator(result.frame), result.predicted_operator);
  result.verification.certificate =
      certify_bounds(result.frame, predicted.lower, predicted.upper, tol, options);
  return result;
}

SandwichConstants sandwich_constants(const AdjointableOp& q, const Tolerance& tol) {
  const AdjointableOp q_star_inv = invert(adjoint_op(q), tol);
  return SandwichConstants{1.0 / op_norm(q_star_inv), op_norm(q)};
}

TensorFrameResult transform_frame(const StarGFrame& f, const AdjointableOp& q,
                                  const ModuleSpace& right_factor, const Tolerance& tol,
                                  const CertifyOptions& options) {
  if (!(tensor_space(q.domain(), right_factor) == f.space())) {
    throw Error(ErrorCode::kSpaceMismatch, "frame space is not H (x) K for the given Q and K");
  }
  const SandwichConstants c = sandwich_constants(q, tol);  // NotInvertible propagates
  const FrameBounds fb = factor_bounds(f, tol);

  const AdjointableOp id_k = AdjointableOp::identity(right_factor);
  const AdjointableOp q_star_i = tensor_op(adjoint_op(q), id_k);
  std::vector<AdjointableOp> ops;
  for (const auto& lambda : f.ops()) ops.push_back(compose(lambda, q_star_i));

  FrameBounds predicted{c.lower * fb.lower, c.upper * fb.upper};
  TensorFrameResult result{
      StarGFrame(f.space(), std::move(ops), predicted),
      compose(compose(tensor_op(q, id_k), frame_operator(f)), q_star_i), predicted, {}};
  result.verification.operator_residual =
      relative_distance(frame_operator(result.frame), result.predicted_operator);
  result.verification.certificate =
      certify_bounds(result.frame, predicted.lower, predicted.upper, tol, options);
  return result;
}

SandwichCheck lemma_sandwich(const AdjointableOp& q, const ModuleSpace& right_factor,
                             const ModuleVector& z, const Tolerance& tol) {
  if (!(z.space() == tensor_space(q.domain(), right_factor))) {
    throw Error(ErrorCode::kSpaceMismatch, "z is not in H (x) K");
  }
  const SandwichConstants c = sandwich_constants(q, tol);
  const AdjointableOp q_star_i =
      tensor_op(adjoint_op(q), AdjointableOp::identity(right_factor));
  const AlgebraElement abs_z = module_abs(z, tol);
  const AlgebraElement abs_w = module_abs(apply(q_star_i, z), tol);

  const AlgebraElement low = abs_w - c.lower * abs_z;
  const AlgebraElement high = c.upper * abs_z - abs_w;
  SandwichCheck out;
  out.margin = std::min(min_eigenvalue(low), min_eigenvalue(high));
  out.holds = loewner_leq(c.lower * abs_z, abs_w, tol) && loewner_leq(abs_w, c.upper * abs_z, tol);
  return out;
}

bool check_lemma_sandwich(const AdjointableOp& q, const ModuleSpace& right_factor,
                          const ModuleVector& z, const Tolerance& tol) {
  return lemma_sandwich(q, right_factor, z, tol).holds;
}

}  // namespace sgf
