#include "sgf/transport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sgf {

StarHomomorphism::StarHomomorphism(AlgebraShape source, AlgebraShape target, RealMatrix map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.rows() != 2 * target_.dim() || map_.cols() != 2 * source_.dim()) {
    throw Error(ErrorCode::kShapeMismatch, "homomorphism matrix has the wrong size");
  }
}

StarHomomorphism StarHomomorphism::from_function(
    const AlgebraShape& source, const AlgebraShape& target,
    const std::function<AlgebraElement(const AlgebraElement&)>& f) {
  const int n = 2 * source.dim();
  RealMatrix m(2 * target.dim(), n);
  for (int c = 0; c < n; ++c) {
    RealVector e = RealVector::Zero(n);
    e(c) = 1.0;
    const AlgebraElement image = f(unrealify(source, e));
    if (!(image.shape() == target)) {
      throw Error(ErrorCode::kShapeMismatch, "function image is not in the target algebra");
    }
    m.col(c) = realify(image);
  }
  return StarHomomorphism(source, target, std::move(m));
}

StarHomomorphism StarHomomorphism::identity(const AlgebraShape& shape) {
  const int n = 2 * shape.dim();
  return StarHomomorphism(shape, shape, RealMatrix::Identity(n, n));
}

StarHomomorphism StarHomomorphism::unitary_conjugation(const AlgebraElement& u) {
  const AlgebraElement u_star = adjoint(u);
  return from_function(u.shape(), u.shape(),
                       [&](const AlgebraElement& a) { return u * a * u_star; });
}

StarHomomorphism StarHomomorphism::block_permutation(const AlgebraShape& shape,
                                                     const std::vector<int>& perm) {
  const int nb = shape.num_blocks();
  std::vector<bool> seen(static_cast<std::size_t>(nb), false);
  if (static_cast<int>(perm.size()) != nb) {
    throw Error(ErrorCode::kInvalidParams, "permutation length must equal the block count");
  }
  std::vector<int> target_blocks;
  for (int t = 0; t < nb; ++t) {
    const int s = perm[static_cast<std::size_t>(t)];
    if (s < 0 || s >= nb || seen[static_cast<std::size_t>(s)]) {
      throw Error(ErrorCode::kInvalidParams, "block map is not a bijection");
    }
    seen[static_cast<std::size_t>(s)] = true;
    target_blocks.push_back(shape.block(s));
  }
  const AlgebraShape target(target_blocks);
  return from_function(shape, target, [&](const AlgebraElement& a) {
    std::vector<Matrix> blocks;
    for (int t = 0; t < nb; ++t) blocks.push_back(a.block(perm[static_cast<std::size_t>(t)]));
    return AlgebraElement(target, std::move(blocks));
  });
}

AlgebraElement StarHomomorphism::operator()(const AlgebraElement& a) const {
  if (!(a.shape() == source_)) throw Error(ErrorCode::kShapeMismatch, "argument algebra");
  return unrealify(target_, RealVector(map_ * realify(a)));
}

namespace {

std::vector<AlgebraElement> algebra_basis(const AlgebraShape& shape) {
  std::vector<AlgebraElement> basis;
  for (int t = 0; t < shape.num_blocks(); ++t) {
    for (int p = 0; p < shape.block(t); ++p) {
      for (int q = 0; q < shape.block(t); ++q) basis.push_back(AlgebraElement::matrix_unit(shape, t, p, q));
    }
  }
  return basis;
}

bool close(const AlgebraElement& lhs, const AlgebraElement& rhs, const Tolerance& tol) {
  return operator_norm(lhs - rhs) <= tol.eq_rtol * (1.0 + operator_norm(rhs));
}

std::vector<ModuleVector> real_basis(const ModuleSpace& space) {
  std::vector<ModuleVector> basis;
  const int n = space.real_dim();
  for (int c = 0; c < n; ++c) {
    RealVector e = RealVector::Zero(n);
    e(c) = 1.0;
    basis.push_back(unrealify(space, e));
  }
  return basis;
}

}  // namespace

HomomorphismCheck check_homomorphism(const StarHomomorphism& phi, const Tolerance& tol) {
  HomomorphismCheck out{true, true, true, {}};
  const auto basis = algebra_basis(phi.source());
  const Complex i(0.0, 1.0);
  for (std::size_t a = 0; a < basis.size() && out.complex_linear; ++a) {
    if (!close(phi(i * basis[a]), i * phi(basis[a]), tol)) {
      out.complex_linear = false;
      out.failure = "phi(i e) != i phi(e) at basis element " + std::to_string(a);
    }
  }
  for (std::size_t a = 0; a < basis.size() && out.star_preserving; ++a) {
    if (!close(phi(adjoint(basis[a])), adjoint(phi(basis[a])), tol)) {
      out.star_preserving = false;
      if (out.failure.empty()) out.failure = "phi(e^*) != phi(e)^* at basis element " + std::to_string(a);
    }
  }
  std::vector<AlgebraElement> images;
  for (const auto& e : basis) images.push_back(phi(e));
  for (std::size_t a = 0; a < basis.size() && out.multiplicative; ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (!close(phi(basis[a] * basis[b]), images[a] * images[b], tol)) {
        out.multiplicative = false;
        if (out.failure.empty()) {
          out.failure = "phi(e e') != phi(e) phi(e') at basis pair (" + std::to_string(a) + ", " +
                        std::to_string(b) + ")";
        }
        break;
      }
    }
  }
  return out;
}

bool validate_homomorphism(const StarHomomorphism& phi, const Tolerance& tol) {
  return check_homomorphism(phi, tol).ok();
}

bool check_monotone(const StarHomomorphism& phi, const AlgebraElement& a, const AlgebraElement& b,
                    const Tolerance& tol) {
  if (!loewner_leq(a, b, tol)) throw Error(ErrorCode::kPreconditionFailed, "a is not <= b");
  return loewner_leq(phi(a), phi(b), tol);
}

ModuleVector CompatibleMap::operator()(const ModuleVector& x) const {
  if (!(x.space() == source_space)) throw Error(ErrorCode::kSpaceMismatch, "theta argument");
  return unrealify(target_space, RealVector(map * realify(x)));
}

RealMatrix realify_map(const ModuleSpace& source, const ModuleSpace& target,
                       const std::function<ModuleVector(const ModuleVector&)>& f) {
  const auto basis = real_basis(source);
  RealMatrix m(target.real_dim(), source.real_dim());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    m.col(static_cast<Eigen::Index>(c)) = realify(f(basis[c]));
  }
  return m;
}

CompatibilityCheck check_compatible(const CompatibleMap& theta, const Tolerance& tol) {
  if (theta.map.rows() != theta.target_space.real_dim() ||
      theta.map.cols() != theta.source_space.real_dim()) {
    throw Error(ErrorCode::kIncompatibleMap, "theta matrix has the wrong size");
  }
  if (!(theta.partner.source() == theta.source_space.algebra) ||
      !(theta.partner.target() == theta.target_space.algebra)) {
    throw Error(ErrorCode::kIncompatibleMap, "partner homomorphism does not match the module algebras");
  }
  CompatibilityCheck out;
  const auto basis = real_basis(theta.source_space);
  std::vector<ModuleVector> images;
  for (const auto& e : basis) images.push_back(theta(e));
  bool ok = true;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const AlgebraElement lhs = inner(images[r], images[s], theta.target_form);
      const AlgebraElement rhs = theta.partner(inner(basis[r], basis[s], theta.source_form));
      const double diff = operator_norm(lhs - rhs);
      out.intertwining_residual = std::max(out.intertwining_residual, diff);
      ok = ok && diff <= tol.eq_rtol * (1.0 + operator_norm(rhs));
    }
  }
  out.intertwines = ok;
  if (theta.map.rows() <= theta.map.cols()) {
    Eigen::JacobiSVD<RealMatrix> svd(theta.map);
    out.min_singular_value = svd.singularValues()(svd.singularValues().size() - 1);
    out.surjective = out.min_singular_value > tol.eig_slack;
  }
  return out;
}

bool TransportRecord::passed(const Tolerance& tol) const {
  return residual <= tol.eq_rtol && !certificate.refuted() && adjointable_in_source &&
         adjointable_in_target;
}

namespace {

/// One module structure on realified coordinates: the space, its inner form
/// and the realified frame operators.
struct Structure {
  ModuleSpace space;
  InnerForm form;
  const std::vector<RealMatrix>* ops;

  AlgebraElement frame_sum(const ModuleVector& x) const {
    const RealVector v = realify(x);
    AlgebraElement acc = AlgebraElement::zero(space.algebra);
    for (const auto& r : *ops) {
      const ModuleVector y = unrealify(space, RealVector(r * v));
      acc += inner(y, y, form);
    }
    return acc;
  }

  FrameModel model() const {
    Structure copy = *this;
    return FrameModel{space, form, [copy](const ModuleVector& x) { return copy.frame_sum(x); }};
  }

  /// Max over basis pairs of ||<R u, v> - <u, R^T v>||, relative to 1 + ||R||.
  double adjoint_residual() const {
    const auto basis = real_basis(space);
    double worst = 0.0;
    for (const auto& r : *ops) {
      const double scale = 1.0 + r.norm();
      std::vector<ModuleVector> fwd, bwd;
      for (const auto& e : basis) {
        fwd.push_back(unrealify(space, RealVector(r * realify(e))));
        bwd.push_back(unrealify(space, RealVector(r.transpose() * realify(e))));
      }
      for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
          const double d = operator_norm(inner(fwd[a], basis[b], form) - inner(basis[a], bwd[b], form));
          worst = std::max(worst, d / scale);
        }
      }
    }
    return worst;
  }
};

/// Realified diagonal scaling by c_t on every entry that lives in block t.
RealVector block_scaling(const ModuleSpace& space, const std::vector<double>& c) {
  RealVector d(space.real_dim());
  Eigen::Index k = 0;
  for (int i = 0; i < space.rank; ++i) {
    for (int t = 0; t < space.algebra.num_blocks(); ++t) {
      const int entries = 2 * space.algebra.block(t) * space.algebra.block(t);
      d.segment(k, entries).setConstant(c[static_cast<std::size_t>(t)]);
      k += entries;
    }
  }
  return d;
}

BoundsCertificate certify_in_structure(const Structure& st, const RealMatrix& frame_op,
                                       bool adjointable, const AlgebraElement& lower,
                                       const AlgebraElement& upper, const Tolerance& tol,
                                       const CertifyOptions& options) {
  for (const auto* b : {&lower, &upper}) {
    if (!(b->shape() == st.space.algebra)) throw Error(ErrorCode::kShapeMismatch, "bound algebra");
    if (!is_invertible(*b, tol)) throw Error(ErrorCode::kNotInvertible, "frame bound");
  }
  if (options.force_sampling || !adjointable || !is_central(lower, tol) || !is_central(upper, tol)) {
    return sample_certify(st.model(), lower, upper, tol, options);
  }

  // For a self-adjoint T, <T x, x> >= 0 for all x iff the symmetric realified
  // matrix of T is positive semidefinite.
  BoundsCertificate cert;
  cert.method = "central-spectral";
  cert.tol = tol;
  cert.status = CertificateStatus::kCertifiedExact;
  const RealMatrix sym = 0.5 * (frame_op + frame_op.transpose());
  const RealVector lo = block_scaling(st.space, central_squares(lower));
  const RealVector hi = block_scaling(st.space, central_squares(upper));
  const RealMatrix gaps[2] = {RealMatrix(sym) - RealMatrix(lo.asDiagonal()),
                              RealMatrix(hi.asDiagonal()) - sym};
  for (const auto& g : gaps) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
    if (es.eigenvalues()(0) >= -tol.eig_slack) continue;
    // T x = mu x gives <T x, x> = mu <x, x>; rescaling so that <x, x> has unit
    // norm makes the smallest eigenvalue of the gap exactly mu.
    ModuleVector w = unrealify(st.space, RealVector(es.eigenvectors().col(0)));
    const double n = operator_norm(inner(w, w, st.form));
    w *= Complex(1.0 / std::sqrt(n), 0.0);
    cert.status = CertificateStatus::kRefuted;
    cert.witness = std::move(w);
    return cert;
  }
  return cert;
}

}  // namespace

TransportRecord transport_frame(const StarGFrame& frame, const StarHomomorphism& phi,
                                const CompatibleMap& theta, const Tolerance& tol,
                                const CertifyOptions& options) {
  const HomomorphismCheck hc = check_homomorphism(phi, tol);
  if (!hc.ok()) throw Error(ErrorCode::kPreconditionFailed, "phi is not a *-homomorphism: " + hc.failure);
  if (!(theta.partner.source() == phi.source()) || !(theta.partner.target() == phi.target()) ||
      (theta.partner.map() - phi.map()).norm() > tol.eq_rtol * (1.0 + phi.map().norm())) {
    throw Error(ErrorCode::kIncompatibleMap, "theta is paired with a different homomorphism");
  }
  if (!(theta.source_space == frame.space()) ||
      theta.target_space.real_dim() != theta.source_space.real_dim()) {
    throw Error(ErrorCode::kIncompatibleMap, "theta must map the frame space onto itself");
  }
  for (const auto& op : frame.ops()) {
    if (!(op.codomain() == frame.space())) {
      throw Error(ErrorCode::kPreconditionFailed, "transport needs V_i = H for every operator");
    }
  }
  const CompatibilityCheck cc = check_compatible(theta, tol);
  if (!cc.intertwines) {
    throw Error(ErrorCode::kIncompatibleMap,
                "theta does not intertwine the inner products (residual " +
                    std::to_string(cc.intertwining_residual) + ")");
  }
  if (!cc.surjective) throw Error(ErrorCode::kIncompatibleMap, "theta is not surjective");

  TransportRecord rec;
  rec.intertwining_residual = cc.intertwining_residual;

  std::vector<RealMatrix> ops;
  for (const auto& op : frame.ops()) ops.push_back(realify(op));

  const double theta_norm = theta.map.norm();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const RealMatrix c = theta.map * ops[i] - ops[i] * theta.map;
    const double scale = 1.0 + theta_norm * ops[i].norm();
    for (Eigen::Index r = 0; r < c.cols(); ++r) {
      const double d = c.col(r).norm();
      rec.commutation_residual = std::max(rec.commutation_residual, d / scale);
      if (d > tol.eq_rtol * scale) {
        throw Error(ErrorCode::kCommutationFailed, "theta Lambda_" + std::to_string(i) +
                                                       " != Lambda_" + std::to_string(i) +
                                                       " theta on real basis vector " +
                                                       std::to_string(r));
      }
    }
  }

  const Structure source{frame.space(), theta.source_form, &ops};
  const Structure target{theta.target_space, theta.target_form, &ops};
  rec.source_adjoint_residual = source.adjoint_residual();
  rec.target_adjoint_residual = target.adjoint_residual();
  rec.adjointable_in_source = rec.source_adjoint_residual <= tol.eq_rtol;
  rec.adjointable_in_target = rec.target_adjoint_residual <= tol.eq_rtol;

  // Both structures share the coordinates and the transpose adjoint, so the
  // realified frame operator is the same matrix; S_A and S_B differ only in
  // which inner product reads them.
  RealMatrix s = RealMatrix::Zero(frame.space().real_dim(), frame.space().real_dim());
  for (const auto& r : ops) s += r.transpose() * r;

  const auto basis = real_basis(frame.space());
  std::vector<ModuleVector> theta_e, s_theta_e, s_e;
  for (const auto& e : basis) {
    theta_e.push_back(theta(e));
    s_theta_e.push_back(unrealify(theta.target_space, RealVector(s * realify(theta_e.back()))));
    s_e.push_back(unrealify(frame.space(), RealVector(s * realify(e))));
  }
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const AlgebraElement lhs = inner(s_theta_e[a], theta_e[b], theta.target_form);
      const AlgebraElement rhs = phi(inner(s_e[a], basis[b], theta.source_form));
      rec.residual = std::max(rec.residual, operator_norm(lhs - rhs));
    }
  }

  rec.source_bounds = bounds_or_optimal(frame, tol);
  rec.transported_bounds = FrameBounds{phi(rec.source_bounds.lower), phi(rec.source_bounds.upper)};
  rec.source_certificate = certify_in_structure(source, s, rec.adjointable_in_source,
                                                rec.source_bounds.lower, rec.source_bounds.upper,
                                                tol, options);
  rec.certificate = certify_in_structure(target, s, rec.adjointable_in_target,
                                         rec.transported_bounds.lower,
                                         rec.transported_bounds.upper, tol, options);
  return rec;
}

TransportSetup identity_transport(const StarGFrame& frame) {
  const ModuleSpace& space = frame.space();
  const StarHomomorphism phi = StarHomomorphism::identity(space.algebra);
  const int n = space.real_dim();
  return TransportSetup{frame, phi,
                        CompatibleMap{space, space, InnerForm::kLeft, InnerForm::kLeft,
                                      RealMatrix::Identity(n, n), phi}};
}

TransportSetup fixture_adjoint_map(const AlgebraShape& algebra, const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw Error(ErrorCode::kInvalidParams, "need at least one lambda");
  double total = 0.0;
  for (double l : lambdas) {
    if (l == 0.0 || !std::isfinite(l)) {
      throw Error(ErrorCode::kInvalidParams, "lambdas must be finite and nonzero");
    }
    total += l * l;
  }
  const ModuleSpace space(algebra, 1);
  std::vector<AdjointableOp> ops;
  for (double l : lambdas) ops.push_back(Complex(l, 0.0) * AdjointableOp::identity(space));
  const AlgebraElement tight = AlgebraElement::scalar(algebra, std::sqrt(total));
  StarGFrame frame(space, std::move(ops), FrameBounds{tight, tight});

  const StarHomomorphism phi = StarHomomorphism::identity(algebra);
  const RealMatrix star = realify_map(space, space, [](const ModuleVector& x) {
    return ModuleVector(x.space(), {adjoint(x.coord(0))});
  });
  return TransportSetup{std::move(frame), phi,
                        CompatibleMap{space, space, InnerForm::kRight, InnerForm::kLeft, star, phi}};
}

namespace {

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != c && m(r, c) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

}  // namespace

TransportSetup fixture_banach_stone(const BanachStoneParams& params, const Tolerance& tol) {
  const int p = params.p;
  const int d = params.d;
  if (p < 1 || d < 1) throw Error(ErrorCode::kInvalidParams, "p and d must be >= 1");
  if (static_cast<int>(params.perm.size()) != p) {
    throw Error(ErrorCode::kInvalidParams, "perm must have p entries");
  }
  std::vector<bool> seen(static_cast<std::size_t>(p), false);
  for (int x : params.perm) {
    if (x < 0 || x >= p || seen[static_cast<std::size_t>(x)]) {
      throw Error(ErrorCode::kInvalidParams, "perm is not a bijection Y -> X");
    }
    seen[static_cast<std::size_t>(x)] = true;
  }
  if (static_cast<int>(params.h.size()) != p) throw Error(ErrorCode::kInvalidParams, "need p unitaries h");
  for (const auto& h : params.h) {
    if (h.rows() != d || h.cols() != d) throw Error(ErrorCode::kInvalidParams, "h must be d x d");
    if ((h.adjoint() * h - Matrix::Identity(d, d)).norm() > tol.eq_rtol) {
      throw Error(ErrorCode::kInvalidParams, "h(y) is not unitary");
    }
    if (!is_diagonal(h)) throw Error(ErrorCode::kInvalidParams, "h(y) must be diagonal");
  }
  if (params.L.empty()) throw Error(ErrorCode::kInvalidParams, "need at least one frame matrix L");
  for (const auto& l : params.L) {
    if (l.rows() != d || l.cols() != d) throw Error(ErrorCode::kInvalidParams, "L must be d x d");
    if (!is_diagonal(l)) throw Error(ErrorCode::kInvalidParams, "L_i must be diagonal");
  }

  const AlgebraShape points(std::vector<int>(static_cast<std::size_t>(p), 1));
  const ModuleSpace space(points, d);
  const AlgebraElement unit = AlgebraElement::unit(points);

  // (Lambda f)_j = sum_i L_ji f_i, i.e. entry (i, j) of the right action is L_ji.
  std::vector<AdjointableOp> ops;
  for (const auto& l : params.L) {
    AdjointableOp op = AdjointableOp::zero(space, space);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) op.entry(i, j) = l(j, i) * unit;
    }
    ops.push_back(std::move(op));
  }
  StarGFrame frame(space, std::move(ops));
  try {
    frame = frame.with_bounds(optimal_central_bounds(frame, tol));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotAFrame) {
      throw Error(ErrorCode::kInvalidParams, "the L matrices do not form a frame");
    }
    throw;
  }

  const StarHomomorphism phi = StarHomomorphism::block_permutation(points, params.perm);
  const RealMatrix t = realify_map(space, space, [&](const ModuleVector& f) {
    ModuleVector out = ModuleVector::zero(space);
    for (int y = 0; y < p; ++y) {
      const int x = params.perm[static_cast<std::size_t>(y)];
      const Matrix& h = params.h[static_cast<std::size_t>(y)];
      for (int j = 0; j < d; ++j) {
        Complex acc(0.0, 0.0);
        for (int i = 0; i < d; ++i) acc += h(j, i) * f.coord(i).block(x)(0, 0);
        out.coord(j).block(y)(0, 0) = acc;
      }
    }
    return out;
  });
  return TransportSetup{std::move(frame), phi,
                        CompatibleMap{space, space, InnerForm::kLeft, InnerForm::kLeft, t, phi}};
}

}  // namespace sgf
