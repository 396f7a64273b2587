#include "sgf/star_g_frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace sgf {

StarGFrame::StarGFrame(ModuleSpace space, std::vector<AdjointableOp> ops,
                       std::optional<FrameBounds> declared_bounds)
    : space_(std::move(space)), ops_(std::move(ops)), declared_bounds_(std::move(declared_bounds)) {
  if (ops_.empty()) throw Error(ErrorCode::kInvalidParams, "a frame needs at least one operator");
  for (const auto& op : ops_) {
    if (!(op.domain() == space_)) {
      throw Error(ErrorCode::kSpaceMismatch, "frame operator domain differs from frame space");
    }
  }
  if (declared_bounds_) {
    for (const auto* b : {&declared_bounds_->lower, &declared_bounds_->upper}) {
      if (!(b->shape() == space_.algebra)) {
        throw Error(ErrorCode::kShapeMismatch, "bound lives in the wrong algebra");
      }
      if (!is_invertible(*b)) throw Error(ErrorCode::kNotInvertible, "declared bound");
    }
  }
}

StarGFrame StarGFrame::with_bounds(std::optional<FrameBounds> bounds) const {
  return StarGFrame(space_, ops_, std::move(bounds));
}

const char* to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::kCertifiedExact: return "CertifiedExact";
    case CertificateStatus::kCertifiedByConstruction: return "CertifiedByConstruction";
    case CertificateStatus::kNoCounterexampleFound: return "NoCounterexampleFound";
    case CertificateStatus::kRefuted: return "Refuted";
  }
  return "Unknown";
}

CertificateStatus parse_status(const std::string& s) {
  for (auto st : {CertificateStatus::kCertifiedExact, CertificateStatus::kCertifiedByConstruction,
                  CertificateStatus::kNoCounterexampleFound, CertificateStatus::kRefuted}) {
    if (s == to_string(st)) return st;
  }
  throw Error(ErrorCode::kParse, "unknown certificate status '" + s + "'");
}

AdjointableOp frame_operator(const StarGFrame& frame) {
  AdjointableOp s = AdjointableOp::zero(frame.space(), frame.space());
  for (const auto& op : frame.ops()) s += compose(adjoint_op(op), op);
  return s;
}

AlgebraElement frame_sum(const StarGFrame& frame, const ModuleVector& x) {
  if (!(x.space() == frame.space())) {
    throw Error(ErrorCode::kSpaceMismatch, "vector is not in the frame space");
  }
  AlgebraElement acc = AlgebraElement::zero(frame.space().algebra);
  for (const auto& op : frame.ops()) {
    const ModuleVector y = apply(op, x);
    acc += inner(y, y);
  }
  return acc;
}

FrameModel model_of(const StarGFrame& frame) {
  return FrameModel{frame.space(), InnerForm::kLeft,
                    [frame](const ModuleVector& x) { return frame_sum(frame, x); }};
}

InequalityGap inequality_gap(const FrameModel& model, const AlgebraElement& lower,
                             const AlgebraElement& upper, const ModuleVector& x) {
  const AlgebraElement xx = inner(x, x, model.form);
  const AlgebraElement fs = model.frame_sum(x);
  return InequalityGap{min_eigenvalue(fs - lower * xx * adjoint(lower)),
                       min_eigenvalue(upper * xx * adjoint(upper) - fs)};
}

InequalityGap inequality_gap(const StarGFrame& frame, const AlgebraElement& lower,
                             const AlgebraElement& upper, const ModuleVector& x) {
  return inequality_gap(model_of(frame), lower, upper, x);
}

namespace {

void require_invertible_bounds(const AlgebraElement& lower, const AlgebraElement& upper,
                               const AlgebraShape& shape, const Tolerance& tol) {
  for (const auto* b : {&lower, &upper}) {
    if (!(b->shape() == shape)) throw Error(ErrorCode::kShapeMismatch, "bound algebra");
    if (!is_invertible(*b, tol)) throw Error(ErrorCode::kNotInvertible, "frame bound");
  }
}

RealVector normalized(const RealVector& v) {
  const double n = v.norm();
  return n > 0 ? RealVector(v / n) : v;
}

struct Descent {
  const FrameModel& model;
  const AlgebraElement& lower;
  const AlgebraElement& upper;
  bool lower_side;

  double value(const RealVector& v) const {
    const InequalityGap g = inequality_gap(model, lower, upper, unrealify(model.space, normalized(v)));
    return lower_side ? g.lower : g.upper;
  }

  /// Projected finite-difference descent on the unit sphere.
  RealVector run(RealVector v, const CertifyOptions& options, double* best) const {
    constexpr double kFdStep = 1e-7;
    v = normalized(v);
    double f = value(v);
    for (int step = 0; step < options.descent_steps; ++step) {
      RealVector grad(v.size());
      for (Eigen::Index r = 0; r < v.size(); ++r) {
        RealVector w = v;
        w(r) += kFdStep;
        grad(r) = (value(w) - f) / kFdStep;
      }
      RealVector next = normalized(v - options.descent_step * grad);
      const double fn = value(next);
      if (!(f - fn >= 1e-12)) break;
      v = std::move(next);
      f = fn;
    }
    *best = f;
    return v;
  }
};

}  // namespace

BoundsCertificate sample_certify(const FrameModel& model, const AlgebraElement& lower,
                                 const AlgebraElement& upper, const Tolerance& tol,
                                 const CertifyOptions& options) {
  BoundsCertificate cert;
  cert.method = "sampled+descent";
  cert.tol = tol;

  struct Sample {
    RealVector v;
    InequalityGap gap;
  };
  std::vector<Sample> samples;
  for (const auto& e : module_basis(model.space)) {
    samples.push_back({normalized(realify(e)), {}});
  }
  std::mt19937_64 seeder(options.seed);
  for (std::size_t s = 0; s < options.budget; ++s) {
    samples.push_back({normalized(realify(random_vector(model.space, seeder()))), {}});
  }
  cert.samples_used = samples.size();
  for (auto& s : samples) {
    s.gap = inequality_gap(model, lower, upper, unrealify(model.space, s.v));
  }

  auto refute = [&](const RealVector& v) {
    cert.status = CertificateStatus::kRefuted;
    cert.witness = unrealify(model.space, v);
    return cert;
  };

  const auto worst = std::min_element(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
    return a.gap.worst() < b.gap.worst();
  });
  if (worst->gap.worst() < -tol.eig_slack) return refute(worst->v);

  for (bool lower_side : {true, false}) {
    auto key = [lower_side](const Sample& s) { return lower_side ? s.gap.lower : s.gap.upper; };
    std::vector<const Sample*> order;
    for (const auto& s : samples) order.push_back(&s);
    const std::size_t starts =
        std::min(order.size(), static_cast<std::size_t>(std::max(options.descent_starts, 0)));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts),
                      order.end(), [&](const Sample* a, const Sample* b) { return key(*a) < key(*b); });
    const Descent descent{model, lower, upper, lower_side};
    for (std::size_t k = 0; k < starts; ++k) {
      double best = 0.0;
      RealVector v = descent.run(order[k]->v, options, &best);
      if (best < -tol.eig_slack) {
        // Confirm on the full pair of inequalities before reporting.
        const auto g = inequality_gap(model, lower, upper, unrealify(model.space, v));
        if (g.worst() < -tol.eig_slack) return refute(v);
      }
    }
  }
  cert.status = CertificateStatus::kNoCounterexampleFound;
  return cert;
}

BoundsCertificate certify_bounds(const StarGFrame& frame, const AlgebraElement& lower,
                                 const AlgebraElement& upper, const Tolerance& tol,
                                 const CertifyOptions& options) {
  require_invertible_bounds(lower, upper, frame.space().algebra, tol);
  if (options.force_sampling || !is_central(lower, tol) || !is_central(upper, tol)) {
    return sample_certify(model_of(frame), lower, upper, tol, options);
  }

  BoundsCertificate cert;
  cert.method = "central-spectral";
  cert.tol = tol;
  cert.status = CertificateStatus::kCertifiedExact;

  const std::vector<double> lo = central_squares(lower);
  const std::vector<double> hi = central_squares(upper);
  const std::vector<Matrix> s = flatten(frame_operator(frame));
  const ModuleSpace& space = frame.space();
  for (int t = 0; t < space.algebra.num_blocks(); ++t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(dense::hermitian_part(s[static_cast<std::size_t>(t)]));
    const Eigen::Index last = es.eigenvalues().size() - 1;
    const double low_gap = es.eigenvalues()(0) - lo[static_cast<std::size_t>(t)];
    const double high_gap = hi[static_cast<std::size_t>(t)] - es.eigenvalues()(last);
    if (low_gap >= -tol.eig_slack && high_gap >= -tol.eig_slack) continue;

    // With v a unit eigenvector of flatten(S)_t, the vector whose block-t rows
    // are (v^T, 0, ...) makes the violated gap equal diag(mu, 0, ...) exactly.
    const Vector v = es.eigenvectors().col(low_gap < -tol.eig_slack ? 0 : last);
    const int n = space.algebra.block(t);
    ModuleVector w = ModuleVector::zero(space);
    for (int i = 0; i < space.rank; ++i) {
      for (int c = 0; c < n; ++c) w.coord(i).block(t)(0, c) = v(i * n + c);
    }
    cert.status = CertificateStatus::kRefuted;
    cert.witness = std::move(w);
    return cert;
  }
  return cert;
}

FrameBounds optimal_central_bounds(const StarGFrame& frame, const Tolerance& tol) {
  std::vector<double> lo, hi;
  for (const auto& f : flatten(frame_operator(frame))) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(dense::hermitian_part(f), Eigen::EigenvaluesOnly);
    const RealVector& ev = es.eigenvalues();
    if (ev(0) <= tol.eig_slack) {
      throw Error(ErrorCode::kNotAFrame, "frame operator has a singular block");
    }
    lo.push_back(std::sqrt(ev(0)));
    hi.push_back(std::sqrt(ev(ev.size() - 1)));
  }
  return FrameBounds{AlgebraElement::central(frame.space().algebra, lo),
                     AlgebraElement::central(frame.space().algebra, hi)};
}

FrameBounds bounds_or_optimal(const StarGFrame& frame, const Tolerance& tol) {
  if (frame.declared_bounds()) return *frame.declared_bounds();
  return optimal_central_bounds(frame, tol);
}

StarGFrame frame_from_vectors(const std::vector<ModuleVector>& xs) {
  if (xs.empty()) throw Error(ErrorCode::kInvalidParams, "need at least one vector");
  const ModuleSpace& space = xs.front().space();
  const ModuleSpace line(space.algebra, 1);
  std::vector<AdjointableOp> ops;
  for (const auto& x : xs) {
    if (!(x.space() == space)) throw Error(ErrorCode::kSpaceMismatch, "vectors in different spaces");
    AdjointableOp op = AdjointableOp::zero(space, line);
    for (int j = 0; j < space.rank; ++j) op.entry(j, 0) = adjoint(x.coord(j));
    ops.push_back(std::move(op));
  }
  return StarGFrame(space, std::move(ops));
}

bool is_g_frame(const StarGFrame& frame, double lower, double upper, const Tolerance& tol) {
  if (!(lower > 0) || !(upper > 0)) return false;
  const AlgebraShape& shape = frame.space().algebra;
  const auto cert = certify_bounds(frame, AlgebraElement::scalar(shape, std::sqrt(lower)),
                                   AlgebraElement::scalar(shape, std::sqrt(upper)), tol);
  return cert.status == CertificateStatus::kCertifiedExact;
}

StarGFrame random_frame(const ModuleSpace& space, int num_ops, int max_codomain_rank,
                        std::uint64_t seed) {
  if (num_ops < 1 || max_codomain_rank < 1) {
    throw Error(ErrorCode::kInvalidParams, "num_ops and max_codomain_rank must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rank_dist(1, max_codomain_rank);
  std::vector<int> ranks;
  int total = 0;
  for (int i = 0; i < num_ops; ++i) {
    ranks.push_back(rank_dist(rng));
    total += ranks.back();
  }
  // Enough output dimension for the generic frame condition.
  if (total < space.rank) ranks.front() += space.rank - total;
  std::vector<AdjointableOp> ops;
  for (int r : ranks) ops.push_back(random_op(space, ModuleSpace(space.algebra, r), rng()));
  return StarGFrame(space, std::move(ops));
}

}  // namespace sgf
