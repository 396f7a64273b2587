#pragma once

// Transport of *-g-frames along a *-homomorphism phi: A -> B and a map theta on
// the module with <theta x, theta y>_B = phi(<x, y>_A).
//
// Maps are stored as real matrices on realified coordinates (see realify), so
// conjugate-linear theta (a -> a^*) is handled exactly like linear ones.
// On realified coordinates Re tr <u, v> is the Euclidean dot product for both
// inner forms, so the adjoint of an adjointable operator is its transpose.

#include <functional>
#include <string>
#include <vector>

#include "sgf/star_g_frames.hpp"

namespace sgf {

class StarHomomorphism {
 public:
  StarHomomorphism() = default;
  /// map is 2 dim(target) x 2 dim(source).
  StarHomomorphism(AlgebraShape source, AlgebraShape target, RealMatrix map);

  static StarHomomorphism from_function(
      const AlgebraShape& source, const AlgebraShape& target,
      const std::function<AlgebraElement(const AlgebraElement&)>& f);
  static StarHomomorphism identity(const AlgebraShape& shape);
  /// a -> u a u^*.
  static StarHomomorphism unitary_conjugation(const AlgebraElement& u);
  /// Block t of the image is block perm[t] of the argument. Blocks must match in size.
  static StarHomomorphism block_permutation(const AlgebraShape& shape, const std::vector<int>& perm);

  const AlgebraShape& source() const { return source_; }
  const AlgebraShape& target() const { return target_; }
  const RealMatrix& map() const { return map_; }

  AlgebraElement operator()(const AlgebraElement& a) const;

 private:
  AlgebraShape source_;
  AlgebraShape target_;
  RealMatrix map_;
};

struct HomomorphismCheck {
  bool complex_linear = false;
  bool multiplicative = false;
  bool star_preserving = false;
  std::string failure;  // first failing basis pair, if any

  bool ok() const { return complex_linear && multiplicative && star_preserving; }
};

HomomorphismCheck check_homomorphism(const StarHomomorphism& phi, const Tolerance& tol = {});
bool validate_homomorphism(const StarHomomorphism& phi, const Tolerance& tol = {});

/// phi(a) <= phi(b). Throws PreconditionFailed unless a <= b.
bool check_monotone(const StarHomomorphism& phi, const AlgebraElement& a, const AlgebraElement& b,
                    const Tolerance& tol = {});

struct CompatibleMap {
  ModuleSpace source_space;
  ModuleSpace target_space;
  InnerForm source_form = InnerForm::kLeft;
  InnerForm target_form = InnerForm::kLeft;
  RealMatrix map;  // target.real_dim() x source.real_dim()
  StarHomomorphism partner;

  ModuleVector operator()(const ModuleVector& x) const;
};

/// Real matrix of an arbitrary real-linear module map.
RealMatrix realify_map(const ModuleSpace& source, const ModuleSpace& target,
                       const std::function<ModuleVector(const ModuleVector&)>& f);

struct CompatibilityCheck {
  double intertwining_residual = 0.0;  // max over realified basis pairs
  double min_singular_value = 0.0;
  bool intertwines = false;
  bool surjective = false;

  bool ok() const { return intertwines && surjective; }
};

CompatibilityCheck check_compatible(const CompatibleMap& theta, const Tolerance& tol = {});

struct TransportRecord {
  FrameBounds source_bounds;
  FrameBounds transported_bounds;  // (phi(A), phi(B))
  BoundsCertificate source_certificate;
  BoundsCertificate certificate;  // transported bounds in the target structure
  double residual = 0.0;          // max ||<S_B theta x, theta y>_B - phi(<S_A x, y>_A)||
  double intertwining_residual = 0.0;
  double commutation_residual = 0.0;
  double source_adjoint_residual = 0.0;
  double target_adjoint_residual = 0.0;
  bool adjointable_in_source = false;
  bool adjointable_in_target = false;

  bool passed(const Tolerance& tol) const;
};

/// Throws PreconditionFailed when phi is not a *-homomorphism or an op is not
/// an endomorphism of H, IncompatibleMap when theta fails its invariants, and
/// CommutationFailed when theta Lambda_i != Lambda_i theta on a basis vector.
TransportRecord transport_frame(const StarGFrame& frame, const StarHomomorphism& phi,
                                const CompatibleMap& theta, const Tolerance& tol = {},
                                const CertifyOptions& options = {});

struct TransportSetup {
  StarGFrame frame;
  StarHomomorphism phi;
  CompatibleMap theta;
};

/// theta = identity, phi = identity, standard left structure on both sides.
TransportSetup identity_transport(const StarGFrame& frame);

/// A as a module over itself: source <a,b> = a^* b, target <a,b> = a b^*,
/// theta(a) = a^*, phi = identity, frame {lambda_i I}.
TransportSetup fixture_adjoint_map(const AlgebraShape& algebra, const std::vector<double>& lambdas);

struct BanachStoneParams {
  int p = 1;                // |X| = |Y|
  int d = 1;                // fiber dimension
  std::vector<int> perm;    // perm[y] = x
  std::vector<Matrix> h;    // one d x d unitary per y
  std::vector<Matrix> L;    // frame matrices, d x d
};

/// C(X, C^d) as a rank-d module over C(X) = C^p, (T f)(y) = h(y) f(perm(y)),
/// phi(psi) = psi o perm, Lambda_i acting fiberwise by L_i.
TransportSetup fixture_banach_stone(const BanachStoneParams& params, const Tolerance& tol = {});

}  // namespace sgf
