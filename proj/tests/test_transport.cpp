#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace sgf;

namespace {

const AlgebraShape kM2({2});
const Complex kI(0.0, 1.0);

StarHomomorphism transpose_map(const AlgebraShape& shape) {
  return StarHomomorphism::from_function(shape, shape, [](const AlgebraElement& a) {
    AlgebraElement out = a;
    for (int t = 0; t < a.shape().num_blocks(); ++t) out.block(t) = a.block(t).transpose();
    return out;
  });
}

BanachStoneParams cycle_params(int p, int d) {
  BanachStoneParams bs;
  bs.p = p;
  bs.d = d;
  for (int y = 0; y < p; ++y) bs.perm.push_back((y + 1) % p);
  bs.h.assign(static_cast<std::size_t>(p), Matrix::Identity(d, d));
  Matrix l = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) l(i, i) = i + 1.0;
  bs.L = {l};
  return bs;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kParse;
}

}  // namespace

TEST(ValidateHomomorphism, IdentityAndUnitaryConjugation) {
  EXPECT_TRUE(validate_homomorphism(StarHomomorphism::identity(kM2)));
  EXPECT_TRUE(validate_homomorphism(StarHomomorphism::identity(AlgebraShape({2, 1, 3}))));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto u = random_element(AlgebraShape({2, 3}), s, ElementKind::kUnitary);
    const auto phi = StarHomomorphism::unitary_conjugation(u);
    EXPECT_TRUE(validate_homomorphism(phi));
    const auto a = random_element(u.shape(), 10 + s, ElementKind::kGeneric);
    EXPECT_TRUE(approx_equal(phi(a), u * a * adjoint(u)));
  }
}

TEST(ValidateHomomorphism, TransposeFailsMultiplicativity) {
  // Matrix-unit oracle: (e12 e21)^T = e11 but e12^T e21^T = e21 e12 = e22.
  const auto e = [](int p, int q) { return AlgebraElement::matrix_unit(kM2, 0, p, q); };
  const auto phi = transpose_map(kM2);
  EXPECT_EQ(phi(e(0, 1) * e(1, 0)), e(0, 0));
  EXPECT_EQ(phi(e(0, 1)) * phi(e(1, 0)), e(1, 1));

  const auto check = check_homomorphism(phi);
  EXPECT_TRUE(check.complex_linear);
  EXPECT_TRUE(check.star_preserving);
  EXPECT_FALSE(check.multiplicative);
  EXPECT_FALSE(check.failure.empty());
  EXPECT_FALSE(validate_homomorphism(phi));
}

TEST(ValidateHomomorphism, RejectsConjugateLinearMaps) {
  const auto conj = StarHomomorphism::from_function(kM2, kM2, [](const AlgebraElement& a) {
    AlgebraElement out = a;
    out.block(0) = a.block(0).conjugate();
    return out;
  });
  const auto check = check_homomorphism(conj);
  EXPECT_FALSE(check.complex_linear);
  EXPECT_FALSE(check.ok());
}

TEST(BlockPermutation, MovesBlocks) {
  const AlgebraShape shape({2, 2, 2});
  const auto phi = StarHomomorphism::block_permutation(shape, {2, 0, 1});
  EXPECT_TRUE(validate_homomorphism(phi));
  const auto a = random_element(shape, 1, ElementKind::kGeneric);
  const auto b = phi(a);
  EXPECT_EQ(b.block(0), a.block(2));
  EXPECT_EQ(b.block(1), a.block(0));
  EXPECT_EQ(b.block(2), a.block(1));
  const auto mixed = StarHomomorphism::block_permutation(AlgebraShape({2, 1}), {1, 0});
  EXPECT_EQ(mixed.target(), AlgebraShape({1, 2}));
  EXPECT_TRUE(validate_homomorphism(mixed));
  EXPECT_THROW(StarHomomorphism::block_permutation(shape, {0, 0, 1}), Error);
}

TEST(CheckMonotone, Examples) {
  const auto id = StarHomomorphism::identity(kM2);
  const auto a = random_element(kM2, 1, ElementKind::kPositiveInvertible);
  EXPECT_TRUE(check_monotone(id, a, a + random_element(kM2, 2, ElementKind::kPositiveInvertible)));
  EXPECT_TRUE(check_monotone(id, AlgebraElement::zero(kM2), AlgebraElement::zero(kM2)));
  EXPECT_EQ(code_of([&] { check_monotone(id, 2.0 * a, a); }), ErrorCode::kPreconditionFailed);
}

TEST(CheckMonotone, Sweep) {
  const AlgebraShape shape({2, 2});
  for (std::uint64_t s = 0; s < 100; ++s) {
    StarHomomorphism phi;
    switch (s % 3) {
      case 0: phi = StarHomomorphism::identity(shape); break;
      case 1: phi = StarHomomorphism::unitary_conjugation(random_element(shape, s, ElementKind::kUnitary)); break;
      default: phi = StarHomomorphism::block_permutation(shape, {1, 0}); break;
    }
    ASSERT_TRUE(validate_homomorphism(phi));
    const auto a = random_element(shape, 1000 + s, ElementKind::kHermitian);
    const auto b = a + random_element(shape, 2000 + s, ElementKind::kPositiveInvertible);
    EXPECT_TRUE(check_monotone(phi, a, b));
  }
}

TEST(TransportFrame, IdentityReproducesSourceCertificate) {
  const ModuleSpace h(AlgebraShape({2, 1}), 2);
  std::vector<AdjointableOp> ops;
  for (std::uint64_t i = 0; i < 3; ++i) ops.push_back(random_op(h, h, i));
  const StarGFrame f(h, ops);
  const auto setup = identity_transport(f);
  const auto rec = transport_frame(setup.frame, setup.phi, setup.theta);
  EXPECT_EQ(rec.residual, 0.0);
  EXPECT_EQ(rec.commutation_residual, 0.0);
  EXPECT_EQ(rec.certificate, rec.source_certificate);
  const auto opt = optimal_central_bounds(f);
  EXPECT_EQ(rec.certificate, certify_bounds(f, opt.lower, opt.upper));
  EXPECT_EQ(rec.certificate.status, CertificateStatus::kCertifiedExact);
  EXPECT_TRUE(rec.passed(Tolerance{}));
}

TEST(FixtureAdjointMap, Examples) {
  struct Case {
    std::vector<double> lambdas;
    double tight;
  };
  for (const auto& c : {Case{{1}, 1.0}, Case{{1, 1}, std::sqrt(2.0)}, Case{{1, 2}, std::sqrt(5.0)}}) {
    const auto setup = fixture_adjoint_map(kM2, c.lambdas);
    EXPECT_EQ(setup.theta.source_form, InnerForm::kRight);
    EXPECT_EQ(setup.theta.target_form, InnerForm::kLeft);
    const auto rec = transport_frame(setup.frame, setup.phi, setup.theta);
    EXPECT_LE(rec.residual, 1e-10);
    EXPECT_TRUE(approx_equal(rec.transported_bounds.lower, c.tight * AlgebraElement::unit(kM2)));
    EXPECT_TRUE(approx_equal(rec.transported_bounds.upper, c.tight * AlgebraElement::unit(kM2)));
    EXPECT_EQ(rec.certificate.status, CertificateStatus::kCertifiedExact);
    EXPECT_TRUE(rec.adjointable_in_source);
    EXPECT_TRUE(rec.adjointable_in_target);
    EXPECT_TRUE(rec.passed(Tolerance{}));
  }
}

TEST(FixtureAdjointMap, HandComputedIdentity) {
  // S = 5I, theta(a) = a^*: <S theta x, theta y>_l = 5 x^* y = phi(<S x, y>_r).
  const auto setup = fixture_adjoint_map(kM2, {1, 2});
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto a = random_element(kM2, 2 * s, ElementKind::kGeneric);
    const auto b = random_element(kM2, 2 * s + 1, ElementKind::kGeneric);
    const ModuleSpace m(kM2, 1);
    const auto ta = setup.theta(ModuleVector(m, {a})).coord(0);
    const auto tb = setup.theta(ModuleVector(m, {b})).coord(0);
    EXPECT_LE(test::dist(ta, adjoint(a)), 1e-14);
    const auto lhs = (5.0 * ta) * adjoint(tb);
    const auto rhs = adjoint(5.0 * a) * b;
    EXPECT_LE(test::dist(lhs, rhs), 1e-12);
  }
}

TEST(FixtureAdjointMap, ThetaIsConjugateLinear) {
  const auto setup = fixture_adjoint_map(kM2, {1, 2});
  const ModuleSpace m(kM2, 1);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ModuleVector x(m, {random_element(kM2, s, ElementKind::kGeneric)});
    EXPECT_EQ(setup.theta(kI * x), -kI * setup.theta(x));
  }
}

TEST(FixtureAdjointMap, InvalidParams) {
  EXPECT_EQ(code_of([] { fixture_adjoint_map(kM2, {}); }), ErrorCode::kInvalidParams);
  EXPECT_EQ(code_of([] { fixture_adjoint_map(kM2, {1, 0}); }), ErrorCode::kInvalidParams);
}

TEST(FixtureBanachStone, TrivialCase) {
  const auto setup = fixture_banach_stone(cycle_params(1, 1));
  const auto rec = transport_frame(setup.frame, setup.phi, setup.theta);
  EXPECT_EQ(rec.residual, 0.0);
  EXPECT_EQ(rec.certificate.status, CertificateStatus::kCertifiedExact);
}

TEST(FixtureBanachStone, ThreeCycle) {
  const auto setup = fixture_banach_stone(cycle_params(3, 2));
  EXPECT_TRUE(validate_homomorphism(setup.phi));
  const auto rec = transport_frame(setup.frame, setup.phi, setup.theta);
  EXPECT_LE(rec.residual, 1e-10);
  EXPECT_FALSE(rec.certificate.refuted());
  EXPECT_TRUE(rec.passed(Tolerance{}));
}

TEST(FixtureBanachStone, DiagonalPhasesCommute) {
  BanachStoneParams bs = cycle_params(2, 2);
  bs.perm = {1, 0};
  bs.h = {Matrix(Eigen::Vector2cd(std::polar(1.0, 0.3), std::polar(1.0, -1.1)).asDiagonal()),
          Matrix(Eigen::Vector2cd(std::polar(1.0, 2.0), std::polar(1.0, 0.7)).asDiagonal())};
  const auto setup = fixture_banach_stone(bs);
  const auto rec = transport_frame(setup.frame, setup.phi, setup.theta);
  EXPECT_LE(rec.commutation_residual, 1e-12);
  EXPECT_LE(rec.residual, 1e-10);
  EXPECT_TRUE(approx_equal(rec.transported_bounds.lower, setup.phi(rec.source_bounds.lower)));
  EXPECT_TRUE(approx_equal(rec.transported_bounds.upper, setup.phi(rec.source_bounds.upper)));
  EXPECT_EQ(rec.certificate.status, CertificateStatus::kCertifiedExact);
}

TEST(FixtureBanachStone, ThetaActsPointwise) {
  // (T f)(y) = h(y) f(perm(y)), checked coordinate by coordinate.
  BanachStoneParams bs = cycle_params(3, 2);
  bs.h[1] = Matrix(Eigen::Vector2cd(kI, -1.0).asDiagonal());
  const auto setup = fixture_banach_stone(bs);
  const auto f = random_vector(setup.frame.space(), 3);
  const auto tf = setup.theta(f);
  for (int y = 0; y < 3; ++y) {
    Vector fy(2), tfy(2);
    for (int j = 0; j < 2; ++j) {
      fy(j) = f.coord(j).block(bs.perm[static_cast<std::size_t>(y)])(0, 0);
      tfy(j) = tf.coord(j).block(y)(0, 0);
    }
    EXPECT_LE((tfy - bs.h[static_cast<std::size_t>(y)] * fy).norm(), 1e-14);
  }
}

TEST(FixtureBanachStone, InvalidParams) {
  auto bad_perm = cycle_params(3, 2);
  bad_perm.perm = {0, 0, 1};
  EXPECT_EQ(code_of([&] { fixture_banach_stone(bad_perm); }), ErrorCode::kInvalidParams);
  auto bad_h = cycle_params(3, 2);
  bad_h.h[0] = 2.0 * Matrix::Identity(2, 2);
  EXPECT_EQ(code_of([&] { fixture_banach_stone(bad_h); }), ErrorCode::kInvalidParams);
  auto bad_l = cycle_params(3, 2);
  bad_l.L[0](0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { fixture_banach_stone(bad_l); }), ErrorCode::kInvalidParams);
  auto singular = cycle_params(3, 2);
  singular.L[0](0, 0) = 0.0;
  EXPECT_EQ(code_of([&] { fixture_banach_stone(singular); }), ErrorCode::kInvalidParams);
}

TEST(Intertwining, ExactForFixtures) {
  const auto a = fixture_adjoint_map(kM2, {1, 2});
  const auto b = fixture_banach_stone(cycle_params(3, 2));
  for (const auto* theta : {&a.theta, &b.theta}) {
    const auto check = check_compatible(*theta);
    EXPECT_LE(check.intertwining_residual, 1e-12);
    EXPECT_TRUE(check.ok());
  }
}

TEST(TransportFrame, CommutationFailure) {
  // L = [[0,1],[1,0]] does not commute with h = diag(1,-1).
  BanachStoneParams bs = cycle_params(2, 2);
  bs.h.assign(2, Matrix(Eigen::Vector2cd(1.0, -1.0).asDiagonal()));
  const auto setup = fixture_banach_stone(bs);
  const ModuleSpace& h = setup.frame.space();
  AdjointableOp swap = AdjointableOp::zero(h, h);
  swap.entry(0, 1) = AlgebraElement::unit(h.algebra);
  swap.entry(1, 0) = AlgebraElement::unit(h.algebra);
  const StarGFrame f(h, {swap});
  try {
    transport_frame(f, setup.phi, setup.theta);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCommutationFailed);
    EXPECT_NE(std::string(e.what()).find("Lambda_0"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("basis vector"), std::string::npos);
  }
}

TEST(TransportFrame, IncompatibleMaps) {
  const auto setup = fixture_banach_stone(cycle_params(3, 2));
  auto scaled = setup.theta;
  scaled.map *= 2.0;
  EXPECT_EQ(code_of([&] { transport_frame(setup.frame, setup.phi, scaled); }), ErrorCode::kIncompatibleMap);

  auto rank_deficient = setup.theta;
  rank_deficient.map.col(0).setZero();
  EXPECT_EQ(code_of([&] { transport_frame(setup.frame, setup.phi, rank_deficient); }),
            ErrorCode::kIncompatibleMap);

  const auto other = StarHomomorphism::block_permutation(AlgebraShape({1, 1, 1}), {2, 0, 1});
  EXPECT_EQ(code_of([&] { transport_frame(setup.frame, other, setup.theta); }), ErrorCode::kIncompatibleMap);
}

TEST(TransportFrame, Preconditions) {
  const ModuleSpace h(kM2, 1);
  const StarGFrame f(h, {AdjointableOp::identity(h)});
  auto setup = identity_transport(f);
  const auto tr = transpose_map(kM2);
  EXPECT_EQ(code_of([&] { transport_frame(f, tr, setup.theta); }), ErrorCode::kPreconditionFailed);

  const StarGFrame wide(h, {random_op(h, ModuleSpace(kM2, 2), 1)});
  setup = identity_transport(wide);
  EXPECT_EQ(code_of([&] { transport_frame(wide, setup.phi, setup.theta); }), ErrorCode::kPreconditionFailed);
}

TEST(TransportFrame, LeftFormResidualMatchesFrameOperator) {
  // With theta = u-conjugation of coordinates and phi = u-conjugation, the
  // transported identity can be checked with the library's own S.
  const ModuleSpace h(kM2, 1);
  const auto u = random_element(kM2, 5, ElementKind::kUnitary);
  const auto phi = StarHomomorphism::unitary_conjugation(u);
  const RealMatrix map = realify_map(h, h, [&](const ModuleVector& x) {
    return ModuleVector(h, {u * x.coord(0) * adjoint(u)});
  });
  const StarGFrame f(h, {Complex(1.5) * AdjointableOp::identity(h), Complex(0.5) * AdjointableOp::identity(h)});
  const CompatibleMap theta{h, h, InnerForm::kLeft, InnerForm::kLeft, map, phi};
  const auto rec = transport_frame(f, phi, theta);
  EXPECT_LE(rec.residual, 1e-12);
  const auto s = frame_operator(f);
  const auto x = random_vector(h, 1), y = random_vector(h, 2);
  const auto lhs = inner(apply(s, theta(x)), theta(y));
  const auto rhs = phi(inner(apply(s, x), y));
  EXPECT_LE(relative_distance(lhs, rhs), 1e-12);
  EXPECT_TRUE(rec.passed(Tolerance{}));
}
