#include <gtest/gtest.h>

#include "support.hpp"

using namespace sgf;
using test::scalar_frame;

namespace {

const AlgebraShape kM2({2});

void expect_sound(const BoundsCertificate& c, const StarGFrame& f, const AlgebraElement& a,
                  const AlgebraElement& b) {
  if (!c.refuted()) {
    EXPECT_FALSE(c.witness.has_value());
    return;
  }
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_LT(test::worst_gap_ref(f, a, b, *c.witness), -c.tol.eig_slack);
}

FrameBounds scaled(const FrameBounds& b, double lo, double hi) { return {lo * b.lower, hi * b.upper}; }

}  // namespace

TEST(StarGFrame, ConstructorValidates) {
  const ModuleSpace h(kM2, 2);
  try {
    StarGFrame(h, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParams);
  }
  try {
    StarGFrame(h, {AdjointableOp::identity(ModuleSpace(kM2, 3))});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpaceMismatch);
  }
  try {
    StarGFrame(h, {AdjointableOp::identity(h)},
               FrameBounds{AlgebraElement::matrix_unit(kM2, 0, 0, 0), AlgebraElement::unit(kM2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInvertible);
  }
  // Codomain ranks may differ between operators.
  EXPECT_NO_THROW(StarGFrame(h, {random_op(h, ModuleSpace(kM2, 1), 1), random_op(h, ModuleSpace(kM2, 4), 2)}));
}

TEST(FrameOperator, Examples) {
  const ModuleSpace h(AlgebraShape({2, 1}), 2);
  const auto id = AdjointableOp::identity(h);
  EXPECT_LE(relative_distance(frame_operator(scalar_frame(h, {1})), id), 1e-15);
  EXPECT_LE(relative_distance(frame_operator(scalar_frame(h, {1, 1})), Complex(2.0) * id), 1e-15);

  const ModuleSpace a3(kM2, 3);
  const auto parseval = frame_from_vectors(standard_basis(a3));
  EXPECT_LE(relative_distance(frame_operator(parseval), AdjointableOp::identity(a3)), 1e-15);
}

TEST(FrameOperator, DirectSummationOracle) {
  // S_ij = sum_n sum_l M^n_il (M^n_jl)^* written out with explicit loops.
  const ModuleSpace h(AlgebraShape({2, 1}), 2);
  const auto f = random_frame(h, 3, 2, 7);
  const auto s = frame_operator(f);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      AlgebraElement acc = AlgebraElement::zero(h.algebra);
      for (const auto& op : f.ops())
        for (int l = 0; l < op.codomain().rank; ++l) acc += op.entry(i, l) * adjoint(op.entry(j, l));
      EXPECT_LE(test::dist(s.entry(i, j), acc), 1e-12);
    }
  }
}

TEST(FrameOperator, SelfAdjointAndPositive) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ModuleSpace h(s % 2 ? AlgebraShape({2, 1}) : kM2, 1 + static_cast<int>(s % 3));
    const auto op = frame_operator(random_frame(h, 1 + static_cast<int>(s % 4), 3, s));
    const double n = op_norm(op);
    EXPECT_LE(test::dist(op, adjoint_op(op)), 1e-10 * (1 + n));
    for (const auto& b : flatten(op)) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(b);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    }
  }
}

TEST(FrameSum, Examples) {
  const ModuleSpace h(kM2, 2);
  const auto x = random_vector(h, 5);
  EXPECT_TRUE(approx_equal(frame_sum(scalar_frame(h, {1}), x), inner(x, x)));
  EXPECT_EQ(frame_sum(random_frame(h, 3, 2, 1), ModuleVector::zero(h)), AlgebraElement::zero(kM2));
  EXPECT_THROW(frame_sum(scalar_frame(h, {1}), random_vector(ModuleSpace(kM2, 3), 1)), Error);
}

TEST(FrameSum, AgreesWithFrameOperatorAndDefinition) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ModuleSpace h(AlgebraShape({2, 1}), 1 + static_cast<int>(s % 3));
    const auto f = random_frame(h, 1 + static_cast<int>(s % 4), 3, s);
    const auto x = random_vector(h, 1000 + s);
    const auto fs = frame_sum(f, x);
    EXPECT_LE(relative_distance(fs, inner(apply(frame_operator(f), x), x)), 1e-10);
    EXPECT_LE(relative_distance(fs, test::frame_sum_ref(f, x)), 1e-10);
  }
}

TEST(CertifyBounds, Examples) {
  const ModuleSpace a3(kM2, 3);
  const auto one = AlgebraElement::unit(kM2);
  const auto parseval = frame_from_vectors(standard_basis(a3));
  EXPECT_EQ(certify_bounds(parseval, one, one).status, CertificateStatus::kCertifiedExact);

  const ModuleSpace h(kM2, 2);
  const auto twice = scalar_frame(h, {1, 1});
  const auto bad = certify_bounds(twice, 2.0 * one, 2.0 * one);
  EXPECT_EQ(bad.status, CertificateStatus::kRefuted);
  expect_sound(bad, twice, 2.0 * one, 2.0 * one);
  const auto good = certify_bounds(twice, std::sqrt(2.0) * one, std::sqrt(2.0) * one);
  EXPECT_EQ(good.status, CertificateStatus::kCertifiedExact);
  EXPECT_EQ(good.method, "central-spectral");
}

TEST(CertifyBounds, RejectsNonInvertibleBounds) {
  const ModuleSpace h(kM2, 1);
  try {
    certify_bounds(scalar_frame(h, {1}), AlgebraElement::zero(kM2), AlgebraElement::unit(kM2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInvertible);
  }
}

TEST(CertifyBounds, CentralWitnessIsExactEigenvector) {
  // Refutation from one side only: lower bound too large on block 1.
  const AlgebraShape shape({2, 1});
  const ModuleSpace h(shape, 2);
  const auto f = random_frame(h, 3, 2, 11);
  const auto opt = optimal_central_bounds(f);
  const auto lower = AlgebraElement::central(shape, {opt.lower.block(0)(0, 0).real(), 1.1 * opt.lower.block(1)(0, 0).real()});
  const auto c = certify_bounds(f, lower, opt.upper);
  ASSERT_TRUE(c.refuted());
  expect_sound(c, f, lower, opt.upper);
  EXPECT_LE(module_norm(*c.witness), 1.0 + 1e-12);
}

TEST(CertifyBounds, SamplingPathRefutesNonCentralBounds) {
  // For <x,x> = v v^* of rank one, A<x,x>A^* = (Av)(Av)^* is comparable with
  // c v v^* only when Av is parallel to v, so a bound that is not a scalar on
  // an M_n block fails at some x even when it is far from the optimal scale.
  const ModuleSpace h(kM2, 2);
  const auto f = scalar_frame(h, {1, 1});  // S = 2I
  const auto u = random_element(kM2, 3, ElementKind::kUnitary);
  for (const auto& b : {FrameBounds{0.5 * u, 2.0 * u}, FrameBounds{std::sqrt(2.0) * u, std::sqrt(2.0) * u}}) {
    const auto c = certify_bounds(f, b.lower, b.upper, {}, {.budget = 200, .seed = 1});
    EXPECT_EQ(c.method, "sampled+descent");
    ASSERT_EQ(c.status, CertificateStatus::kRefuted);
    expect_sound(c, f, b.lower, b.upper);
  }
}

TEST(CertifyBounds, SamplingReportsNoCounterexampleForValidBounds) {
  const ModuleSpace h(AlgebraShape({2, 1}), 2);
  const auto f = random_frame(h, 3, 2, 4);
  const auto opt = optimal_central_bounds(f);
  const auto c = certify_bounds(f, 0.9 * opt.lower, 1.1 * opt.upper, {},
                                {.budget = 200, .seed = 1, .force_sampling = true});
  EXPECT_EQ(c.status, CertificateStatus::kNoCounterexampleFound);
  EXPECT_FALSE(c.witness.has_value());
  EXPECT_GE(c.samples_used, 200u);
}

TEST(CertifyBounds, ExactAndSamplingAgree) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ModuleSpace h(AlgebraShape({2, 1}), 1 + static_cast<int>(s % 2));
    const auto f = random_frame(h, 2 + static_cast<int>(s % 3), 2, 100 + s);
    const auto opt = optimal_central_bounds(f);
    for (const auto& b : {opt, scaled(opt, 0.5, 2.0), scaled(opt, 1.5, 1.0)}) {
      const auto exact = certify_bounds(f, b.lower, b.upper);
      const auto sampled =
          certify_bounds(f, b.lower, b.upper, {}, {.budget = 100, .seed = s, .force_sampling = true});
      EXPECT_NE(sampled.status, CertificateStatus::kCertifiedExact);
      expect_sound(exact, f, b.lower, b.upper);
      expect_sound(sampled, f, b.lower, b.upper);
      if (exact.status == CertificateStatus::kCertifiedExact) EXPECT_FALSE(sampled.refuted());
      // A 50% violation is large enough that sampling must find it.
      if (exact.refuted()) EXPECT_TRUE(sampled.refuted());
    }
  }
}

TEST(CertifyBounds, SamplingIsDeterministicForSeed) {
  const ModuleSpace h(kM2, 2);
  const auto f = random_frame(h, 3, 2, 5);
  const auto opt = optimal_central_bounds(f);
  const auto lo = 1.2 * opt.lower;
  const CertifyOptions o{.budget = 50, .seed = 9, .force_sampling = true};
  EXPECT_EQ(certify_bounds(f, lo, opt.upper, {}, o), certify_bounds(f, lo, opt.upper, {}, o));
}

TEST(OptimalCentralBounds, Examples) {
  const ModuleSpace h(kM2, 2);
  const auto one = AlgebraElement::unit(kM2);
  auto b = optimal_central_bounds(scalar_frame(h, {1}));
  EXPECT_TRUE(approx_equal(b.lower, one));
  EXPECT_TRUE(approx_equal(b.upper, one));
  b = optimal_central_bounds(scalar_frame(h, {1, 1}));
  EXPECT_TRUE(approx_equal(b.lower, std::sqrt(2.0) * one));
  EXPECT_TRUE(approx_equal(b.upper, std::sqrt(2.0) * one));

  // S = diag(1, 4) on C^2.
  const AlgebraShape c({1});
  const ModuleSpace c2(c, 2);
  AdjointableOp op = AdjointableOp::zero(c2, c2);
  op.entry(0, 0) = AlgebraElement::unit(c);
  op.entry(1, 1) = 2.0 * AlgebraElement::unit(c);
  b = optimal_central_bounds(StarGFrame(c2, {op}));
  EXPECT_NEAR(b.lower.block(0)(0, 0).real(), 1.0, 1e-14);
  EXPECT_NEAR(b.upper.block(0)(0, 0).real(), 2.0, 1e-14);
}

TEST(OptimalCentralBounds, NotAFrameWhenSingular) {
  const ModuleSpace h(kM2, 2);
  try {
    optimal_central_bounds(StarGFrame(h, {AdjointableOp::zero(h, h)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAFrame);
  }
}

TEST(OptimalCentralBounds, CertifiedAndExtremal) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ModuleSpace h(AlgebraShape({2, 1}), 2);
    const auto f = random_frame(h, 3, 2, 200 + s);
    const auto opt = optimal_central_bounds(f);
    EXPECT_EQ(certify_bounds(f, opt.lower, opt.upper).status, CertificateStatus::kCertifiedExact);
    const auto lo = certify_bounds(f, (1 + 1e-3) * opt.lower, opt.upper);
    EXPECT_TRUE(lo.refuted());
    expect_sound(lo, f, (1 + 1e-3) * opt.lower, opt.upper);
    const auto hi = certify_bounds(f, opt.lower, (1 - 1e-3) * opt.upper);
    EXPECT_TRUE(hi.refuted());
    expect_sound(hi, f, opt.lower, (1 - 1e-3) * opt.upper);
  }
}

TEST(FrameFromVectors, Examples) {
  const ModuleSpace a3(kM2, 3);
  const auto p = frame_from_vectors(standard_basis(a3));
  EXPECT_LE(relative_distance(frame_operator(p), AdjointableOp::identity(a3)), 1e-15);

  const AlgebraShape c({1});
  const ModuleSpace c1(c, 1);
  const ModuleVector x(c1, {AlgebraElement::unit(c)});
  EXPECT_TRUE(approx_equal(frame_sum(frame_from_vectors({x}), x), AlgebraElement::unit(c)));

  // Adding a zero vector does not change the frame sum.
  const ModuleSpace h(kM2, 2);
  const auto y = random_vector(h, 1), z = random_vector(h, 2);
  const auto with_zero = frame_from_vectors({y, ModuleVector::zero(h)});
  EXPECT_TRUE(approx_equal(frame_sum(with_zero, z), frame_sum(frame_from_vectors({y}), z)));
}

TEST(FrameFromVectors, ReproducesVectorFrameSum) {
  const ModuleSpace h(AlgebraShape({2, 1}), 2);
  std::vector<ModuleVector> xs;
  for (std::uint64_t i = 0; i < 4; ++i) xs.push_back(random_vector(h, 50 + i));
  const auto f = frame_from_vectors(xs);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto x = random_vector(h, s);
    AlgebraElement expect = AlgebraElement::zero(h.algebra);
    for (const auto& xi : xs) expect += test::inner_ref(x, xi) * test::inner_ref(xi, x);
    EXPECT_TRUE(approx_equal(frame_sum(f, x), expect));
  }
  EXPECT_THROW(frame_from_vectors({random_vector(h, 1), random_vector(ModuleSpace(kM2, 2), 1)}), Error);
}

TEST(IsGFrame, Examples) {
  const ModuleSpace a3(kM2, 3);
  EXPECT_TRUE(is_g_frame(frame_from_vectors(standard_basis(a3)), 1, 1));
  const auto twice = scalar_frame(ModuleSpace(kM2, 2), {1, 1});
  EXPECT_TRUE(is_g_frame(twice, 1, 3));
  EXPECT_FALSE(is_g_frame(twice, 3, 4));
}

TEST(CertificateStatus, NamesRoundTrip) {
  for (auto s : {CertificateStatus::kCertifiedExact, CertificateStatus::kCertifiedByConstruction,
                 CertificateStatus::kNoCounterexampleFound, CertificateStatus::kRefuted}) {
    EXPECT_EQ(parse_status(to_string(s)), s);
  }
  EXPECT_THROW(parse_status("Maybe"), Error);
}
