#include "sgf/cstar_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace sgf {

void Tolerance::validate() const {
  if (!std::isfinite(eig_slack) || !std::isfinite(eq_rtol) || eig_slack < 0 || eq_rtol < 0) {
    throw Error(ErrorCode::kInvalidParams, "tolerances must be finite and nonnegative");
  }
}

AlgebraShape::AlgebraShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) {
    throw Error(ErrorCode::kInvalidParams, "algebra shape needs at least one block");
  }
  for (int n : blocks_) {
    if (n < 1) throw Error(ErrorCode::kInvalidParams, "block sizes must be >= 1");
  }
}

int AlgebraShape::dim() const {
  int d = 0;
  for (int n : blocks_) d += n * n;
  return d;
}

AlgebraShape tensor_shape(const AlgebraShape& a, const AlgebraShape& b) {
  std::vector<int> blocks;
  blocks.reserve(a.blocks().size() * b.blocks().size());
  for (int n : a.blocks()) {
    for (int m : b.blocks()) blocks.push_back(n * m);
  }
  return AlgebraShape(std::move(blocks));
}

namespace {

void require_same_shape(const AlgebraShape& a, const AlgebraShape& b) {
  if (!(a == b)) throw Error(ErrorCode::kShapeMismatch, "algebra shapes differ");
}

}  // namespace

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.blocks().size()) {
    throw Error(ErrorCode::kShapeMismatch, "block count does not match shape");
  }
  for (int t = 0; t < shape_.num_blocks(); ++t) {
    const Matrix& m = blocks_[static_cast<std::size_t>(t)];
    if (m.rows() != shape_.block(t) || m.cols() != shape_.block(t)) {
      throw Error(ErrorCode::kShapeMismatch,
                  "block " + std::to_string(t) + " has wrong dimensions");
    }
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  for (int n : shape.blocks()) blocks.push_back(Matrix::Zero(n, n));
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement AlgebraElement::unit(const AlgebraShape& shape) {
  return scalar(shape, Complex(1.0, 0.0));
}

AlgebraElement AlgebraElement::scalar(const AlgebraShape& shape, Complex value) {
  std::vector<Matrix> blocks;
  for (int n : shape.blocks()) blocks.push_back(value * Matrix::Identity(n, n));
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement AlgebraElement::central(const AlgebraShape& shape,
                                       const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != shape.num_blocks()) {
    throw Error(ErrorCode::kShapeMismatch, "one central value per block required");
  }
  std::vector<Matrix> blocks;
  for (int t = 0; t < shape.num_blocks(); ++t) {
    const int n = shape.block(t);
    blocks.push_back(Complex(values[static_cast<std::size_t>(t)], 0.0) * Matrix::Identity(n, n));
  }
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement AlgebraElement::matrix_unit(const AlgebraShape& shape, int t, int p, int q) {
  AlgebraElement e = zero(shape);
  e.block(t)(p, q) = 1.0;
  return e;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_shape(shape_, other.shape_);
  for (std::size_t t = 0; t < blocks_.size(); ++t) blocks_[t] += other.blocks_[t];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_shape(shape_, other.shape_);
  for (std::size_t t = 0; t < blocks_.size(); ++t) blocks_[t] -= other.blocks_[t];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.shape_ == b.shape_)) return false;
  for (std::size_t t = 0; t < a.blocks_.size(); ++t) {
    if (a.blocks_[t] != b.blocks_[t]) return false;
  }
  return true;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
AlgebraElement operator*(double s, AlgebraElement a) { return a *= Complex(s, 0.0); }

AlgebraElement adjoint(const AlgebraElement& a) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (const auto& b : a.blocks()) blocks.push_back(b.adjoint());
  return AlgebraElement(a.shape(), std::move(blocks));
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a.shape(), b.shape());
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (int t = 0; t < a.shape().num_blocks(); ++t) blocks.push_back(a.block(t) * b.block(t));
  return AlgebraElement(a.shape(), std::move(blocks));
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return mul(a, b); }

namespace dense {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix sqrt_psd(const Matrix& m, double slack) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -slack) {
      throw Error(ErrorCode::kNotPositive, "eigenvalue " + std::to_string(ev(i)) + " below slack");
    }
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  const Matrix& v = es.eigenvectors();
  Matrix r = v * ev.cast<Complex>().asDiagonal() * v.adjoint();
  return hermitian_part(r);
}

Matrix inverse_sqrt_pd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 0) throw Error(ErrorCode::kNotInvertible, "matrix is not positive definite");
    ev(i) = 1.0 / std::sqrt(ev(i));
  }
  const Matrix& v = es.eigenvectors();
  return hermitian_part(v * ev.cast<Complex>().asDiagonal() * v.adjoint());
}

}  // namespace dense

bool is_hermitian(const AlgebraElement& a, const Tolerance& tol) {
  for (const auto& b : a.blocks()) {
    const double skew = dense::spectral_norm(b - b.adjoint());
    if (skew > tol.eq_rtol * (1.0 + dense::spectral_norm(b))) return false;
  }
  return true;
}

double min_eigenvalue(const AlgebraElement& a) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : a.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(dense::hermitian_part(b), Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
  }
  return lo;
}

bool is_positive(const AlgebraElement& a, const Tolerance& tol) {
  return is_hermitian(a, tol) && min_eigenvalue(a) >= -tol.eig_slack;
}

bool loewner_leq(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& tol) {
  return is_positive(b - a, tol);
}

bool is_invertible(const AlgebraElement& a, const Tolerance& tol) {
  for (const auto& b : a.blocks()) {
    if (dense::min_singular_value(b) <= tol.eig_slack) return false;
  }
  return true;
}

bool is_central(const AlgebraElement& a, const Tolerance& tol) {
  for (const auto& b : a.blocks()) {
    const Complex mean = b.trace() / static_cast<double>(b.rows());
    const Matrix dev = b - mean * Matrix::Identity(b.rows(), b.cols());
    if (dense::spectral_norm(dev) > tol.eq_rtol * (1.0 + dense::spectral_norm(b))) return false;
  }
  return true;
}

std::vector<double> central_squares(const AlgebraElement& a) {
  std::vector<double> c;
  for (const auto& b : a.blocks()) {
    c.push_back((b * b.adjoint()).trace().real() / static_cast<double>(b.rows()));
  }
  return c;
}

double operator_norm(const AlgebraElement& a) {
  double n = 0.0;
  for (const auto& b : a.blocks()) n = std::max(n, dense::spectral_norm(b));
  return n;
}

AlgebraElement sqrt_psd(const AlgebraElement& a, const Tolerance& tol) {
  if (!is_hermitian(a, tol)) throw Error(ErrorCode::kNotPositive, "element is not Hermitian");
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (const auto& b : a.blocks()) blocks.push_back(dense::sqrt_psd(b, tol.eig_slack));
  return AlgebraElement(a.shape(), std::move(blocks));
}

AlgebraElement tensor_elem(const AlgebraElement& a, const AlgebraElement& b) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size() * b.blocks().size());
  for (const auto& x : a.blocks()) {
    for (const auto& y : b.blocks()) blocks.push_back(dense::kron(x, y));
  }
  return AlgebraElement(tensor_shape(a.shape(), b.shape()), std::move(blocks));
}

double relative_distance(const AlgebraElement& a, const AlgebraElement& b) {
  return operator_norm(a - b) / (1.0 + operator_norm(b));
}

bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& tol) {
  return a.shape() == b.shape() && relative_distance(a, b) <= tol.eq_rtol;
}

AlgebraElement random_element(const AlgebraShape& shape, std::uint64_t seed, ElementKind kind) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Matrix> blocks;
  for (int n : shape.blocks()) {
    Matrix g(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) g(r, c) = Complex(normal(rng), normal(rng));
    }
    switch (kind) {
      case ElementKind::kGeneric:
        blocks.push_back(g);
        break;
      case ElementKind::kHermitian:
        blocks.push_back(dense::hermitian_part(g));
        break;
      case ElementKind::kPositiveInvertible: {
        Matrix p = g * g.adjoint() / static_cast<double>(n);
        p += 0.1 * Matrix::Identity(n, n);
        blocks.push_back(dense::hermitian_part(p));
        break;
      }
      case ElementKind::kUnitary: {
        Eigen::HouseholderQR<Matrix> qr(g);
        blocks.push_back(qr.householderQ() * Matrix::Identity(n, n));
        break;
      }
    }
  }
  return AlgebraElement(shape, std::move(blocks));
}

}  // namespace sgf
