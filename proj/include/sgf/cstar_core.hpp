#pragma once

// Finite-dimensional C*-algebras realized as block-diagonal complex matrix
// algebras A = M_{n_1}(C) (+) ... (+) M_{n_T}(C).

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sgf/error.hpp"

namespace sgf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct Tolerance {
  double eig_slack = 1e-8;  // absolute slack on eigenvalues for positivity
  double eq_rtol = 1e-9;    // relative tolerance for equality checks

  void validate() const;
  friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

/// Block side lengths [n_1, ..., n_T] of a direct sum of full matrix algebras.
class AlgebraShape {
 public:
  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<int> blocks);

  const std::vector<int>& blocks() const { return blocks_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int block(int t) const { return blocks_[static_cast<std::size_t>(t)]; }

  /// Complex dimension sum_t n_t^2.
  int dim() const;

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  std::vector<int> blocks_;
};

/// Shape of the spatial tensor product: blocks n_s * m_t in lexicographic (s, t) order.
AlgebraShape tensor_shape(const AlgebraShape& a, const AlgebraShape& b);

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement unit(const AlgebraShape& shape);
  static AlgebraElement scalar(const AlgebraShape& shape, Complex value);
  /// Central element with block t equal to values[t] * I.
  static AlgebraElement central(const AlgebraShape& shape, const std::vector<double>& values);
  /// Matrix unit e_pq placed in block t.
  static AlgebraElement matrix_unit(const AlgebraShape& shape, int t, int p, int q);

  const AlgebraShape& shape() const { return shape_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int t) const { return blocks_[static_cast<std::size_t>(t)]; }
  Matrix& block(int t) { return blocks_[static_cast<std::size_t>(t)]; }

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex s);

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(Complex s, AlgebraElement a);
AlgebraElement operator*(double s, AlgebraElement a);

AlgebraElement adjoint(const AlgebraElement& a);
/// Blockwise product. Throws ShapeMismatch on different shapes.
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

bool is_hermitian(const AlgebraElement& a, const Tolerance& tol = {});
bool is_positive(const AlgebraElement& a, const Tolerance& tol = {});
bool loewner_leq(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& tol = {});
bool is_invertible(const AlgebraElement& a, const Tolerance& tol = {});
/// Each block a scalar multiple of the identity, within eq_rtol.
bool is_central(const AlgebraElement& a, const Tolerance& tol = {});

/// |alpha_t|^2 per block of a central element, read off as tr(a_t a_t^*) / n_t.
std::vector<double> central_squares(const AlgebraElement& a);

/// Smallest eigenvalue over all blocks of the Hermitian part (a + a*)/2.
double min_eigenvalue(const AlgebraElement& a);

/// C*-norm: largest singular value over all blocks.
double operator_norm(const AlgebraElement& a);

/// Unique positive square root; eigenvalues within eig_slack below zero are clamped.
AlgebraElement sqrt_psd(const AlgebraElement& a, const Tolerance& tol = {});

/// Spatial tensor product, block (s, t) = kron(a_s, b_t).
AlgebraElement tensor_elem(const AlgebraElement& a, const AlgebraElement& b);

/// Relative distance ||a - b|| / (1 + ||b||) in the C*-norm.
double relative_distance(const AlgebraElement& a, const AlgebraElement& b);
bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, const Tolerance& tol = {});

enum class ElementKind { kGeneric, kHermitian, kPositiveInvertible, kUnitary };

/// Deterministic generator for a fixed seed.
AlgebraElement random_element(const AlgebraShape& shape, std::uint64_t seed, ElementKind kind);

// Helpers on single complex blocks, shared by the operator layer.
namespace dense {

Matrix hermitian_part(const Matrix& m);
double spectral_norm(const Matrix& m);
double min_singular_value(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
/// Square root of a PSD matrix with clamping of eigenvalues >= -slack.
Matrix sqrt_psd(const Matrix& m, double slack);
/// Inverse square root of a positive definite matrix.
Matrix inverse_sqrt_pd(const Matrix& m);

}  // namespace dense

}  // namespace sgf
