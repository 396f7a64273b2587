#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's own numerics beyond constructors.

#include <cmath>
#include <initializer_list>
#include <vector>

#include "sgf/json_io.hpp"

namespace sgf::test {

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

/// Single-block element of M_n.
inline AlgebraElement el(const Matrix& m) {
  return AlgebraElement(AlgebraShape({static_cast<int>(m.rows())}), {m});
}

/// Kronecker product by explicit index loops.
inline Matrix kron_loop(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Frobenius distance summed over blocks.
inline double dist(const AlgebraElement& a, const AlgebraElement& b) {
  double s = 0.0;
  for (int t = 0; t < a.shape().num_blocks(); ++t) s += (a.block(t) - b.block(t)).squaredNorm();
  return std::sqrt(s);
}

inline double dist(const ModuleVector& x, const ModuleVector& y) {
  double s = 0.0;
  for (int i = 0; i < x.space().rank; ++i) s += std::pow(dist(x.coord(i), y.coord(i)), 2);
  return std::sqrt(s);
}

inline double dist(const AdjointableOp& a, const AdjointableOp& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::pow(dist(a.entries()[i], b.entries()[i]), 2);
  return std::sqrt(s);
}

/// Inner product sum_i x_i y_i^* written out directly.
inline AlgebraElement inner_ref(const ModuleVector& x, const ModuleVector& y) {
  std::vector<Matrix> blocks;
  const auto& shape = x.space().algebra;
  for (int t = 0; t < shape.num_blocks(); ++t) {
    Matrix acc = Matrix::Zero(shape.block(t), shape.block(t));
    for (int i = 0; i < x.space().rank; ++i) acc += x.coord(i).block(t) * y.coord(i).block(t).adjoint();
    blocks.push_back(acc);
  }
  return AlgebraElement(shape, blocks);
}

/// Apply by the defining formula (Tx)_j = sum_i x_i M_ij.
inline ModuleVector apply_ref(const AdjointableOp& t, const ModuleVector& x) {
  std::vector<AlgebraElement> coords;
  for (int j = 0; j < t.codomain().rank; ++j) {
    AlgebraElement acc = AlgebraElement::zero(x.space().algebra);
    for (int i = 0; i < t.domain().rank; ++i) {
      const auto& shape = x.space().algebra;
      for (int b = 0; b < shape.num_blocks(); ++b) acc.block(b) += x.coord(i).block(b) * t.entry(i, j).block(b);
    }
    coords.push_back(acc);
  }
  return ModuleVector(t.codomain(), coords);
}

/// Smallest eigenvalue over blocks via Eigen's Hermitian solver on (a + a^*)/2.
inline double min_eig_ref(const AlgebraElement& a) {
  double m = INFINITY;
  for (const auto& b : a.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((b + b.adjoint()) / 2.0);
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return m;
}

inline StarGFrame scalar_frame(const ModuleSpace& space, std::vector<double> scalars) {
  std::vector<AdjointableOp> ops;
  for (double s : scalars) ops.push_back(Complex(s) * AdjointableOp::identity(space));
  return StarGFrame(space, ops);
}

/// frame_sum by the defining formula.
inline AlgebraElement frame_sum_ref(const StarGFrame& f, const ModuleVector& x) {
  AlgebraElement acc = AlgebraElement::zero(x.space().algebra);
  for (const auto& op : f.ops()) {
    const auto y = apply_ref(op, x);
    acc += inner_ref(y, y);
  }
  return acc;
}

/// Smallest eigenvalue of the worse of the two gaps, computed without the library.
inline double worst_gap_ref(const StarGFrame& f, const AlgebraElement& a, const AlgebraElement& b, const ModuleVector& x) {
  const auto s = frame_sum_ref(f, x);
  const auto xx = inner_ref(x, x);
  AlgebraElement low = s, high = s;
  for (int t = 0; t < xx.shape().num_blocks(); ++t) {
    low.block(t) = s.block(t) - a.block(t) * xx.block(t) * a.block(t).adjoint();
    high.block(t) = b.block(t) * xx.block(t) * b.block(t).adjoint() - s.block(t);
  }
  return std::min(min_eig_ref(low), min_eig_ref(high));
}

}  // namespace sgf::test
