#include "sgf/hilbert_module.hpp"

#include <cmath>
#include <random>

namespace sgf {

ModuleSpace::ModuleSpace(AlgebraShape a, int k) : algebra(std::move(a)), rank(k) {
  if (k < 1) throw Error(ErrorCode::kInvalidParams, "module rank must be >= 1");
}

ModuleSpace tensor_space(const ModuleSpace& h, const ModuleSpace& k) {
  return ModuleSpace(tensor_shape(h.algebra, k.algebra), h.rank * k.rank);
}

ModuleVector::ModuleVector(ModuleSpace space, std::vector<AlgebraElement> coords)
    : space_(std::move(space)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != space_.rank) {
    throw Error(ErrorCode::kSpaceMismatch, "coordinate count does not match rank");
  }
  for (const auto& c : coords_) {
    if (!(c.shape() == space_.algebra)) {
      throw Error(ErrorCode::kSpaceMismatch, "coordinate has the wrong algebra shape");
    }
  }
}

ModuleVector ModuleVector::zero(const ModuleSpace& space) {
  return ModuleVector(space, std::vector<AlgebraElement>(static_cast<std::size_t>(space.rank),
                                                         AlgebraElement::zero(space.algebra)));
}

namespace {

void require_same_space(const ModuleSpace& a, const ModuleSpace& b) {
  if (!(a == b)) throw Error(ErrorCode::kSpaceMismatch, "module spaces differ");
}

}  // namespace

ModuleVector& ModuleVector::operator+=(const ModuleVector& other) {
  require_same_space(space_, other.space_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& other) {
  require_same_space(space_, other.space_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

ModuleVector& ModuleVector::operator*=(Complex s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

ModuleVector operator+(ModuleVector x, const ModuleVector& y) { return x += y; }
ModuleVector operator-(ModuleVector x, const ModuleVector& y) { return x -= y; }
ModuleVector operator*(Complex s, ModuleVector x) { return x *= s; }

ModuleVector operator*(const AlgebraElement& a, const ModuleVector& x) {
  std::vector<AlgebraElement> coords;
  coords.reserve(x.coords().size());
  for (const auto& c : x.coords()) coords.push_back(mul(a, c));
  return ModuleVector(x.space(), std::move(coords));
}

AlgebraElement inner(const ModuleVector& x, const ModuleVector& y) {
  return inner(x, y, InnerForm::kLeft);
}

AlgebraElement inner(const ModuleVector& x, const ModuleVector& y, InnerForm form) {
  require_same_space(x.space(), y.space());
  const AlgebraShape& shape = x.space().algebra;
  std::vector<Matrix> acc;
  for (int n : shape.blocks()) acc.push_back(Matrix::Zero(n, n));
  for (int i = 0; i < x.space().rank; ++i) {
    for (int t = 0; t < shape.num_blocks(); ++t) {
      const Matrix& xb = x.coord(i).block(t);
      const Matrix& yb = y.coord(i).block(t);
      if (form == InnerForm::kLeft) {
        acc[static_cast<std::size_t>(t)].noalias() += xb * yb.adjoint();
      } else {
        acc[static_cast<std::size_t>(t)].noalias() += xb.adjoint() * yb;
      }
    }
  }
  return AlgebraElement(shape, std::move(acc));
}

AlgebraElement module_abs(const ModuleVector& x, const Tolerance& tol) {
  return sqrt_psd(inner(x, x), tol);
}

double module_norm(const ModuleVector& x) { return std::sqrt(operator_norm(inner(x, x))); }

ModuleVector tensor_vector(const ModuleVector& x, const ModuleVector& y) {
  std::vector<AlgebraElement> coords;
  coords.reserve(x.coords().size() * y.coords().size());
  for (const auto& a : x.coords()) {
    for (const auto& b : y.coords()) coords.push_back(tensor_elem(a, b));
  }
  return ModuleVector(tensor_space(x.space(), y.space()), std::move(coords));
}

std::vector<ModuleVector> module_basis(const ModuleSpace& space) {
  std::vector<ModuleVector> basis;
  basis.reserve(static_cast<std::size_t>(space.rank * space.algebra.dim()));
  for (int i = 0; i < space.rank; ++i) {
    for (int t = 0; t < space.algebra.num_blocks(); ++t) {
      const int n = space.algebra.block(t);
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          ModuleVector e = ModuleVector::zero(space);
          e.coord(i).block(t)(p, q) = 1.0;
          basis.push_back(std::move(e));
        }
      }
    }
  }
  return basis;
}

std::vector<ModuleVector> standard_basis(const ModuleSpace& space) {
  std::vector<ModuleVector> basis;
  for (int i = 0; i < space.rank; ++i) {
    ModuleVector e = ModuleVector::zero(space);
    e.coord(i) = AlgebraElement::unit(space.algebra);
    basis.push_back(std::move(e));
  }
  return basis;
}

ModuleVector random_vector(const ModuleSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ModuleVector x = ModuleVector::zero(space);
  for (int i = 0; i < space.rank; ++i) {
    for (int t = 0; t < space.algebra.num_blocks(); ++t) {
      Matrix& b = x.coord(i).block(t);
      for (Eigen::Index p = 0; p < b.rows(); ++p) {
        for (Eigen::Index q = 0; q < b.cols(); ++q) b(p, q) = Complex(normal(rng), normal(rng));
      }
    }
  }
  return x;
}

RealVector realify(const AlgebraElement& a) {
  RealVector v(2 * a.shape().dim());
  Eigen::Index k = 0;
  for (const auto& b : a.blocks()) {
    for (Eigen::Index p = 0; p < b.rows(); ++p) {
      for (Eigen::Index q = 0; q < b.cols(); ++q) {
        v(k++) = b(p, q).real();
        v(k++) = b(p, q).imag();
      }
    }
  }
  return v;
}

AlgebraElement unrealify(const AlgebraShape& shape, const RealVector& v) {
  if (v.size() != 2 * shape.dim()) {
    throw Error(ErrorCode::kShapeMismatch, "real vector length does not match algebra");
  }
  AlgebraElement a = AlgebraElement::zero(shape);
  Eigen::Index k = 0;
  for (int t = 0; t < shape.num_blocks(); ++t) {
    Matrix& b = a.block(t);
    for (Eigen::Index p = 0; p < b.rows(); ++p) {
      for (Eigen::Index q = 0; q < b.cols(); ++q) {
        b(p, q) = Complex(v(k), v(k + 1));
        k += 2;
      }
    }
  }
  return a;
}

RealVector realify(const ModuleVector& x) {
  const Eigen::Index per = 2 * x.space().algebra.dim();
  RealVector v(x.space().real_dim());
  for (int i = 0; i < x.space().rank; ++i) v.segment(i * per, per) = realify(x.coord(i));
  return v;
}

ModuleVector unrealify(const ModuleSpace& space, const RealVector& v) {
  if (v.size() != space.real_dim()) {
    throw Error(ErrorCode::kSpaceMismatch, "real vector length does not match module");
  }
  const Eigen::Index per = 2 * space.algebra.dim();
  std::vector<AlgebraElement> coords;
  for (int i = 0; i < space.rank; ++i) {
    coords.push_back(unrealify(space.algebra, v.segment(i * per, per)));
  }
  return ModuleVector(space, std::move(coords));
}

}  // namespace sgf
