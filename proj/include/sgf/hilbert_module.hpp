#pragma once

// Free left Hilbert A-modules A^k with the A-valued inner product
// <x, y> = sum_i x_i y_i^*.

#include <cstdint>
#include <vector>

#include "sgf/cstar_core.hpp"

namespace sgf {

struct ModuleSpace {
  AlgebraShape algebra;
  int rank = 1;

  ModuleSpace() = default;
  ModuleSpace(AlgebraShape a, int k);

  /// Number of real coordinates, 2 * rank * dim(A).
  int real_dim() const { return 2 * rank * algebra.dim(); }

  friend bool operator==(const ModuleSpace&, const ModuleSpace&) = default;
};

ModuleSpace tensor_space(const ModuleSpace& h, const ModuleSpace& k);

class ModuleVector {
 public:
  ModuleVector() = default;
  ModuleVector(ModuleSpace space, std::vector<AlgebraElement> coords);

  static ModuleVector zero(const ModuleSpace& space);

  const ModuleSpace& space() const { return space_; }
  const std::vector<AlgebraElement>& coords() const { return coords_; }
  const AlgebraElement& coord(int i) const { return coords_[static_cast<std::size_t>(i)]; }
  AlgebraElement& coord(int i) { return coords_[static_cast<std::size_t>(i)]; }

  ModuleVector& operator+=(const ModuleVector& other);
  ModuleVector& operator-=(const ModuleVector& other);
  ModuleVector& operator*=(Complex s);

  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

 private:
  ModuleSpace space_;
  std::vector<AlgebraElement> coords_;
};

ModuleVector operator+(ModuleVector x, const ModuleVector& y);
ModuleVector operator-(ModuleVector x, const ModuleVector& y);
ModuleVector operator*(Complex s, ModuleVector x);
/// Left module action (a . x)_i = a x_i.
ModuleVector operator*(const AlgebraElement& a, const ModuleVector& x);

/// Which sesquilinear form a module structure carries. kLeft is the module's own
/// inner product sum_i x_i y_i^*; kRight is sum_i x_i^* y_i, which turns A^k into a
/// right Hilbert module on the same coordinates.
enum class InnerForm { kLeft, kRight };

AlgebraElement inner(const ModuleVector& x, const ModuleVector& y);
AlgebraElement inner(const ModuleVector& x, const ModuleVector& y, InnerForm form);

/// |x| = <x, x>^{1/2}.
AlgebraElement module_abs(const ModuleVector& x, const Tolerance& tol = {});
/// ||x|| = ||<x, x>||^{1/2}.
double module_norm(const ModuleVector& x);

/// Exterior tensor product; coordinates (i, j) in lexicographic order.
ModuleVector tensor_vector(const ModuleVector& x, const ModuleVector& y);

/// The rank * dim(A) vectors carrying a single matrix unit e_pq in block t of
/// coordinate i, ordered by (i, t, p, q).
std::vector<ModuleVector> module_basis(const ModuleSpace& space);

/// The rank vectors with the unit in one coordinate and zeros elsewhere.
std::vector<ModuleVector> standard_basis(const ModuleSpace& space);

/// Gaussian coordinates (independent real and imaginary parts).
ModuleVector random_vector(const ModuleSpace& space, std::uint64_t seed);

// Realification. Coordinates are ordered like module_basis with the real and
// imaginary part of each entry adjacent, so real basis vector 2r is basis
// vector r and 2r + 1 is i times it.
RealVector realify(const ModuleVector& x);
ModuleVector unrealify(const ModuleSpace& space, const RealVector& v);
RealVector realify(const AlgebraElement& a);
AlgebraElement unrealify(const AlgebraShape& shape, const RealVector& v);

}  // namespace sgf
