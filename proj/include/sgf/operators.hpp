#pragma once

// Adjointable operators between free modules A^k -> A^m, stored as a k x m
// matrix over A acting by right multiplication: (T x)_j = sum_i x_i M_ij.
// Right multiplication commutes with the left module action, so every such
// operator is A-linear by construction.

#include <cstdint>
#include <vector>

#include "sgf/hilbert_module.hpp"

namespace sgf {

class AdjointableOp {
 public:
  AdjointableOp() = default;
  /// entries are row-major: entry (i, j) at index i * codomain.rank + j.
  AdjointableOp(ModuleSpace domain, ModuleSpace codomain, std::vector<AlgebraElement> entries);

  static AdjointableOp zero(const ModuleSpace& domain, const ModuleSpace& codomain);
  static AdjointableOp identity(const ModuleSpace& space);
  /// Right multiplication by a central or arbitrary element on every coordinate.
  static AdjointableOp diagonal(const ModuleSpace& space, const AlgebraElement& a);

  const ModuleSpace& domain() const { return domain_; }
  const ModuleSpace& codomain() const { return codomain_; }
  const AlgebraElement& entry(int i, int j) const;
  AlgebraElement& entry(int i, int j);
  const std::vector<AlgebraElement>& entries() const { return entries_; }

  AdjointableOp& operator+=(const AdjointableOp& other);
  AdjointableOp& operator-=(const AdjointableOp& other);
  AdjointableOp& operator*=(Complex s);

  friend bool operator==(const AdjointableOp&, const AdjointableOp&) = default;

 private:
  ModuleSpace domain_;
  ModuleSpace codomain_;
  std::vector<AlgebraElement> entries_;
};

AdjointableOp operator+(AdjointableOp a, const AdjointableOp& b);
AdjointableOp operator-(AdjointableOp a, const AdjointableOp& b);
AdjointableOp operator*(Complex s, AdjointableOp a);

ModuleVector apply(const AdjointableOp& t, const ModuleVector& x);
/// (T*)_ji = (M_ij)^*.
AdjointableOp adjoint_op(const AdjointableOp& t);
/// S after T. Requires T.codomain == S.domain.
AdjointableOp compose(const AdjointableOp& s, const AdjointableOp& t);

/// One complex matrix per algebra block t, of size (m n_t) x (k n_t), whose
/// (j, i) sub-block is (M_ij restricted to block t)^T. With this orientation
/// flatten(S o T) = flatten(S) flatten(T) and flatten(T*) = flatten(T)^*.
std::vector<Matrix> flatten(const AdjointableOp& t);
/// Inverse of flatten: every block family of the right sizes lifts.
AdjointableOp unflatten(const ModuleSpace& domain, const ModuleSpace& codomain,
                        const std::vector<Matrix>& blocks);

double op_norm(const AdjointableOp& t);
AdjointableOp invert(const AdjointableOp& t, const Tolerance& tol = {});
/// Inverse square root of a positive invertible operator, via the flattening.
AdjointableOp inverse_sqrt(const AdjointableOp& t);

/// (S (x) T)_{(i,j),(i',j')} = S_ii' (x) T_jj', indices in lexicographic order.
AdjointableOp tensor_op(const AdjointableOp& s, const AdjointableOp& t);

double relative_distance(const AdjointableOp& a, const AdjointableOp& b);

/// Real matrix of the operator on realified coordinates (see realify).
RealMatrix realify(const AdjointableOp& t);

/// Gaussian entries in every block.
AdjointableOp random_op(const ModuleSpace& domain, const ModuleSpace& codomain,
                        std::uint64_t seed);

}  // namespace sgf
