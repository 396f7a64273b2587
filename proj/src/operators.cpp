#include "sgf/operators.hpp"

#include <algorithm>

namespace sgf {

namespace {

std::size_t index(int i, int j, int m) {
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j);
}

void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) throw Error(code, what);
}

}  // namespace

AdjointableOp::AdjointableOp(ModuleSpace domain, ModuleSpace codomain,
                             std::vector<AlgebraElement> entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
  require(domain_.algebra == codomain_.algebra, ErrorCode::kSpaceMismatch,
          "domain and codomain must share the algebra");
  require(entries_.size() == index(domain_.rank, 0, codomain_.rank), ErrorCode::kSpaceMismatch,
          "operator matrix must be domain_rank x codomain_rank");
  for (const auto& e : entries_) {
    require(e.shape() == domain_.algebra, ErrorCode::kShapeMismatch,
            "operator entry has the wrong algebra shape");
  }
}

AdjointableOp AdjointableOp::zero(const ModuleSpace& domain, const ModuleSpace& codomain) {
  return AdjointableOp(domain, codomain,
                       std::vector<AlgebraElement>(index(domain.rank, 0, codomain.rank),
                                                   AlgebraElement::zero(domain.algebra)));
}

AdjointableOp AdjointableOp::identity(const ModuleSpace& space) {
  return diagonal(space, AlgebraElement::unit(space.algebra));
}

AdjointableOp AdjointableOp::diagonal(const ModuleSpace& space, const AlgebraElement& a) {
  AdjointableOp op = zero(space, space);
  for (int i = 0; i < space.rank; ++i) op.entry(i, i) = a;
  return op;
}

const AlgebraElement& AdjointableOp::entry(int i, int j) const {
  return entries_[index(i, j, codomain_.rank)];
}

AlgebraElement& AdjointableOp::entry(int i, int j) { return entries_[index(i, j, codomain_.rank)]; }

AdjointableOp& AdjointableOp::operator+=(const AdjointableOp& other) {
  require(domain_ == other.domain_ && codomain_ == other.codomain_, ErrorCode::kSpaceMismatch,
          "operator spaces differ");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

AdjointableOp& AdjointableOp::operator-=(const AdjointableOp& other) {
  require(domain_ == other.domain_ && codomain_ == other.codomain_, ErrorCode::kSpaceMismatch,
          "operator spaces differ");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

AdjointableOp& AdjointableOp::operator*=(Complex s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

AdjointableOp operator+(AdjointableOp a, const AdjointableOp& b) { return a += b; }
AdjointableOp operator-(AdjointableOp a, const AdjointableOp& b) { return a -= b; }
AdjointableOp operator*(Complex s, AdjointableOp a) { return a *= s; }

ModuleVector apply(const AdjointableOp& t, const ModuleVector& x) {
  require(x.space() == t.domain(), ErrorCode::kSpaceMismatch, "vector is not in the domain");
  ModuleVector y = ModuleVector::zero(t.codomain());
  const AlgebraShape& shape = t.domain().algebra;
  for (int j = 0; j < t.codomain().rank; ++j) {
    for (int i = 0; i < t.domain().rank; ++i) {
      for (int b = 0; b < shape.num_blocks(); ++b) {
        y.coord(j).block(b).noalias() += x.coord(i).block(b) * t.entry(i, j).block(b);
      }
    }
  }
  return y;
}

AdjointableOp adjoint_op(const AdjointableOp& t) {
  AdjointableOp r = AdjointableOp::zero(t.codomain(), t.domain());
  for (int i = 0; i < t.domain().rank; ++i) {
    for (int j = 0; j < t.codomain().rank; ++j) r.entry(j, i) = adjoint(t.entry(i, j));
  }
  return r;
}

AdjointableOp compose(const AdjointableOp& s, const AdjointableOp& t) {
  require(t.codomain() == s.domain(), ErrorCode::kSpaceMismatch,
          "compose: codomain of T must equal domain of S");
  // (S T x)_l = sum_j (sum_i x_i T_ij) S_jl, so the matrix of S o T is M_T M_S.
  AdjointableOp r = AdjointableOp::zero(t.domain(), s.codomain());
  const AlgebraShape& shape = t.domain().algebra;
  for (int i = 0; i < t.domain().rank; ++i) {
    for (int l = 0; l < s.codomain().rank; ++l) {
      AlgebraElement& acc = r.entry(i, l);
      for (int j = 0; j < t.codomain().rank; ++j) {
        for (int b = 0; b < shape.num_blocks(); ++b) {
          acc.block(b).noalias() += t.entry(i, j).block(b) * s.entry(j, l).block(b);
        }
      }
    }
  }
  return r;
}

std::vector<Matrix> flatten(const AdjointableOp& t) {
  const AlgebraShape& shape = t.domain().algebra;
  const int k = t.domain().rank;
  const int m = t.codomain().rank;
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(shape.num_blocks()));
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    Matrix f(m * n, k * n);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < m; ++j) f.block(j * n, i * n, n, n) = t.entry(i, j).block(b).transpose();
    }
    out.push_back(std::move(f));
  }
  return out;
}

AdjointableOp unflatten(const ModuleSpace& domain, const ModuleSpace& codomain,
                        const std::vector<Matrix>& blocks) {
  require(domain.algebra == codomain.algebra, ErrorCode::kSpaceMismatch,
          "domain and codomain must share the algebra");
  const AlgebraShape& shape = domain.algebra;
  require(static_cast<int>(blocks.size()) == shape.num_blocks(), ErrorCode::kShapeMismatch,
          "one flattened block per algebra block required");
  AdjointableOp r = AdjointableOp::zero(domain, codomain);
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const int n = shape.block(b);
    const Matrix& f = blocks[static_cast<std::size_t>(b)];
    require(f.rows() == codomain.rank * n && f.cols() == domain.rank * n,
            ErrorCode::kShapeMismatch, "flattened block has the wrong size");
    for (int i = 0; i < domain.rank; ++i) {
      for (int j = 0; j < codomain.rank; ++j) {
        r.entry(i, j).block(b) = f.block(j * n, i * n, n, n).transpose();
      }
    }
  }
  return r;
}

double op_norm(const AdjointableOp& t) {
  double n = 0.0;
  for (const auto& f : flatten(t)) n = std::max(n, dense::spectral_norm(f));
  return n;
}

AdjointableOp invert(const AdjointableOp& t, const Tolerance& tol) {
  require(t.domain() == t.codomain(), ErrorCode::kNotInvertible,
          "only operators on a single module can be inverted");
  std::vector<Matrix> inv;
  for (const auto& f : flatten(t)) {
    if (dense::min_singular_value(f) <= tol.eig_slack) {
      throw Error(ErrorCode::kNotInvertible, "flattened block is singular within eig_slack");
    }
    inv.push_back(f.fullPivLu().inverse());
  }
  return unflatten(t.domain(), t.codomain(), inv);
}

AdjointableOp inverse_sqrt(const AdjointableOp& t) {
  std::vector<Matrix> r;
  for (const auto& f : flatten(t)) r.push_back(dense::inverse_sqrt_pd(f));
  return unflatten(t.domain(), t.codomain(), r);
}

AdjointableOp tensor_op(const AdjointableOp& s, const AdjointableOp& t) {
  const ModuleSpace dom = tensor_space(s.domain(), t.domain());
  const ModuleSpace cod = tensor_space(s.codomain(), t.codomain());
  std::vector<AlgebraElement> entries;
  entries.reserve(static_cast<std::size_t>(dom.rank) * static_cast<std::size_t>(cod.rank));
  for (int i = 0; i < s.domain().rank; ++i) {
    for (int j = 0; j < t.domain().rank; ++j) {
      for (int ip = 0; ip < s.codomain().rank; ++ip) {
        for (int jp = 0; jp < t.codomain().rank; ++jp) {
          entries.push_back(tensor_elem(s.entry(i, ip), t.entry(j, jp)));
        }
      }
    }
  }
  return AdjointableOp(dom, cod, std::move(entries));
}

double relative_distance(const AdjointableOp& a, const AdjointableOp& b) {
  return op_norm(a - b) / (1.0 + op_norm(b));
}

RealMatrix realify(const AdjointableOp& t) {
  const int n = t.domain().real_dim();
  RealMatrix r(t.codomain().real_dim(), n);
  for (int c = 0; c < n; ++c) {
    RealVector e = RealVector::Zero(n);
    e(c) = 1.0;
    r.col(c) = realify(apply(t, unrealify(t.domain(), e)));
  }
  return r;
}

AdjointableOp random_op(const ModuleSpace& domain, const ModuleSpace& codomain,
                        std::uint64_t seed) {
  AdjointableOp r = AdjointableOp::zero(domain, codomain);
  std::uint64_t s = seed * 0x9E3779B97F4A7C15ULL + 1;
  for (int i = 0; i < domain.rank; ++i) {
    for (int j = 0; j < codomain.rank; ++j) {
      r.entry(i, j) = random_element(domain.algebra, s++, ElementKind::kGeneric);
    }
  }
  return r;
}

}  // namespace sgf
