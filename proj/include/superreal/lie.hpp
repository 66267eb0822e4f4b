#pragma once

// A-points of gl(m|n), sl(m|n) and osp(m|2n), the representing supervector
// space V, and the identification (A ⊗ V)_0 ≅ even supermatrices over A.

#include "superreal/random.hpp"
#include "superreal/supermatrix.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace superreal {

enum class LieKind { gl, sl, osp };

inline const char* to_string(LieKind k) {
  switch (k) {
    case LieKind::gl: return "gl";
    case LieKind::sl: return "sl";
    default: return "osp";
  }
}

/// Kind plus shape. For osp the odd block size n is 2·n0.
struct AlgebraKind {
  LieKind kind = LieKind::gl;
  Shape shape;

  void validate() const {
    shape.validate();
    if (kind == LieKind::osp && shape.n % 2 != 0)
      throw ShapeMismatch("osp needs an even odd block, got " + shape.str());
  }
  int n0() const { return shape.n / 2; }
  std::string str() const { return std::string(to_string(kind)) + "(" + shape.str() + ")"; }
  friend bool operator==(const AlgebraKind&, const AlgebraKind&) = default;
  friend auto operator<=>(const AlgebraKind& a, const AlgebraKind& b) {
    return std::tie(a.kind, a.shape.m, a.shape.n) <=> std::tie(b.kind, b.shape.m, b.shape.n);
  }
};

/// Expected (even, odd) dimensions of V.
inline std::pair<int, int> expected_dimensions(const AlgebraKind& k) {
  const int m = k.shape.m, n = k.shape.n;
  switch (k.kind) {
    case LieKind::gl: return {m * m + n * n, 2 * m * n};
    case LieKind::sl: return {m * m + n * n - 1, 2 * m * n};
    default: {
      int n0 = k.n0();
      return {m * (m - 1) / 2 + n0 * (2 * n0 + 1), 2 * m * n0};
    }
  }
}

namespace detail {

/// The linear constraint of the kind applied to a constant matrix; zero iff X ∈ V.
inline std::vector<GaussianRational> constraint_residual(const AlgebraKind& k, const ConstMatrix& x) {
  const Shape& s = k.shape;
  switch (k.kind) {
    case LieKind::gl: return {};
    case LieKind::sl: {
      GaussianRational t = 0;
      for (int i = 0; i < s.size(); ++i) t += s.even_row(i) ? x(i, i) : -x(i, i);
      return {t};
    }
    default: {
      ConstMatrix st(x.rows(), x.cols());
      for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j) st(i, j) = (i < s.m && j >= s.m) ? -x(j, i) : x(j, i);
      ConstMatrix J = orthosymplectic_form(s.m, k.n0());
      ConstMatrix r = st * J + J * x;
      std::vector<GaussianRational> out;
      for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j) out.push_back(r(i, j));
      return out;
    }
  }
}

}  // namespace detail

/// Exact membership test for an even supermatrix over A.
inline bool membership(const AlgebraKind& k, const SuperMatrix& x) {
  if (!(x.shape() == k.shape)) throw ShapeMismatch("matrix shape " + x.shape().str() + " does not match " + k.str());
  if (!x.is_even()) return false;
  switch (k.kind) {
    case LieKind::gl: return true;
    case LieKind::sl: return supertrace(x).is_zero();
    default: {
      ConstMatrix J = orthosymplectic_form(k.shape.m, k.n0());
      return (supertranspose(x) * J + J * x).is_zero();
    }
  }
}

/// Homogeneous basis of V: even vectors first, then odd ones.
struct BasisOfV {
  AlgebraKind kind;
  std::vector<ConstMatrix> vectors;
  std::vector<int> parity;  // 0 even, 1 odd
  int even_count = 0;

  int dim() const { return static_cast<int>(vectors.size()); }
  int odd_count() const { return dim() - even_count; }

  /// Coordinates of a constant matrix of the given parity; nullopt if outside V.
  std::optional<std::vector<GaussianRational>> coordinates(const ConstMatrix& x, int p) const {
    auto flat = flatten(x);
    if ((p ? odd_count() : even_count) == 0) {
      for (const auto& e : flat)
        if (!e.is_zero()) return std::nullopt;
      return std::vector<GaussianRational>(static_cast<std::size_t>(dim()), GaussianRational(0));
    }
    auto c = solver_[p].solve(flat);
    if (!c) return std::nullopt;
    std::vector<GaussianRational> out(static_cast<std::size_t>(dim()), GaussianRational(0));
    int off = p ? even_count : 0;
    for (std::size_t k = 0; k < c->size(); ++k) out[off + k] = (*c)[k];
    return out;
  }

  /// Supercommutator [v_i, v_j] expanded in the basis.
  const std::vector<GaussianRational>& structure(int i, int j) const { return structure_[i * dim() + j]; }

  static std::vector<GaussianRational> flatten(const ConstMatrix& x) {
    std::vector<GaussianRational> out;
    out.reserve(x.rows() * x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) out.push_back(x(i, j));
    return out;
  }

  static std::shared_ptr<const BasisOfV> build(const AlgebraKind& k);

 private:
  CoordinateSolver<GaussianRational> solver_[2];
  std::vector<std::vector<GaussianRational>> structure_;
};

inline std::shared_ptr<const BasisOfV> BasisOfV::build(const AlgebraKind& k) {
  k.validate();
  const Shape& s = k.shape;
  const int N = s.size();
  auto b = std::make_shared<BasisOfV>();
  b->kind = k;
  for (int p = 0; p < 2; ++p) {
    // Unknowns: row-major positions of the diagonal (p = 0) or off-diagonal (p = 1) blocks.
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (s.diagonal_block(i, j) == (p == 0)) pos.emplace_back(i, j);
    std::vector<std::vector<GaussianRational>> columns;
    for (auto [i, j] : pos) {
      ConstMatrix e(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
      e(i, j) = 1;
      columns.push_back(detail::constraint_residual(k, e));
    }
    std::vector<std::vector<GaussianRational>> sols;
    std::size_t rows = columns.empty() ? 0 : columns[0].size();
    if (rows == 0) {
      for (std::size_t u = 0; u < pos.size(); ++u) {
        std::vector<GaussianRational> v(pos.size(), GaussianRational(0));
        v[u] = 1;
        sols.push_back(std::move(v));
      }
    } else {
      sols = nullspace(columns_to_matrix(columns, rows));
    }
    std::vector<std::vector<GaussianRational>> flats;
    for (const auto& sol : sols) {
      ConstMatrix v(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
      for (std::size_t u = 0; u < pos.size(); ++u) v(pos[u].first, pos[u].second) = sol[u];
      flats.push_back(flatten(v));
      b->vectors.push_back(std::move(v));
      b->parity.push_back(p);
    }
    if (p == 0) b->even_count = static_cast<int>(sols.size());
    if (!flats.empty())
      b->solver_[p] = CoordinateSolver<GaussianRational>(columns_to_matrix(flats, static_cast<std::size_t>(N * N)));
  }
  auto [de, dodd] = expected_dimensions(k);
  if (b->even_count != de || b->odd_count() != dodd)
    throw InternalInconsistency("basis of " + k.str() + " has dimension (" + std::to_string(b->even_count) + "|" +
                                std::to_string(b->odd_count()) + ")");
  const int d = b->dim();
  b->structure_.resize(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& v = b->vectors[i];
      const auto& w = b->vectors[j];
      ConstMatrix br = (b->parity[i] && b->parity[j]) ? v * w + w * v : v * w - w * v;
      auto c = b->coordinates(br, b->parity[i] ^ b->parity[j]);
      if (!c) throw InternalInconsistency("V is not closed under the bracket for " + k.str());
      b->structure_[i * d + j] = std::move(*c);
    }
  return b;
}

/// Cached basis; computed once per kind.
inline std::shared_ptr<const BasisOfV> basis_of_V(const AlgebraKind& k) {
  static std::mutex mutex;
  static std::map<AlgebraKind, std::shared_ptr<const BasisOfV>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  auto b = BasisOfV::build(k);
  cache.emplace(k, b);
  return b;
}

/// Element Σ a_k ⊗ v_k of (A ⊗ V)_0, one coefficient per basis vector.
struct TensorElement {
  std::shared_ptr<const BasisOfV> basis;
  std::vector<SuperNumber> coeffs;

  TensorElement(std::shared_ptr<const BasisOfV> b, const Signature& sig)
      : basis(std::move(b)), coeffs(static_cast<std::size_t>(basis->dim()), SuperNumber(sig)) {}

  const Signature& signature() const { return coeffs.front().signature(); }

  void validate() const {
    for (int k = 0; k < basis->dim(); ++k) {
      bool ok = basis->parity[k] ? coeffs[k].is_odd() : coeffs[k].is_even();
      if (!ok) throw InvalidMorphism("tensor term " + std::to_string(k) + " has coefficient of the wrong parity");
    }
  }

  friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.coeffs == b.coeffs; }
};

/// Matrix of Σ a_k ⊗ v_k: a_k·v_k for even v_k, i·a_k·v_k for odd v_k.
///
/// The factor i on the odd part makes the sign rule [a⊗v, b⊗w] = (-1)^{|b||v|} ab⊗[v,w]
/// agree with the commutator, since {iv, iw} = -{v, w}. Being a scalar, it keeps
/// every linear constraint of the kind intact.
inline SuperMatrix matrix_of(const TensorElement& x) {
  x.validate();
  const Shape& s = x.basis->kind.shape;
  const Signature& sig = x.signature();
  const GaussianRational i = GaussianRational::i();
  SuperMatrix out(s, sig);
  for (int k = 0; k < x.basis->dim(); ++k) {
    const SuperNumber& a = x.coeffs[k];
    if (a.is_zero()) continue;
    const ConstMatrix& v = x.basis->vectors[k];
    bool odd = x.basis->parity[k] == 1;
    for (int r = 0; r < s.size(); ++r)
      for (int c = 0; c < s.size(); ++c) {
        if (v(r, c).is_zero()) continue;
        out(r, c) += (odd ? i * v(r, c) : v(r, c)) * a;
      }
  }
  return out;
}

/// Inverse of matrix_of; throws MembershipViolation outside (A ⊗ V)_0.
inline TensorElement tensor_of(const SuperMatrix& x, std::shared_ptr<const BasisOfV> basis) {
  const Shape& s = x.shape();
  if (!(s == basis->kind.shape)) throw ShapeMismatch("tensor_of: shape mismatch");
  const Signature& sig = x.signature();
  TensorElement out(basis, sig);
  std::map<std::uint32_t, ConstMatrix> slices;
  const auto N = static_cast<std::size_t>(s.size());
  for (int r = 0; r < s.size(); ++r)
    for (int c = 0; c < s.size(); ++c)
      for (const auto& t : x(r, c).terms()) {
        auto [it, fresh] = slices.try_emplace(t.bits, N, N);
        it->second(r, c) = t.coeff;
      }
  const GaussianRational minus_i = -GaussianRational::i();
  for (auto& [bits, slice] : slices) {
    Monomial mono{bits};
    int p = parity_bit(mono.parity(sig));
    auto c = basis->coordinates(p ? minus_i * slice : slice, p);
    if (!c) throw MembershipViolation("matrix is not an A-point of " + basis->kind.str());
    for (int k = 0; k < basis->dim(); ++k)
      if (!(*c)[k].is_zero()) out.coeffs[k] += SuperNumber::monomial(sig, mono, (*c)[k]);
  }
  return out;
}

/// [a⊗v, b⊗w] = (-1)^{|b||v|} ab ⊗ [v, w], extended bilinearly.
inline TensorElement even_rules_bracket(const TensorElement& x, const TensorElement& y) {
  x.validate();
  y.validate();
  if (x.basis != y.basis) throw ShapeMismatch("even_rules_bracket: different algebras");
  const auto& b = *x.basis;
  TensorElement out(x.basis, x.signature());
  for (int i = 0; i < b.dim(); ++i) {
    if (x.coeffs[i].is_zero()) continue;
    for (int j = 0; j < b.dim(); ++j) {
      if (y.coeffs[j].is_zero()) continue;
      SuperNumber ab = x.coeffs[i] * y.coeffs[j];
      if (b.parity[i] && b.parity[j]) ab = -ab;
      if (ab.is_zero()) continue;
      const auto& c = b.structure(i, j);
      for (int k = 0; k < b.dim(); ++k)
        if (!c[k].is_zero()) out.coeffs[k] += c[k] * ab;
    }
  }
  return out;
}

/// An A-point: an even supermatrix satisfying the kind's constraint.
struct FunctorPoint {
  AlgebraKind kind;
  SuperMatrix matrix;

  static FunctorPoint make(const AlgebraKind& k, SuperMatrix x) {
    if (!membership(k, x)) throw MembershipViolation("not an A-point of " + k.str());
    return {k, std::move(x)};
  }
};

inline FunctorPoint bracket(const FunctorPoint& x, const FunctorPoint& y) {
  if (!(x.kind == y.kind)) throw ShapeMismatch("bracket of points of different algebras");
  return FunctorPoint::make(x.kind, commutator(x.matrix, y.matrix));
}

/// Q-coordinates of (A ⊗ V)_0: one (re, im) pair per slot (basis index, monomial of matching parity).
class PointSpace {
 public:
  struct Slot {
    int index;
    Monomial mono;
  };

  PointSpace(const AlgebraKind& k, const Signature& sig) : basis_(basis_of_V(k)), sig_(sig) {
    auto even = monomials_of_parity(sig, Parity::Even);
    auto odd = monomials_of_parity(sig, Parity::Odd);
    for (int k2 = 0; k2 < basis_->dim(); ++k2)
      for (const auto& mono : basis_->parity[k2] ? odd : even) slots_.push_back({k2, mono});
  }

  const std::shared_ptr<const BasisOfV>& basis() const { return basis_; }
  const AlgebraKind& kind() const { return basis_->kind; }
  const Signature& signature() const { return sig_; }
  const std::vector<Slot>& slots() const { return slots_; }
  /// Complex dimension of (A ⊗ V)_0.
  int complex_dim() const { return static_cast<int>(slots_.size()); }
  int real_dim() const { return 2 * complex_dim(); }

  /// A-point of mono ⊗ v_index, times a scalar.
  SuperMatrix slot_point(const Slot& s, const GaussianRational& c = 1) const {
    TensorElement t(basis_, sig_);
    t.coeffs[s.index] = SuperNumber::monomial(sig_, s.mono, c);
    return matrix_of(t);
  }

  /// Coordinates (re_0, im_0, re_1, im_1, ...).
  std::vector<Rational> coordinates(const SuperMatrix& x) const {
    TensorElement t = tensor_of(x, basis_);
    std::vector<Rational> out(static_cast<std::size_t>(real_dim()), Rational(0));
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      GaussianRational c = t.coeffs[slots_[k].index].coefficient(slots_[k].mono);
      out[2 * k] = c.re();
      out[2 * k + 1] = c.im();
    }
    return out;
  }

  SuperMatrix point(const std::vector<Rational>& coords) const {
    TensorElement t(basis_, sig_);
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      GaussianRational c(coords[2 * k], coords[2 * k + 1]);
      if (!c.is_zero()) t.coeffs[slots_[k].index] += SuperNumber::monomial(sig_, slots_[k].mono, c);
    }
    return matrix_of(t);
  }

  /// Matrix of an R-linear map on points, in the coordinates above.
  template <class Map>
  RationalMatrix real_matrix(Map&& f) const {
    const auto d = static_cast<std::size_t>(real_dim());
    RationalMatrix L(d, d);
    for (std::size_t k = 0; k < slots_.size(); ++k)
      for (int part = 0; part < 2; ++part) {
        GaussianRational unit = part ? GaussianRational::i() : GaussianRational(1);
        auto col = coordinates(f(slot_point(slots_[k], unit)));
        for (std::size_t r = 0; r < d; ++r) L(r, 2 * k + part) = col[r];
      }
    return L;
  }

 private:
  std::shared_ptr<const BasisOfV> basis_;
  Signature sig_;
  std::vector<Slot> slots_;
};

/// Random element of (A ⊗ V)_0: sparse combination with random homogeneous coefficients.
inline TensorElement random_tensor(Rng& rng, const AlgebraKind& k, const Signature& sig, int max_terms = 2,
                                   int density_percent = 50) {
  auto basis = basis_of_V(k);
  TensorElement t(basis, sig);
  for (int j = 0; j < basis->dim(); ++j) {
    if (rng.below(100) >= density_percent) continue;
    t.coeffs[j] = rng.element(sig, basis->parity[j] ? Parity::Odd : Parity::Even, max_terms);
  }
  return t;
}

inline SuperMatrix random_point(Rng& rng, const AlgebraKind& k, const Signature& sig, int max_terms = 2,
                                int density_percent = 50) {
  return matrix_of(random_tensor(rng, k, sig, max_terms, density_percent));
}

}  // namespace superreal
