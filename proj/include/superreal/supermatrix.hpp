#pragma once

// (m|n) block supermatrices over a superalgebra:
//
//   X = ( P  Q )   P: m x m, S: n x n even entries,
//       ( R  S )   Q, R odd entries (for an even supermatrix).

#include "superreal/algebra.hpp"
#include "superreal/linalg.hpp"

#include <cctype>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace superreal {

struct Shape {
  int m = 0;
  int n = 0;

  void validate() const {
    if (m < 0 || n < 0 || m + n < 1) throw ShapeMismatch("shape needs m, n >= 0 and m + n >= 1");
  }
  int size() const { return m + n; }
  bool even_row(int i) const { return i < m; }
  /// Entry (i, j) sits in a diagonal block (P or S).
  bool diagonal_block(int i, int j) const { return (i < m) == (j < m); }
  std::string str() const { return std::to_string(m) + "|" + std::to_string(n); }
  friend bool operator==(const Shape&, const Shape&) = default;
};

class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(Shape shape, Signature sig) : shape_(shape), sig_(sig) {
    shape_.validate();
    entries_.assign(static_cast<std::size_t>(shape_.size() * shape_.size()), SuperNumber(sig_));
  }

  static SuperMatrix identity(Shape shape, const Signature& sig) {
    SuperMatrix x(shape, sig);
    for (int i = 0; i < shape.size(); ++i) x(i, i) = SuperNumber::constant(sig, 1);
    return x;
  }

  static SuperMatrix from_constant(Shape shape, const Signature& sig, const ConstMatrix& c) {
    if (static_cast<int>(c.rows()) != shape.size() || static_cast<int>(c.cols()) != shape.size())
      throw ShapeMismatch("constant matrix does not fit shape " + shape.str());
    SuperMatrix x(shape, sig);
    for (int i = 0; i < shape.size(); ++i)
      for (int j = 0; j < shape.size(); ++j) x(i, j) = SuperNumber::constant(sig, c(i, j));
    return x;
  }

  const Shape& shape() const { return shape_; }
  const Signature& signature() const { return sig_; }
  int size() const { return shape_.size(); }

  SuperNumber& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * size() + j)]; }
  const SuperNumber& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * size() + j)]; }

  /// Diagonal blocks carry even entries and off-diagonal blocks odd ones.
  bool is_even() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        const auto& x = (*this)(i, j);
        if (shape_.diagonal_block(i, j) ? !x.is_even() : !x.is_odd()) return false;
      }
    return true;
  }

  bool is_zero() const {
    for (const auto& x : entries_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_block_diagonal() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (!shape_.diagonal_block(i, j) && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  bool is_block_off_diagonal() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (shape_.diagonal_block(i, j) && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  /// Coefficient matrix of the empty monomial.
  ConstMatrix body() const {
    ConstMatrix b(static_cast<std::size_t>(size()), static_cast<std::size_t>(size()));
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) b(i, j) = (*this)(i, j).body();
    return b;
  }

  SuperMatrix map(const std::function<SuperNumber(const SuperNumber&)>& f, const Signature& target) const {
    SuperMatrix out(shape_, target);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = f(entries_[k]);
    return out;
  }

  /// Entrywise conjugation c(X) = X-bar.
  SuperMatrix conjugate() const {
    return map([](const SuperNumber& x) { return x.conjugate(); }, sig_);
  }

  /// Entrywise application of a superalgebra morphism.
  SuperMatrix apply(const AlgebraMorphism& f) const {
    if (!(f.source() == sig_)) throw SignatureMismatch("morphism source differs from matrix algebra");
    return map([&](const SuperNumber& x) { return f.apply(x); }, f.target());
  }

  SuperMatrix operator-() const {
    SuperMatrix out = *this;
    for (auto& x : out.entries_) x = -x;
    return out;
  }

  SuperMatrix& operator+=(const SuperMatrix& o) {
    require_compatible(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  SuperMatrix& operator-=(const SuperMatrix& o) {
    require_compatible(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }

  friend SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
  friend SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b) { return a -= b; }

  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    a.require_compatible(b);
    SuperMatrix out(a.shape_, a.sig_);
    const int N = a.size();
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < N; ++j) {
          const auto& bkj = b(k, j);
          if (bkj.is_zero()) continue;
          out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  /// Left scalar multiple a*X (entries a*x_ij).
  friend SuperMatrix operator*(const SuperNumber& a, const SuperMatrix& x) {
    SuperMatrix out = x;
    for (auto& e : out.entries_) e = a * e;
    return out;
  }

  friend SuperMatrix operator*(const GaussianRational& c, const SuperMatrix& x) {
    SuperMatrix out = x;
    for (auto& e : out.entries_) e = c * e;
    return out;
  }

  /// C * X with a constant matrix C.
  friend SuperMatrix operator*(const ConstMatrix& c, const SuperMatrix& x) {
    const int N = x.size();
    SuperMatrix out(x.shape_, x.sig_);
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        if (c(i, k).is_zero()) continue;
        for (int j = 0; j < N; ++j)
          if (!x(k, j).is_zero()) out(i, j) += c(i, k) * x(k, j);
      }
    return out;
  }

  /// X * C with a constant matrix C.
  friend SuperMatrix operator*(const SuperMatrix& x, const ConstMatrix& c) {
    const int N = x.size();
    SuperMatrix out(x.shape_, x.sig_);
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        if (x(i, k).is_zero()) continue;
        for (int j = 0; j < N; ++j)
          if (!c(k, j).is_zero()) out(i, j) += c(k, j) * x(i, k);
      }
    return out;
  }

  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.shape_ == b.shape_ && a.sig_ == b.sig_ && a.entries_ == b.entries_;
  }

  std::string str() const;

 private:
  void require_compatible(const SuperMatrix& o) const {
    if (!(shape_ == o.shape_)) throw ShapeMismatch("supermatrix shapes differ: " + shape_.str() + " vs " + o.shape_.str());
    if (!(sig_ == o.sig_)) throw SignatureMismatch("supermatrices over different superalgebras");
  }

  Shape shape_;
  Signature sig_;
  std::vector<SuperNumber> entries_;
};

inline SuperMatrix commutator(const SuperMatrix& x, const SuperMatrix& y) { return x * y - y * x; }

/// (A, B; C, D) -> (A^t, -C^t; B^t, D^t)
inline SuperMatrix supertranspose(const SuperMatrix& x) {
  const Shape& s = x.shape();
  SuperMatrix out(s, x.signature());
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j) {
      bool upper_right = i < s.m && j >= s.m;
      out(i, j) = upper_right ? -x(j, i) : x(j, i);
    }
  return out;
}

/// (A, B; C, D) -> (D, C; B, A); needs m == n.
inline SuperMatrix pi_transpose(const SuperMatrix& x) {
  const Shape& s = x.shape();
  if (s.m != s.n) throw ShapeMismatch("Pi-transpose needs m == n, got " + s.str());
  SuperMatrix out(s, x.signature());
  auto swap = [&](int i) { return i < s.m ? i + s.m : i - s.m; };
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j) out(i, j) = x(swap(i), swap(j));
  return out;
}

/// tr P - tr S
inline SuperNumber supertrace(const SuperMatrix& x) {
  SuperNumber acc(x.signature());
  for (int i = 0; i < x.size(); ++i) {
    if (x.shape().even_row(i))
      acc += x(i, i);
    else
      acc -= x(i, i);
  }
  return acc;
}

/// (A, B; C, D) -> (A, lambda B; lambda^-1 C, D)
inline SuperMatrix delta_scale(const GaussianRational& lambda, const SuperMatrix& x) {
  if (lambda.is_zero()) throw NotInvertible("delta scaling needs lambda != 0");
  const Shape& s = x.shape();
  GaussianRational inv = lambda.inverse();
  SuperMatrix out = x;
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j) {
      if (i < s.m && j >= s.m) out(i, j) = lambda * x(i, j);
      if (i >= s.m && j < s.m) out(i, j) = inv * x(i, j);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Square blocks of entries: products, determinants, inverses.

namespace detail {

using Block = std::vector<SuperNumber>;  // row-major k x k

inline Block block_mul(const Block& a, const Block& b, int k, const Signature& sig) {
  Block out(static_cast<std::size_t>(k * k), SuperNumber(sig));
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) {
      const auto& x = a[i * k + l];
      if (x.is_zero()) continue;
      for (int j = 0; j < k; ++j)
        if (!b[l * k + j].is_zero()) out[i * k + j] += x * b[l * k + j];
    }
  return out;
}

/// Body inversion followed by the terminating series sum_k (-B^-1 N)^k B^-1.
inline Block block_inverse(const Block& x, int k, const Signature& sig) {
  ConstMatrix body(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) body(i, j) = x[i * k + j].body();
  auto body_inv = try_inverse(body);
  if (!body_inv) throw NotInvertible("matrix body is singular");
  Block binv(static_cast<std::size_t>(k * k), SuperNumber(sig));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) binv[i * k + j] = SuperNumber::constant(sig, (*body_inv)(i, j));
  Block nil = x;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) nil[i * k + j] -= SuperNumber::constant(sig, body(i, j));
  Block t = block_mul(binv, nil, k, sig);
  for (auto& e : t) e = -e;
  Block sum(static_cast<std::size_t>(k * k), SuperNumber(sig));
  for (int i = 0; i < k; ++i) sum[i * k + i] = SuperNumber::constant(sig, 1);
  Block power = sum;
  for (int step = 0; step <= sig.generator_count(); ++step) {
    power = block_mul(power, t, k, sig);
    bool zero = true;
    for (const auto& e : power)
      if (!e.is_zero()) {
        zero = false;
        break;
      }
    if (zero) break;
    for (std::size_t q = 0; q < sum.size(); ++q) sum[q] += power[q];
  }
  return block_mul(sum, binv, k, sig);
}

inline SuperNumber laplace_det(const Block& a, int k, const Signature& sig) {
  if (k == 0) return SuperNumber::constant(sig, 1);
  if (k == 1) return a[0];
  if (k == 2) return a[0] * a[3] - a[1] * a[2];
  SuperNumber acc(sig);
  for (int col = 0; col < k; ++col) {
    if (a[col].is_zero()) continue;
    Block minor;
    minor.reserve(static_cast<std::size_t>((k - 1) * (k - 1)));
    for (int i = 1; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (j != col) minor.push_back(a[i * k + j]);
    SuperNumber term = a[col] * laplace_det(minor, k - 1, sig);
    if (col % 2)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

/// Determinant of a block with even (hence central) entries.
///
/// Cofactor expansion up to 4x4. Larger blocks use elimination with pivots of
/// invertible body when one exists, falling back to cofactors otherwise.
inline SuperNumber even_det(Block a, int k, const Signature& sig) {
  if (k <= 4) return laplace_det(a, k, sig);
  SuperNumber det = SuperNumber::constant(sig, 1);
  for (int col = 0; col < k; ++col) {
    int sel = col;
    while (sel < k && a[sel * k + col].body().is_zero()) ++sel;
    if (sel == k) return laplace_det(a, k, sig);
    if (sel != col) {
      for (int j = 0; j < k; ++j) std::swap(a[sel * k + j], a[col * k + j]);
      det = -det;
    }
    det = det * a[col * k + col];
    SuperNumber inv = a[col * k + col].inverse();
    for (int r = col + 1; r < k; ++r) {
      if (a[r * k + col].is_zero()) continue;
      SuperNumber f = a[r * k + col] * inv;
      for (int j = col; j < k; ++j) a[r * k + j] -= f * a[col * k + j];
    }
  }
  return det;
}

}  // namespace detail

/// sdet(X) = det(P - Q S^-1 R) det(S^-1)
inline SuperNumber berezinian(const SuperMatrix& x) {
  const Shape& s = x.shape();
  const Signature& sig = x.signature();
  const int m = s.m, n = s.n;
  auto block = [&](int r0, int c0, int rows, int cols) {
    detail::Block b;
    b.reserve(static_cast<std::size_t>(rows * cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) b.push_back(x(r0 + i, c0 + j));
    return b;
  };
  detail::Block P = block(0, 0, m, m), S = block(m, m, n, n);
  for (const auto& e : P)
    if (!e.is_even()) throw NotInvertible("Berezinian needs even diagonal blocks");
  for (const auto& e : S)
    if (!e.is_even()) throw NotInvertible("Berezinian needs even diagonal blocks");
  if (n == 0) {
    SuperNumber d = detail::even_det(P, m, sig);
    if (d.body().is_zero()) throw NotInvertible("body of P is singular");
    return d;
  }
  detail::Block Sinv = detail::block_inverse(S, n, sig);
  if (m == 0) return detail::even_det(Sinv, n, sig);
  // P - Q S^-1 R
  detail::Block Q = block(0, m, m, n), R = block(m, 0, n, m);
  detail::Block reduced = P;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      SuperNumber acc(sig);
      for (int a = 0; a < n; ++a) {
        if (Q[i * n + a].is_zero()) continue;
        for (int b = 0; b < n; ++b) {
          if (Sinv[a * n + b].is_zero() || R[b * m + j].is_zero()) continue;
          acc += Q[i * n + a] * Sinv[a * n + b] * R[b * m + j];
        }
      }
      reduced[i * m + j] -= acc;
    }
  SuperNumber dp = detail::even_det(reduced, m, sig);
  if (dp.body().is_zero()) throw NotInvertible("body of P is singular");
  return dp * detail::even_det(Sinv, n, sig);
}

/// Two-sided inverse; throws NotInvertible when the body is singular.
inline SuperMatrix invert(const SuperMatrix& x) {
  const int N = x.size();
  detail::Block entries;
  entries.reserve(static_cast<std::size_t>(N * N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) entries.push_back(x(i, j));
  auto inv = detail::block_inverse(entries, N, x.signature());
  SuperMatrix out(x.shape(), x.signature());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out(i, j) = std::move(inv[i * N + j]);
  return out;
}

// ---------------------------------------------------------------------------
// Named constant matrices.

/// J_n = (0, 1_n; -1_n, 0), a 2n x 2n matrix.
inline ConstMatrix symplectic_unit(int n) {
  ConstMatrix j(static_cast<std::size_t>(2 * n), static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    j(k, n + k) = 1;
    j(n + k, k) = -1;
  }
  return j;
}

/// I_n^l = diag(1_l, -1_{n-l})
inline ConstMatrix signature_matrix(int n, int l) {
  if (l < 0 || l > n) throw std::invalid_argument("I_n^l needs 0 <= l <= n");
  ConstMatrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out(k, k) = k < l ? 1 : -1;
  return out;
}

inline ConstMatrix unit_matrix(int n) { return ConstMatrix::identity(static_cast<std::size_t>(n)); }

inline ConstMatrix block_diag(const std::vector<ConstMatrix>& blocks) {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.rows();
  ConstMatrix out(total, total);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return out;
}

/// J_{m,n} = diag(1_m, J_n) on shape (m | 2n).
inline ConstMatrix orthosymplectic_form(int m, int n) { return block_diag({unit_matrix(m), symplectic_unit(n)}); }

inline ConstMatrix conj(const ConstMatrix& c) {
  ConstMatrix out = c;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) out(i, j) = c(i, j).conj();
  return out;
}

// ---------------------------------------------------------------------------
// Literal format: "shape m|n [[e, e],[e, e]]" with SuperNumber entries.

inline std::string SuperMatrix::str() const {
  std::string out = "shape " + shape_.str() + " [";
  for (int i = 0; i < size(); ++i) {
    out += (i ? ",[" : "[");
    for (int j = 0; j < size(); ++j) out += (j ? ", " : "") + (*this)(i, j).str();
    out += "]";
  }
  return out + "]";
}

inline std::ostream& operator<<(std::ostream& os, const SuperMatrix& x) { return os << x.str(); }

inline SuperMatrix parse_super_matrix(std::string_view text, const Signature& sig) {
  std::string src;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) src += c;
  auto fail = [&](const std::string& what) -> void { throw ParseError(what + " in matrix literal '" + src + "'"); };
  if (src.rfind("shape", 0) != 0) fail("expected 'shape'");
  std::size_t pos = 5;
  auto integer = [&]() {
    std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    return std::stoi(src.substr(start, pos - start));
  };
  Shape shape;
  shape.m = integer();
  if (pos >= src.size() || src[pos] != '|') fail("expected '|'");
  ++pos;
  shape.n = integer();
  shape.validate();
  SuperMatrix x(shape, sig);
  auto expect = [&](char c) {
    if (pos >= src.size() || src[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };
  expect('[');
  for (int i = 0; i < shape.size(); ++i) {
    if (i) expect(',');
    expect('[');
    for (int j = 0; j < shape.size(); ++j) {
      std::size_t end = pos;
      while (end < src.size() && src[end] != ',' && src[end] != ']') ++end;
      x(i, j) = parse_super_number(src.substr(pos, end - pos), sig);
      pos = end;
      if (j + 1 < shape.size()) expect(',');
    }
    expect(']');
  }
  expect(']');
  if (pos != src.size()) fail("trailing input");
  return x;
}

}  // namespace superreal
