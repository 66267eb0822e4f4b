#include "superreal/sampling.hpp"
#include "superreal/supermatrix.hpp"

#include <gtest/gtest.h>

using namespace superreal;

namespace {

// Independent Berezinian oracle: Ber = det(P) * det(S - R P^-1 Q)^-1, with
// cofactor determinants and adjugate inverses written out for blocks up to 2x2.
SuperNumber small_det(const std::vector<SuperNumber>& a, int k, const Signature& sig) {
  if (k == 0) return SuperNumber::constant(sig, 1);
  if (k == 1) return a[0];
  if (k == 2) return a[0] * a[3] - a[1] * a[2];
  throw std::logic_error("oracle only handles blocks up to 2x2");
}

std::vector<SuperNumber> small_inverse(const std::vector<SuperNumber>& a, int k, const Signature& sig) {
  SuperNumber dinv = small_det(a, k, sig).inverse();
  if (k == 1) return {dinv};
  return {dinv * a[3], -(dinv * a[1]), -(dinv * a[2]), dinv * a[0]};
}

SuperNumber berezinian_oracle(const SuperMatrix& x) {
  const int m = x.shape().m, n = x.shape().n;
  const Signature& sig = x.signature();
  std::vector<SuperNumber> P, Q, R, S;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) P.push_back(x(i, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) Q.push_back(x(i, m + j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) R.push_back(x(m + i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) S.push_back(x(m + i, m + j));
  if (m == 0) return small_det(S, n, sig).inverse();
  auto Pinv = small_inverse(P, m, sig);
  std::vector<SuperNumber> reduced = S;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) reduced[i * n + j] -= R[i * m + a] * Pinv[a * m + b] * Q[b * n + j];
  return small_det(P, m, sig) * small_det(reduced, n, sig).inverse();
}

SuperMatrix constant(Shape s, const Signature& sig, std::initializer_list<GaussianRational> vals) {
  ConstMatrix c(static_cast<std::size_t>(s.size()), static_cast<std::size_t>(s.size()));
  auto it = vals.begin();
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j) c(i, j) = *it++;
  return SuperMatrix::from_constant(s, sig, c);
}

}  // namespace

TEST(SuperMatrix, ProductWithIdentityAndDualNumbers) {
  Signature a = Signature::grassmann(1, Conjugation::Standard);
  auto dual = adjoin_dual(a);
  const Signature& s = dual.extended;
  Rng rng(1, "sm-mul");
  Shape shape{2, 1};
  SuperMatrix id = SuperMatrix::identity(shape, s);
  SuperMatrix eps = SuperNumber::generator(s, dual.eps_id) * id;
  for (int k = 0; k < 10; ++k) {
    SuperMatrix x = random_even_supermatrix(rng, shape, s);
    EXPECT_EQ(x * id, x);
    EXPECT_EQ(id * x, x);
    SuperMatrix m = random_even_supermatrix(rng, shape, s);
    SuperMatrix em = eps * m;
    EXPECT_EQ((id + em) * (id - em), id);
    SuperMatrix y = random_even_supermatrix(rng, shape, s);
    EXPECT_TRUE((x * y).is_even());
    EXPECT_EQ((x * y) * m, x * (y * m));
  }
}

TEST(SuperMatrix, ShapeAndSignatureMismatch) {
  Signature a = Signature::grassmann(1, Conjugation::Standard);
  Signature b = Signature::grassmann(2, Conjugation::Standard);
  EXPECT_THROW(SuperMatrix::identity({1, 1}, a) * SuperMatrix::identity({2, 1}, a), ShapeMismatch);
  EXPECT_THROW(SuperMatrix::identity({1, 1}, a) * SuperMatrix::identity({1, 1}, b), SignatureMismatch);
  EXPECT_THROW(SuperMatrix(Shape{0, 0}, a), ShapeMismatch);
}

TEST(Supertranspose, BlockFormulaAndOrderFour) {
  Signature sig = Signature::grassmann(2, Conjugation::Standard);
  Shape shape{2, 1};
  EXPECT_EQ(supertranspose(SuperMatrix::identity(shape, sig)), SuperMatrix::identity(shape, sig));
  Rng rng(2, "st");
  for (int k = 0; k < 20; ++k) {
    SuperMatrix x = random_even_supermatrix(rng, shape, sig, 3, 100);
    SuperMatrix st2 = supertranspose(supertranspose(x));
    // st^2 (A, B; C, D) = (A, -B; -C, D)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        SuperNumber expected = shape.diagonal_block(i, j) ? x(i, j) : -x(i, j);
        EXPECT_EQ(st2(i, j), expected);
      }
    EXPECT_EQ(supertranspose(st2 * SuperMatrix::identity(shape, sig)), supertranspose(st2));
    EXPECT_EQ(supertranspose(supertranspose(st2)), x);
    EXPECT_EQ(supertrace(supertranspose(x)), supertrace(x));
    // Anti-multiplicative on even supermatrices.
    SuperMatrix y = random_even_supermatrix(rng, shape, sig, 3, 100);
    EXPECT_EQ(supertranspose(x * y), supertranspose(y) * supertranspose(x));
  }
}

TEST(PiTranspose, InvolutionAndBlockSwap) {
  Signature sig = Signature::grassmann(1, Conjugation::Graded);
  Shape shape{2, 2};
  EXPECT_EQ(pi_transpose(SuperMatrix::identity(shape, sig)), SuperMatrix::identity(shape, sig));
  Rng rng(3, "pi");
  for (int k = 0; k < 10; ++k) {
    SuperMatrix x = random_even_supermatrix(rng, shape, sig);
    EXPECT_EQ(pi_transpose(pi_transpose(x)), x);
    EXPECT_TRUE(pi_transpose(x).is_even());
  }
  ConstMatrix a = block_diag({signature_matrix(2, 1), symplectic_unit(1)});
  ConstMatrix swapped = block_diag({symplectic_unit(1), signature_matrix(2, 1)});
  EXPECT_EQ(pi_transpose(SuperMatrix::from_constant(shape, sig, a)), SuperMatrix::from_constant(shape, sig, swapped));
  EXPECT_THROW(pi_transpose(SuperMatrix::identity({2, 1}, sig)), ShapeMismatch);
}

TEST(Supertrace, Examples) {
  Signature sig = Signature::grassmann(1, Conjugation::Standard);
  for (Shape s : {Shape{1, 1}, Shape{2, 1}, Shape{3, 2}}) {
    EXPECT_EQ(supertrace(SuperMatrix::identity(s, sig)), SuperNumber::constant(sig, s.m - s.n));
    ConstMatrix d = block_diag({GaussianRational(2) * ConstMatrix::identity(s.m),
                                GaussianRational(3) * ConstMatrix::identity(s.n)});
    EXPECT_EQ(supertrace(SuperMatrix::from_constant(s, sig, d)), SuperNumber::constant(sig, 2 * s.m - 3 * s.n));
  }
  Signature big = Signature::grassmann(2, Conjugation::Standard);
  Rng rng(4, "str");
  for (int k = 0; k < 20; ++k) {
    SuperMatrix x = random_even_supermatrix(rng, {2, 2}, big, 3);
    SuperMatrix y = random_even_supermatrix(rng, {2, 2}, big, 3);
    EXPECT_TRUE(supertrace(commutator(x, y)).is_zero());
  }
}

TEST(Berezinian, DiagonalAndHandExpansion) {
  Signature sig = Signature::grassmann(2, Conjugation::Standard);
  // diag(a 1_m, b 1_n) -> a^m b^-n
  ConstMatrix d = block_diag({GaussianRational(2) * ConstMatrix::identity(2), GaussianRational(3) * ConstMatrix::identity(1)});
  EXPECT_EQ(berezinian(SuperMatrix::from_constant({2, 1}, sig, d)), SuperNumber::constant(sig, Rational(4, 3)));
  SuperMatrix x = parse_super_matrix("shape 1|1 [[(1), (1)*t1],[(1)*t2, (1)]]", sig);
  EXPECT_EQ(berezinian(x), parse_super_number("(1) + (-1)*t1*t2", sig));
  EXPECT_EQ(berezinian(x), berezinian_oracle(x));
  EXPECT_THROW(berezinian(constant({1, 1}, sig, {0, 0, 0, 1})), NotInvertible);
  EXPECT_THROW(berezinian(constant({1, 1}, sig, {1, 0, 0, 0})), NotInvertible);
}

TEST(Berezinian, MultiplicativeAndMatchesOracle) {
  Signature sig = Signature::grassmann(2, Conjugation::Standard);
  Rng rng(5, "ber");
  for (Shape s : {Shape{1, 1}, Shape{2, 1}, Shape{2, 2}}) {
    for (int k = 0; k < 15; ++k) {
      SuperMatrix x = random_invertible_supermatrix(rng, s, sig);
      SuperMatrix y = random_invertible_supermatrix(rng, s, sig);
      EXPECT_EQ(berezinian(x), berezinian_oracle(x));
      EXPECT_EQ(berezinian(x * y), berezinian(x) * berezinian(y));
    }
  }
}

TEST(Berezinian, FirstOrderExpansionIsSupertrace) {
  Signature a = Signature::grassmann(1, Conjugation::Graded);
  auto dual = adjoin_dual(a);
  const Signature& s = dual.extended;
  SuperNumber eps = SuperNumber::generator(s, dual.eps_id);
  Rng rng(6, "ber-eps");
  for (Shape shape : {Shape{2, 1}, Shape{2, 2}}) {
    for (int k = 0; k < 10; ++k) {
      SuperMatrix n = random_even_supermatrix(rng, shape, s, 3, 100).apply(dual.project).apply(dual.include);
      SuperMatrix x = SuperMatrix::identity(shape, s) + eps * n;
      SuperNumber expected = SuperNumber::constant(s, 1) + eps * supertrace(n);
      EXPECT_EQ(berezinian(x), expected);
      EXPECT_EQ(berezinian_oracle(x), expected);
    }
  }
}

TEST(Sampling, InvertibleDrawsDoNotExhaustAttempts) {
  Signature sig = Signature::grassmann(2, Conjugation::Standard);
  Rng rng(1, "draws");
  for (int k = 0; k < 300; ++k) {
    SuperMatrix x = random_invertible_supermatrix(rng, {2, 2}, sig);
    EXPECT_TRUE(try_inverse(x.body()).has_value());
  }
}

TEST(Berezinian, LargeBlocksUseElimination) {
  Signature sig = Signature::grassmann(1, Conjugation::Standard);
  Rng rng(8, "ber-large");
  for (int k = 0; k < 3; ++k) {
    SuperMatrix x = random_invertible_supermatrix(rng, {5, 1}, sig);
    SuperMatrix y = random_invertible_supermatrix(rng, {5, 1}, sig);
    EXPECT_EQ(berezinian(x * y), berezinian(x) * berezinian(y));
  }
}

TEST(Invert, Examples) {
  Signature a = Signature::grassmann(1, Conjugation::Standard);
  auto dual = adjoin_dual(a);
  const Signature& s = dual.extended;
  Shape shape{1, 2};
  EXPECT_EQ(invert(SuperMatrix::identity(shape, s)), SuperMatrix::identity(shape, s));
  Rng rng(9, "inv");
  SuperNumber eps = SuperNumber::generator(s, dual.eps_id);
  for (int k = 0; k < 10; ++k) {
    SuperMatrix m = random_even_supermatrix(rng, shape, s, 3, 100);
    SuperMatrix id = SuperMatrix::identity(shape, s);
    EXPECT_EQ(invert(id + eps * m), id - eps * m);
    SuperMatrix x = random_invertible_supermatrix(rng, {2, 2}, s);
    SuperMatrix xi = invert(x);
    EXPECT_EQ(x * xi, SuperMatrix::identity({2, 2}, s));
    EXPECT_EQ(xi * x, SuperMatrix::identity({2, 2}, s));
    EXPECT_TRUE(xi.is_even());
  }
  // J_n^2 = -1 so J_n^-1 = -J_n.
  SuperMatrix j = SuperMatrix::from_constant({0, 2}, a, symplectic_unit(1));
  EXPECT_EQ(invert(j), -j);
  EXPECT_THROW(invert(SuperMatrix(Shape{1, 1}, a)), NotInvertible);
}

TEST(Constants, SignatureMatricesAndDeltaScale) {
  EXPECT_EQ(signature_matrix(3, 3), ConstMatrix::identity(3));
  EXPECT_THROW(signature_matrix(2, 3), std::invalid_argument);
  Signature sig = Signature::grassmann(1, Conjugation::Standard);
  Rng rng(10, "delta");
  GaussianRational i = GaussianRational::i();
  for (int k = 0; k < 10; ++k) {
    SuperMatrix x = random_even_supermatrix(rng, {2, 1}, sig, 3, 100);
    EXPECT_EQ(delta_scale(GaussianRational(2), delta_scale(Rational(1, 2), x)), x);
    SuperMatrix twice = delta_scale(i, delta_scale(i, x));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        SuperNumber expected = Shape{2, 1}.diagonal_block(r, c) ? x(r, c) : -x(r, c);
        EXPECT_EQ(twice(r, c), expected);
      }
    EXPECT_TRUE(delta_scale(i, x).is_even());
  }
  EXPECT_THROW(delta_scale(GaussianRational(0), SuperMatrix::identity({1, 1}, sig)), NotInvertible);
  ConstMatrix jmn = orthosymplectic_form(1, 1);
  EXPECT_EQ(jmn(0, 0), GaussianRational(1));
  EXPECT_EQ(jmn(1, 2), GaussianRational(1));
  EXPECT_EQ(jmn(2, 1), GaussianRational(-1));
}

TEST(Literal, RoundTrip) {
  Signature sig = Signature::grassmann(2, Conjugation::Graded, 1);
  Rng rng(12, "lit");
  for (int k = 0; k < 10; ++k) {
    SuperMatrix x = random_even_supermatrix(rng, {2, 1}, sig, 3);
    EXPECT_EQ(parse_super_matrix(x.str(), sig), x);
  }
  EXPECT_THROW(parse_super_matrix("shape 1|1 [[(1)]]", sig), ParseError);
  EXPECT_THROW(parse_super_matrix("1|1 [[(1),(0)],[(0),(1)]]", sig), ParseError);
}
