#include "superreal/supergroup.hpp"

#include <gtest/gtest.h>

using namespace superreal;

namespace {

GroupKind SL(int m, int n) { return {GroupType::SL, {m, n}}; }
GroupKind OSp(int m, int n) { return {GroupType::OSp, {m, n}}; }

const std::vector<GroupKind>& small_groups() {
  static const std::vector<GroupKind> g = {SL(1, 1), SL(2, 1), SL(2, 2), OSp(1, 2), OSp(2, 2)};
  return g;
}

Signature sig_for(const GroupRealStructureDescriptor& d, int pairs = 1) {
  return Signature::grassmann(pairs, d.conjugation());
}

std::string failures(const VerificationReport& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (c.status == Status::fail) out += c.name + " ";
  return out;
}

SuperMatrix diag(const Shape& s, const Signature& sig, std::vector<SuperNumber> d) {
  SuperMatrix x(s, sig);
  for (int i = 0; i < s.size(); ++i) x(i, i) = d[i];
  return x;
}

/// st(X) J X computed entry by entry, without the library's supertranspose.
SuperMatrix orthosymplectic_product(const SuperMatrix& x, int m, int n0) {
  const int N = x.size();
  ConstMatrix J = orthosymplectic_form(m, n0);
  auto st = [&](int i, int j) {
    SuperNumber e = x(j, i);
    return (i < m && j >= m) ? -e : e;
  };
  SuperMatrix out(x.shape(), x.signature());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
          if (!J(a, b).is_zero()) out(i, j) += J(a, b) * (st(i, a) * x(b, j));
  return out;
}

}  // namespace

TEST(GroupMembership, Examples) {
  Signature c = Signature::grassmann(1, Conjugation::Standard);
  EXPECT_TRUE(membership(SL(2, 1), SuperMatrix::identity({2, 1}, c)));
  EXPECT_TRUE(membership(OSp(2, 2), SuperMatrix::identity({2, 2}, c)));
  auto k = [&](int v) { return SuperNumber::constant(c, v); };
  EXPECT_TRUE(membership(SL(1, 1), diag({1, 1}, c, {k(2), k(2)})));
  EXPECT_FALSE(membership(SL(1, 1), diag({1, 1}, c, {k(2), k(1)})));
  EXPECT_FALSE(membership(OSp(1, 2), diag({1, 2}, c, {k(1), k(2), k(2)})));
  // diag(1, 2, 1/2) preserves the symplectic form on the odd block.
  SuperMatrix t = diag({1, 2}, c, {k(1), k(2), SuperNumber::constant(c, Rational(1, 2))});
  EXPECT_TRUE(membership(OSp(1, 2), t));
  EXPECT_THROW(membership(SL(1, 1), SuperMatrix::identity({2, 1}, c)), ShapeMismatch);
  EXPECT_THROW(membership(SL(1, 1), SuperMatrix({1, 1}, c)), NotInvertible);
}

TEST(GroupMembership, SingleOddElementary) {
  Signature c = Signature::grassmann(1, Conjugation::Standard);
  for (const auto& g : {SL(1, 1), SL(2, 1), SL(2, 2)}) {
    SuperMatrix x = SuperMatrix::identity(g.shape, c);
    x(0, g.shape.m) = SuperNumber::generator(c, c.theta(0));
    EXPECT_TRUE(membership(g, x)) << g.str();
    x(g.shape.m, 0) = SuperNumber::generator(c, c.partner(0));
    // Ber = det(P - Q S^{-1} R) / det S = 1 - θθ̃.
    EXPECT_FALSE(membership(g, x)) << g.str();
  }
}

TEST(Sampling, ElementsAreMembersAndDeterministic) {
  for (const auto& g : small_groups()) {
    Signature s = Signature::grassmann(2, Conjugation::Standard);
    Rng a(3, "sample"), b(3, "sample");
    for (int t = 0; t < 5; ++t) {
      SuperMatrix x = sample_group_element(g, s, a);
      EXPECT_TRUE(membership(g, x)) << g.str();
      EXPECT_EQ(x, sample_group_element(g, s, b));
    }
  }
}

TEST(Sampling, CayleyLandsInOSpByDirectExpansion) {
  Signature c = Signature::grassmann(1, Conjugation::Graded);
  EXPECT_EQ(cayley(SuperMatrix({2, 2}, c)), SuperMatrix::identity({2, 2}, c));
  Rng rng(8, "cayley");
  for (const auto& g : {OSp(1, 2), OSp(2, 2), OSp(3, 2), OSp(1, 4)}) {
    const int n0 = g.shape.n / 2;
    SuperMatrix J = SuperMatrix::from_constant(g.shape, c, orthosymplectic_form(g.shape.m, n0));
    int checked = 0;
    for (int t = 0; t < 6; ++t) {
      SuperMatrix X = random_point(rng, g.lie_kind(), c);
      SuperMatrix y;
      try {
        y = cayley(X);
      } catch (const NotInvertible&) {
        continue;
      }
      EXPECT_EQ(orthosymplectic_product(y, g.shape.m, n0), J) << g.str();
      ++checked;
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(Lift, FormsAsTabulated) {
  for (const auto& d : applicable_group_descriptors(SL(2, 2))) {
    bool inv = d.base.family == Family::sigma1 || d.base.family == Family::sigma4 || d.base.family == Family::omega2;
    EXPECT_EQ(d.lift, inv ? LiftForm::InverseNeg : LiftForm::Direct) << d.full_name();
  }
  for (const auto& d : applicable_group_descriptors(OSp(2, 2))) EXPECT_EQ(d.lift, LiftForm::Direct);
}

TEST(Lift, IdentityIsFixed) {
  for (const auto& g : small_groups())
    for (const auto& d : applicable_group_descriptors(g)) {
      SuperMatrix id = SuperMatrix::identity(g.shape, sig_for(d));
      EXPECT_EQ(eval_lift(d, id), id) << d.full_name();
    }
}

TEST(Lift, NamedExamplesStayInGroup) {
  auto s3 = make_group_descriptor(Family::sigma3, SL(1, 1));
  Signature c = sig_for(s3, 2);
  Rng rng(4, "sigma3");
  for (int t = 0; t < 5; ++t) EXPECT_NO_THROW(eval_lift(s3, sample_group_element(SL(1, 1), c, rng)));

  auto w2 = make_group_descriptor(Family::omega2, SL(1, 1), 1, 1);
  Signature g = sig_for(w2);
  SuperNumber tt = SuperNumber::generator(g, g.theta(0)) * SuperNumber::generator(g, g.partner(0));
  SuperNumber one = SuperNumber::constant(g, 1);
  SuperMatrix x = diag({1, 1}, g, {one + tt, one + tt});
  ASSERT_TRUE(membership(SL(1, 1), x));
  SuperMatrix y = eval_lift(w2, x);
  EXPECT_TRUE(membership(SL(1, 1), y));
  // Oracle: θθ̃ is real under θ ↦ θ̃ ↦ -θ, so -ω̃2(x) = st(x) = x and the lift is x^{-1}.
  EXPECT_EQ(y, diag({1, 1}, g, {one - tt, one - tt}));
}

TEST(GroupVerify, EveryLiftPasses) {
  for (const auto& g : small_groups())
    for (const auto& d : applicable_group_descriptors(g)) {
      auto r = verify_group_real_structure(d, sig_for(d), 3, 5);
      EXPECT_EQ(r.count(Status::fail), 0) << d.full_name() << ": " << failures(r);
    }
}

TEST(GroupVerify, NamedExamples) {
  auto s1 = make_group_descriptor(Family::sigma1, SL(2, 1), 1, 1);
  auto r1 = verify_group_real_structure(s1, sig_for(s1), 50, 1);
  for (const char* n : {"multiplicativity", "involutivity", "va-equivariance", "closure"})
    EXPECT_EQ(r1.find(n)->status, Status::pass) << n;

  auto x1 = make_group_descriptor(Family::xi1, OSp(2, 2), 1);
  auto r2 = verify_group_real_structure(x1, sig_for(x1), 20, 1);
  EXPECT_FALSE(r2.any_failed()) << failures(r2);
}

TEST(GroupVerify, DirectLiftOfSigmaOneFails) {
  auto bad = with_lift(make_group_descriptor(Family::sigma1, SL(2, 1), 1, 1), LiftForm::Direct);
  EXPECT_EQ(bad.full_name(), "SL(2|1):Sigma1(1,1)-direct");
  auto r = verify_group_real_structure(bad, sig_for(bad), 10, 1);
  const Check* c = r.find("multiplicativity");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, Status::fail);
  ASSERT_TRUE(c->witness);
  EXPECT_TRUE(c->witness->contains("expected"));
  EXPECT_THROW(eval_lift(bad, SuperMatrix::identity({2, 1}, sig_for(bad))), MembershipViolation);
}

TEST(GroupVerify, StrictXiTwoOnlyFlags) {
  auto d = make_group_descriptor(Family::xi2, OSp(2, 2), 1, std::nullopt, true);
  auto r = verify_group_real_structure(d, sig_for(d), 4, 2);
  EXPECT_EQ(r.count(Status::fail), 0);
  EXPECT_GT(r.count(Status::flagged), 1);
}

TEST(DualNumbers, BerezinianExpansion) {
  // Ber(Id + εM) = 1 + ε str M for any even M.
  Signature s = Signature::grassmann(1, Conjugation::Standard);
  DualExtension dual = adjoin_dual(s);
  SuperNumber eps = SuperNumber::generator(dual.extended, dual.eps_id);
  Rng rng(6, "ber-dual");
  for (const Shape& sh : {Shape{1, 1}, Shape{2, 1}, Shape{1, 2}}) {
    for (int t = 0; t < 4; ++t) {
      SuperMatrix M = random_even_supermatrix(rng, sh, s);
      SuperNumber want = SuperNumber::constant(dual.extended, 1) + eps * dual.include.apply(supertrace(M));
      EXPECT_EQ(berezinian(dual_point(M, dual)), want);
    }
  }
}

TEST(DualNumbers, KernelIsLiePoints) {
  for (const auto& g : small_groups()) {
    for (Conjugation c : {Conjugation::Standard, Conjugation::Graded}) {
      auto r = lie_points_check(g, Signature::grassmann(1, c), 4, 3);
      EXPECT_FALSE(r.any_failed()) << g.str() << ": " << failures(r);
    }
    // Over C the Lie points are V_0 plus nothing odd; over C[θ, θ̃] all of (A ⊗ V)_0.
    auto dims = expected_dimensions(g.lie_kind());
    PointSpace p0(g.lie_kind(), Signature::grassmann(0, Conjugation::Standard));
    EXPECT_EQ(p0.complex_dim(), dims.first);
    PointSpace p1(g.lie_kind(), Signature::grassmann(1, Conjugation::Standard));
    EXPECT_EQ(p1.complex_dim(), 2 * dims.first + 2 * dims.second);
  }
}

TEST(DualNumbers, ProjectionKillsEps) {
  Signature s = Signature::grassmann(1, Conjugation::Standard);
  DualExtension dual = adjoin_dual(s);
  Rng rng(2, "proj");
  SuperMatrix M = random_point(rng, {LieKind::sl, {2, 1}}, s);
  EXPECT_EQ(dual_point(M, dual).apply(dual.project), SuperMatrix::identity({2, 1}, s));
  EXPECT_EQ(eps_coefficient(dual_point(M, dual), dual, s), M);
}

TEST(Induced, ExtractedMapMatchesBaseAutomorphism) {
  for (const auto& g : small_groups())
    for (const auto& d : applicable_group_descriptors(g)) {
      Signature s = sig_for(d);
      auto r = induced_lie_structure(d, s, 2, 7);
      EXPECT_FALSE(r.any_failed()) << d.full_name() << ": " << failures(r);
    }
  // Direct oracle for one entry: Σ(Id + εM) - Id = ε σ̄1(M).
  auto s1 = make_group_descriptor(Family::sigma1, SL(2, 1), 0, 1);
  Signature s = sig_for(s1);
  DualExtension dual = adjoin_dual(s);
  Rng rng(1, "oracle");
  SuperMatrix M = random_point(rng, s1.group.lie_kind(), s);
  SuperNumber eps = SuperNumber::generator(dual.extended, dual.eps_id);
  SuperMatrix want = SuperMatrix::identity({2, 1}, dual.extended) + eps * s1.base.apply(M).apply(dual.include);
  EXPECT_EQ(s1.apply(dual_point(M, dual)), want);
}

TEST(Induced, DirectLiftHasWrongConstantTerm) {
  auto bad = with_lift(make_group_descriptor(Family::omega2, SL(2, 1), 1, 1), LiftForm::Direct);
  auto r = induced_lie_structure(bad, sig_for(bad), 2, 1);
  EXPECT_EQ(r.find("constant-term")->status, Status::fail);
}

TEST(LieOfFixedGroup, SpansAgree) {
  auto s2 = make_group_descriptor(Family::sigma2, SL(2, 2));
  auto r = lie_of_fixed_group_check(s2, sig_for(s2));
  EXPECT_FALSE(r.any_failed()) << failures(r);

  auto w3 = make_group_descriptor(Family::omega3, SL(1, 1));
  EXPECT_FALSE(lie_of_fixed_group_check(w3, sig_for(w3)).any_failed());

  for (const auto& g : small_groups())
    for (const auto& d : applicable_group_descriptors(g)) {
      auto r0 = lie_of_fixed_group_check(d, Signature::grassmann(0, d.conjugation()));
      EXPECT_FALSE(r0.any_failed()) << d.full_name() << ": " << failures(r0);
      EXPECT_EQ(r0.details["dimension"], basis_of_V(g.lie_kind())->even_count);
      auto r1 = lie_of_fixed_group_check(d, sig_for(d));
      EXPECT_FALSE(r1.any_failed()) << d.full_name() << ": " << failures(r1);
    }
}

TEST(GroupNames, Parsing) {
  auto d = group_descriptor_from_name("SL(2|1):Sigma1(1,1)");
  EXPECT_EQ(d.full_name(), "SL(2|1):Sigma1(1,1)");
  EXPECT_EQ(d.lift, LiftForm::InverseNeg);
  EXPECT_EQ(group_descriptor_from_name("OSp(2|2):Xi1(1)").full_name(), "OSp(2|2):Xi1(1)");
  EXPECT_EQ(group_descriptor_from_name("OSp(2|2):Psi2").base.family, Family::psi2);
  EXPECT_THROW(group_descriptor_from_name("SL(2|1):sigma1(1,1)"), ParseError);
  EXPECT_THROW(group_descriptor_from_name("sl(2|1):Sigma1(1,1)"), ParseError);
  EXPECT_THROW(group_descriptor_from_name("SL(2|1):Sigma3"), InapplicableDescriptor);
}
