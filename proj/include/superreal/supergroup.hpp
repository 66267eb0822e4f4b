#pragma once

// A-points of SL(m|n) and OSp(m|2n), group real structures lifting the
// Lie-level table, and the passage to Lie points through dual numbers.

#include "superreal/real_structures.hpp"
#include "superreal/sampling.hpp"

#include <string>
#include <utility>

namespace superreal {

enum class GroupType { SL, OSp };

inline const char* to_string(GroupType t) { return t == GroupType::SL ? "SL" : "OSp"; }

struct GroupKind {
  GroupType type = GroupType::SL;
  Shape shape;

  LieKind lie_type() const { return type == GroupType::SL ? LieKind::sl : LieKind::osp; }
  AlgebraKind lie_kind() const { return {lie_type(), shape}; }
  void validate() const { lie_kind().validate(); }
  std::string str() const { return std::string(to_string(type)) + "(" + shape.str() + ")"; }
  friend bool operator==(const GroupKind&, const GroupKind&) = default;
};

/// sdet = 1 or st(X) J X = J, evaluated exactly. NotInvertible if the Berezinian is undefined.
inline bool membership(const GroupKind& g, const SuperMatrix& x) {
  if (!(x.shape() == g.shape)) throw ShapeMismatch("group " + g.str() + " applied to a " + x.shape().str() + " matrix");
  if (!x.is_even()) return false;
  if (g.type == GroupType::SL) return berezinian(x) == SuperNumber::constant(x.signature(), 1);
  ConstMatrix J = orthosymplectic_form(g.shape.m, g.shape.n / 2);
  return supertranspose(x) * J * x == SuperMatrix::from_constant(g.shape, x.signature(), J);
}

namespace detail {

inline SuperMatrix elementary(const Shape& s, const Signature& sig, int i, int j, const SuperNumber& t) {
  SuperMatrix e = SuperMatrix::identity(s, sig);
  e(i, j) = t;
  return e;
}

inline SuperMatrix sample_sl(const GroupKind& g, const Signature& sig, Rng& rng, int factors) {
  const Shape& s = g.shape;
  const int N = s.size();
  SuperMatrix x = SuperMatrix::identity(s, sig);
  if (N < 2) return x;
  for (int f = 0; f < factors; ++f) {
    int i = rng.below(N), j = rng.below(N - 1);
    if (j >= i) ++j;
    if (rng.below(3) == 0) {
      // Torus: a, a^{-1} within one block, or a, a across blocks; sdet stays 1.
      GaussianRational a = rng.unit_scalar();
      SuperMatrix t = SuperMatrix::identity(s, sig);
      t(i, i) = SuperNumber::constant(sig, a);
      t(j, j) = SuperNumber::constant(sig, s.even_row(i) == s.even_row(j) ? a.inverse() : a);
      x = x * t;
    } else {
      bool odd = s.even_row(i) != s.even_row(j);
      x = x * elementary(s, sig, i, j, rng.element(sig, odd ? Parity::Odd : Parity::Even, 2));
    }
  }
  return x;
}

}  // namespace detail

/// Cayley transform (Id - X)(Id + X)^{-1}.
inline SuperMatrix cayley(const SuperMatrix& x) {
  SuperMatrix id = SuperMatrix::identity(x.shape(), x.signature());
  return (id - x) * invert(id + x);
}

/// SL: product of elementary and torus factors. OSp: Cayley transform of a random Lie point.
inline SuperMatrix sample_group_element(const GroupKind& g, const Signature& sig, Rng& rng) {
  g.validate();
  for (int attempt = 0; attempt < 32; ++attempt) {
    SuperMatrix x;
    if (g.type == GroupType::SL) {
      x = detail::sample_sl(g, sig, rng, 4);
    } else {
      try {
        x = cayley(random_point(rng, g.lie_kind(), sig));
      } catch (const NotInvertible&) {
        continue;
      }
    }
    if (membership(g, x)) return x;
    throw InternalInconsistency("sampled element of " + g.str() + " fails membership: " + x.str());
  }
  throw SamplingFailed("no invertible Id + X after 32 draws for " + g.str());
}

// ---------------------------------------------------------------------------
// Lifts.

enum class LiftForm { Direct, InverseNeg };

inline const char* to_string(LiftForm f) { return f == LiftForm::Direct ? "direct" : "inverse-neg"; }

struct GroupRealStructureDescriptor {
  GroupKind group;
  RealStructureDescriptor base;
  LiftForm lift = LiftForm::Direct;
  std::string label_override;

  std::string name() const {
    if (!label_override.empty()) return label_override;
    std::string out = base.name();
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
  }
  std::string full_name() const { return group.str() + ":" + name(); }
  Conjugation conjugation() const { return base.conjugation; }

  /// The lift without the membership postcondition.
  SuperMatrix apply(const SuperMatrix& x) const {
    SuperMatrix y = base.apply(x);
    return lift == LiftForm::InverseNeg ? invert(-y) : y;
  }
};

inline LiftForm default_lift(Family f) {
  return (f == Family::sigma1 || f == Family::sigma4 || f == Family::omega2) ? LiftForm::InverseNeg : LiftForm::Direct;
}

inline GroupRealStructureDescriptor make_group_descriptor(Family f, const GroupKind& g,
                                                          std::optional<int> p = std::nullopt,
                                                          std::optional<int> q = std::nullopt,
                                                          bool strict_printed = false) {
  return {g, make_descriptor(f, g.lie_kind(), p, q, strict_printed), default_lift(f), {}};
}

/// Same descriptor with the other lift form (harness control).
inline GroupRealStructureDescriptor with_lift(GroupRealStructureDescriptor d, LiftForm f) {
  std::string n = d.name();
  d.lift = f;
  d.label_override = n + "-" + to_string(f);
  return d;
}

inline std::vector<GroupRealStructureDescriptor> applicable_group_descriptors(const GroupKind& g) {
  std::vector<GroupRealStructureDescriptor> out;
  for (auto& d : applicable_descriptors(g.lie_kind())) out.push_back({g, d, default_lift(d.family), {}});
  return out;
}

inline GroupRealStructureDescriptor group_descriptor_from_name(std::string_view text, bool strict_printed = false) {
  ParsedName pn = parse_descriptor_name(text);
  GroupType t;
  if (pn.kind == "SL") t = GroupType::SL;
  else if (pn.kind == "OSp") t = GroupType::OSp;
  else throw ParseError("unknown group kind '" + pn.kind + "'");
  std::string fam = pn.family;
  if (!fam.empty()) fam[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(fam[0])));
  auto f = family_from_name(fam);
  if (!f || pn.family[0] == fam[0]) throw ParseError("unknown group descriptor '" + pn.family + "'");
  return make_group_descriptor(*f, {t, pn.shape}, pn.p, pn.q, strict_printed);
}

/// Lift with the membership postcondition.
inline SuperMatrix eval_lift(const GroupRealStructureDescriptor& d, const SuperMatrix& x) {
  SuperMatrix y = d.apply(x);
  if (!membership(d.group, y)) throw MembershipViolation(d.full_name() + " leaves the group at " + x.str());
  return y;
}

// ---------------------------------------------------------------------------
// Dual numbers.

/// Splits x over A(ε) as x0 + ε x1 and returns x1 over A.
inline SuperMatrix eps_coefficient(const SuperMatrix& x, const DualExtension& dual, const Signature& base) {
  const std::uint32_t eps = std::uint32_t{1} << dual.eps_id;
  SuperMatrix out(x.shape(), base);
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < x.size(); ++j)
      for (const auto& t : x(i, j).terms())
        if (t.bits & eps) out(i, j) += SuperNumber::monomial(base, Monomial{t.bits & ~eps}, t.coeff);
  return out;
}

inline SuperMatrix dual_point(const SuperMatrix& m, const DualExtension& dual) {
  SuperNumber eps = SuperNumber::generator(dual.extended, dual.eps_id);
  return SuperMatrix::identity(m.shape(), dual.extended) + eps * m.apply(dual.include);
}

/// Φ_A(M) read off from Σ(Id + εM) = Id + ε Φ_A(M). ExtractionMismatch if the constant term is not Id.
inline SuperMatrix induced_map(const GroupRealStructureDescriptor& d, const SuperMatrix& m, const DualExtension& dual) {
  SuperMatrix img = d.apply(dual_point(m, dual));
  SuperMatrix constant = img.apply(dual.project);
  if (!(constant == SuperMatrix::identity(m.shape(), m.signature())))
    throw ExtractionMismatch(d.full_name() + ": constant term of the lift at Id + eps M is " + constant.str());
  return eps_coefficient(img, dual, m.signature());
}

// ---------------------------------------------------------------------------
// Verification.

inline VerificationReport verify_group_real_structure(const GroupRealStructureDescriptor& d, const Signature& sig,
                                                      int samples, std::uint64_t seed) {
  if (sig.conjugation != d.conjugation())
    throw SignatureMismatch(d.name() + " needs " + to_string(d.conjugation()) + " conjugation on A");
  VerificationReport r;
  r.command = "verify-group";
  for (const auto& note : d.base.notes) r.flag("interpretation", note);
  Rng rng(seed, "verify-group:" + d.full_name() + ":" + sig.str());
  std::optional<DualExtension> dual;
  if (sig.even_nilpotents < Signature::kMaxEven) dual = adjoin_dual(sig);

  detail::CheckCollector cc({"closure", "multiplicativity", "involutivity", "va-equivariance"});
  auto safe = [&](const SuperMatrix& x) -> std::optional<SuperMatrix> {
    try {
      return d.apply(x);
    } catch (const NotInvertible&) {
      return std::nullopt;
    }
  };
  for (int s = 0; s < samples; ++s) {
    SuperMatrix x = sample_group_element(d.group, sig, rng), y = sample_group_element(d.group, sig, rng);
    auto fx = safe(x), fy = safe(y);
    auto fxy = safe(x * y);
    bool closed = fx && membership(d.group, *fx);
    cc.record(0, closed, [&] {
      Json w = detail::point_witness(s, {{"X", &x}});
      w["image"] = fx ? fx->str() : "not invertible";
      return w;
    });
    if (!fx || !fy || !fxy) continue;
    SuperMatrix prod = *fx * *fy;
    cc.record(1, *fxy == prod,
              [&] { return detail::point_witness(s, {{"X", &x}, {"Y", &y}, {"expected", &prod}, {"actual", &*fxy}}); });
    auto ffx = safe(*fx);
    cc.record(2, ffx && *ffx == x, [&] {
      Json w = detail::point_witness(s, {{"X", &x}});
      w["actual"] = ffx ? ffx->str() : "not invertible";
      return w;
    });
    if (dual) {
      const Signature& e = dual->extended;
      SuperMatrix z = dual_point(random_point(rng, d.group.lie_kind(), sig), *dual);
      SuperNumber a = dual->include.apply(rng.element(sig, Parity::Even, 2));
      auto lhs = safe(z.apply(scale_dual(e, dual->eps_id, a)));
      auto fz = safe(z);
      std::optional<SuperMatrix> rhs;
      if (fz) rhs = fz->apply(scale_dual(e, dual->eps_id, a.conjugate()));
      cc.record(3, lhs && rhs && *lhs == *rhs, [&] {
        Json w = detail::point_witness(s, {{"z", &z}});
        w["a"] = a.str();
        return w;
      });
    }
  }
  cc.emit(r, d.base.failures_flagged, "failure expected for the literal form");
  return r;
}

/// Extracted Φ_A: constant term, agreement with the base automorphism, antilinearity,
/// involutivity and the commutator identity over A(ε, η).
inline VerificationReport induced_lie_structure(const GroupRealStructureDescriptor& d, const Signature& sig,
                                                int samples, std::uint64_t seed) {
  if (sig.conjugation != d.conjugation())
    throw SignatureMismatch(d.name() + " needs " + to_string(d.conjugation()) + " conjugation on A");
  if (sig.even_nilpotents + 2 > Signature::kMaxEven)
    throw CapExceeded("the commutator check needs two more even generators");
  VerificationReport r;
  r.command = "induced-lie";
  Rng rng(seed, "induced:" + d.full_name() + ":" + sig.str());
  DualExtension e1 = adjoin_dual(sig);
  DualExtension e2 = adjoin_dual(e1.extended);
  const Signature& big = e2.extended;
  const AlgebraKind k = d.group.lie_kind();

  detail::CheckCollector cc(
      {"constant-term", "lift-consistency", "antilinearity", "involutivity", "bracket-commutator"});
  for (int s = 0; s < samples; ++s) {
    SuperMatrix M = random_point(rng, k, sig), N = random_point(rng, k, sig);
    SuperNumber a = rng.element(sig, Parity::Even, 2), b = rng.element(sig, Parity::Even, 2);
    SuperMatrix phiM, phiN;
    try {
      phiM = induced_map(d, M, e1);
      phiN = induced_map(d, N, e1);
    } catch (const Error& ex) {
      cc.record(0, false, [&] {
        Json w = detail::point_witness(s, {{"M", &M}});
        w["error"] = ex.what();
        return w;
      });
      continue;
    }
    SuperMatrix base = d.base.apply(M);
    cc.record(1, phiM == base,
              [&] { return detail::point_witness(s, {{"M", &M}, {"expected", &base}, {"actual", &phiM}}); });
    SuperMatrix lin = induced_map(d, a * M + b * N, e1);
    SuperMatrix want = a.conjugate() * phiM + b.conjugate() * phiN;
    cc.record(2, lin == want, [&] {
      Json w = detail::point_witness(s, {{"M", &M}, {"N", &N}, {"expected", &want}, {"actual", &lin}});
      w["a"] = a.str();
      w["b"] = b.str();
      return w;
    });
    SuperMatrix twice = induced_map(d, phiM, e1);
    cc.record(3, twice == M, [&] { return detail::point_witness(s, {{"M", &M}, {"actual", &twice}}); });

    // (Id + εM)(Id + ηN)(Id − εM)(Id − ηN) = Id + εη[M, N].
    // Appending η keeps the id of ε.
    SuperNumber eps = SuperNumber::generator(big, e1.eps_id);
    SuperNumber eta = SuperNumber::generator(big, e2.eps_id);
    SuperMatrix Mb = M.apply(e1.include).apply(e2.include), Nb = N.apply(e1.include).apply(e2.include);
    SuperMatrix id = SuperMatrix::identity(M.shape(), big);
    SuperMatrix g = (id + eps * Mb) * (id + eta * Nb) * (id - eps * Mb) * (id - eta * Nb);
    SuperMatrix lhs = d.apply(g);
    SuperMatrix rhs = id + (eps * eta) * commutator(phiM, phiN).apply(e1.include).apply(e2.include);
    cc.record(4, lhs == rhs,
              [&] { return detail::point_witness(s, {{"M", &M}, {"N", &N}, {"expected", &rhs}, {"actual", &lhs}}); });
  }
  cc.emit(r, d.base.failures_flagged, "failure expected for the literal form");
  return r;
}

/// Ker G(p) on A(ε) as {Id + εM : M a Lie point}, checked both ways.
inline VerificationReport lie_points_check(const GroupKind& g, const Signature& sig, int samples, std::uint64_t seed) {
  VerificationReport r;
  r.command = "lie-points";
  DualExtension dual = adjoin_dual(sig);
  PointSpace space(g.lie_kind(), sig);
  std::optional<Json> in_group;
  for (const auto& slot : space.slots()) {
    SuperMatrix M = space.slot_point(slot);
    if (!membership(g, dual_point(M, dual))) {
      in_group = detail::point_witness(0, {{"M", &M}});
      break;
    }
  }
  r.add("basis-in-kernel", !in_group, in_group);

  Rng rng(seed, "lie-points:" + g.str() + ":" + sig.str());
  std::optional<Json> form;
  for (int s = 0; s < samples && !form; ++s) {
    SuperMatrix h = sample_group_element(g, dual.extended, rng);
    SuperMatrix k = h * invert(h.apply(dual.project).apply(dual.include));
    SuperMatrix M = eps_coefficient(k, dual, sig);
    bool ok = membership(g, k) && k.apply(dual.project) == SuperMatrix::identity(g.shape, sig) &&
              k == dual_point(M, dual) && membership(g.lie_kind(), M);
    if (!ok) form = detail::point_witness(s, {{"kernel element", &k}, {"M", &M}});
  }
  r.add("kernel-is-lie-points", !form, form);
  r.details["complex_dim"] = space.complex_dim();
  return r;
}

/// Tangent space of the fixed group equals the fixed Lie points, as exact spans.
inline VerificationReport lie_of_fixed_group_check(const GroupRealStructureDescriptor& d, const Signature& sig) {
  if (sig.conjugation != d.conjugation())
    throw SignatureMismatch(d.name() + " needs " + to_string(d.conjugation()) + " conjugation on A");
  VerificationReport r;
  r.command = "lie-of-fixed-group";
  for (const auto& note : d.base.notes) r.flag("interpretation", note);
  DualExtension dual = adjoin_dual(sig);
  PointSpace space(d.group.lie_kind(), sig);
  RationalMatrix L = space.real_matrix([&](const SuperMatrix& m) { return induced_map(d, m, dual); });
  auto group_side = fixed_vectors(std::move(L));
  auto lie_side = fixed_point_basis(d.base, sig).coords;
  const auto dim = static_cast<std::size_t>(space.real_dim());
  r.add("group-side-dimension", static_cast<int>(group_side.size()) == space.complex_dim(),
        Json{{"fixed", group_side.size()}, {"complex_dim", space.complex_dim()}});
  r.add("span-equality", same_span(group_side, lie_side, dim),
        Json{{"group_side", group_side.size()}, {"lie_side", lie_side.size()}});
  r.details["dimension"] = group_side.size();
  return r;
}

}  // namespace superreal
