#pragma once

// Real structures on functor-of-points Lie superalgebras: verification of the
// defining identities, the induced map φ on V, fixed points, the
// representability dichotomy and the compactness test of (V^φ)_0.

#include "superreal/descriptors.hpp"
#include "superreal/lie.hpp"
#include "superreal/report.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superreal {

namespace detail {

inline Json point_witness(int sample, std::initializer_list<std::pair<const char*, const SuperMatrix*>> items) {
  Json j;
  j["sample"] = sample;
  for (const auto& [k, v] : items) j[k] = v->str();
  return j;
}

/// First failure per check, in check order.
class CheckCollector {
 public:
  explicit CheckCollector(std::vector<std::string> names) : names_(std::move(names)), witness_(names_.size()) {}

  void record(std::size_t idx, bool ok, const std::function<Json()>& witness) {
    if (!ok && !witness_[idx]) witness_[idx] = witness();
  }

  void emit(VerificationReport& r, bool failures_flagged, const std::string& flag_note) const {
    for (std::size_t k = 0; k < names_.size(); ++k) {
      if (!witness_[k]) {
        r.add(names_[k], true);
      } else if (failures_flagged) {
        r.flag(names_[k], flag_note, witness_[k]);
      } else {
        r.add(names_[k], false, witness_[k]);
      }
    }
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::optional<Json>> witness_;
};

}  // namespace detail

/// Morphisms against which naturality is checked: pair projections, even
/// projections, inclusion into one more pair, and a random substitution.
inline std::vector<std::pair<std::string, AlgebraMorphism>> naturality_battery(const Signature& sig, Rng& rng) {
  std::vector<std::pair<std::string, AlgebraMorphism>> out;
  for (int k = 0; k < sig.odd_pairs; ++k) out.emplace_back("kill-pair-" + std::to_string(k + 1), kill_odd_pair(sig, k));
  for (int j = 0; j < sig.even_nilpotents; ++j) out.emplace_back("kill-even-" + std::to_string(j + 1), kill_even(sig, j));
  if (sig.odd_count() + 2 <= Signature::kMaxOdd) out.emplace_back("include-pair", include_extra_pair(sig));
  if (sig.odd_pairs > 0) {
    std::vector<SuperNumber> thetas;
    for (int k = 0; k < sig.odd_pairs; ++k) thetas.push_back(rng.element(sig, Parity::Odd, 2));
    out.emplace_back("substitute", substitute_pairs(sig, thetas));
  }
  return out;
}

/// Checks the defining identities of a real structure on random A-points.
inline VerificationReport verify_real_structure(const RealStructureDescriptor& d, const Signature& sig, int samples,
                                                std::uint64_t seed) {
  if (sig.conjugation != d.conjugation)
    throw SignatureMismatch(d.name() + " needs " + to_string(d.conjugation) + " conjugation on A");
  VerificationReport r;
  r.command = "verify";
  for (const auto& note : d.notes) r.flag("interpretation", note);
  const AlgebraKind& k = d.kind;
  Rng rng(seed, "verify:" + d.full_name() + ":" + sig.str());
  auto battery = naturality_battery(sig, rng);
  std::optional<DualExtension> dual;
  if (sig.even_nilpotents < Signature::kMaxEven) dual = adjoin_dual(sig);

  detail::CheckCollector cc({"antilinearity", "involutivity", "bracket", "evenness", "closure", "naturality",
                             "naturality-dual-scaling"});
  for (int s = 0; s < samples; ++s) {
    SuperMatrix X = random_point(rng, k, sig), Y = random_point(rng, k, sig);
    SuperNumber a = rng.element(sig, Parity::Even, 2), b = rng.element(sig, Parity::Even, 2);
    SuperMatrix fX = d.apply(X), fY = d.apply(Y);

    SuperMatrix lhs = d.apply(a * X + b * Y);
    SuperMatrix rhs = a.conjugate() * fX + b.conjugate() * fY;
    cc.record(0, lhs == rhs, [&] {
      Json w = detail::point_witness(s, {{"X", &X}, {"Y", &Y}, {"expected", &rhs}, {"actual", &lhs}});
      w["a"] = a.str();
      w["b"] = b.str();
      return w;
    });

    SuperMatrix ffX = d.apply(fX);
    cc.record(1, ffX == X, [&] { return detail::point_witness(s, {{"X", &X}, {"actual", &ffX}}); });

    SuperMatrix fbr = d.apply(commutator(X, Y));
    SuperMatrix brf = commutator(fX, fY);
    cc.record(2, fbr == brf,
              [&] { return detail::point_witness(s, {{"X", &X}, {"Y", &Y}, {"expected", &brf}, {"actual", &fbr}}); });

    cc.record(3, fX.is_even(), [&] { return detail::point_witness(s, {{"X", &X}, {"image", &fX}}); });
    cc.record(4, fX.is_even() && membership(k, fX), [&] { return detail::point_witness(s, {{"X", &X}, {"image", &fX}}); });

    for (const auto& [name, f] : battery) {
      SuperMatrix fx = X.apply(f);
      SuperMatrix lhs2 = d.apply(fx);
      SuperMatrix rhs2 = fX.apply(f);
      cc.record(5, lhs2 == rhs2, [&, n = name] {
        Json w = detail::point_witness(s, {{"X", &X}, {"expected", &rhs2}, {"actual", &lhs2}});
        w["morphism"] = n;
        return w;
      });
    }

    if (dual) {
      const Signature& e = dual->extended;
      SuperNumber eps = SuperNumber::generator(e, dual->eps_id);
      SuperMatrix z = X.apply(dual->include) + eps * Y.apply(dual->include);
      SuperNumber av = dual->include.apply(rng.element(sig, Parity::Even, 2));
      auto va = scale_dual(e, dual->eps_id, av);
      auto vahat = scale_dual(e, dual->eps_id, av.conjugate());
      SuperMatrix lhs3 = d.apply(z.apply(va));
      SuperMatrix rhs3 = d.apply(z).apply(vahat);
      cc.record(6, lhs3 == rhs3, [&] {
        Json w = detail::point_witness(s, {{"z", &z}, {"expected", &rhs3}, {"actual", &lhs3}});
        w["a"] = av.str();
        return w;
      });
    }
  }
  cc.emit(r, d.failures_flagged, "failure expected for the literal form");
  return r;
}

// ---------------------------------------------------------------------------
// The map φ on V.

struct PhiOnV {
  RealStructureDescriptor descriptor;
  std::shared_ptr<const BasisOfV> basis;
  /// Column k holds the coordinates of φ(v_k); φ(x) = images · conj(x).
  ConstMatrix images;

  std::vector<GaussianRational> apply(const std::vector<GaussianRational>& x) const {
    std::vector<GaussianRational> out(x.size(), GaussianRational(0));
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t k = 0; k < x.size(); ++k)
        if (!images(j, k).is_zero() && !x[k].is_zero()) out[j] += images(j, k) * x[k].conj();
    return out;
  }

  ConstMatrix image_matrix(int k) const {
    const auto N = static_cast<std::size_t>(basis->kind.shape.size());
    ConstMatrix out(N, N);
    for (int j = 0; j < basis->dim(); ++j)
      if (!images(j, k).is_zero()) out = out + images(j, k) * basis->vectors[j];
    return out;
  }

  /// Φ_A rebuilt from φ: Σ a_k ⊗ v_k ↦ Σ_k conj(a_k) ⊗ φ(v_k).
  TensorElement rebuild(const TensorElement& x) const {
    TensorElement out(basis, x.signature());
    for (int k = 0; k < basis->dim(); ++k) {
      if (x.coeffs[k].is_zero()) continue;
      SuperNumber ak = x.coeffs[k].conjugate();
      for (int j = 0; j < basis->dim(); ++j)
        if (!images(j, k).is_zero()) out.coeffs[j] += images(j, k) * ak;
    }
    return out;
  }
};

/// Reads φ off Φ: even images over C, odd images from the θ-coefficient over C[θ, θ̃].
inline PhiOnV extract_phi(const RealStructureDescriptor& d) {
  PhiOnV phi{d, basis_of_V(d.kind), {}};
  const auto& b = *phi.basis;
  const auto dim = static_cast<std::size_t>(b.dim());
  phi.images = ConstMatrix(dim, dim);
  Signature c0 = Signature::grassmann(0, d.conjugation);
  Signature c1 = Signature::grassmann(1, d.conjugation);
  const std::uint32_t tilde_bits = std::uint32_t{1} << c1.partner(0);
  for (int k = 0; k < b.dim(); ++k) {
    if (b.parity[k] == 0) {
      SuperMatrix img = d.apply(SuperMatrix::from_constant(d.kind.shape, c0, b.vectors[k]));
      auto coords = b.coordinates(img.body(), 0);
      if (!coords) throw ExtractionMismatch(d.name() + ": image of an even basis vector leaves V_0");
      for (std::size_t j = 0; j < dim; ++j) phi.images(j, k) = (*coords)[j];
    } else {
      TensorElement x(phi.basis, c1);
      x.coeffs[k] = SuperNumber::generator(c1, c1.theta(0));
      SuperMatrix img = d.apply(matrix_of(x));
      TensorElement t = tensor_of(img, phi.basis);
      for (std::size_t j = 0; j < dim; ++j) {
        for (const auto& term : t.coeffs[j].terms())
          if (term.bits != tilde_bits)
            throw ExtractionMismatch(d.name() + ": image of θ ⊗ v is not of the form θ̃ ⊗ y");
        phi.images(j, k) = t.coeffs[j].coefficient(Monomial{tilde_bits});
      }
    }
  }
  return phi;
}

/// φ² sign, φ as a bracket morphism of V, and the rebuild of Φ from φ.
inline VerificationReport verify_phi(const PhiOnV& phi, const Signature& sig, int samples, std::uint64_t seed) {
  VerificationReport r;
  r.command = "extract-phi";
  const auto& b = *phi.basis;
  const int dim = b.dim();
  const bool graded = phi.descriptor.conjugation == Conjugation::Graded;
  // φ² = (±1)^{|v|}: images · conj(images).
  ConstMatrix sq = phi.images * conj(phi.images);
  std::optional<Json> sq_witness;
  for (int k = 0; k < dim && !sq_witness; ++k)
    for (int j = 0; j < dim; ++j) {
      GaussianRational want = j == k ? GaussianRational((graded && b.parity[k]) ? -1 : 1) : GaussianRational(0);
      if (!(sq(j, k) == want)) {
        sq_witness = Json{{"basis_index", k}, {"parity", b.parity[k]}};
        break;
      }
    }
  r.add(graded ? "phi-squared-graded" : "phi-squared", !sq_witness, sq_witness);

  std::optional<Json> br_witness;
  for (int i = 0; i < dim && !br_witness; ++i)
    for (int j = 0; j < dim && !br_witness; ++j) {
      // φ[v_i, v_j] vs [φ v_i, φ v_j], both expanded with structure constants.
      std::vector<GaussianRational> lhs = phi.apply(b.structure(i, j));
      std::vector<GaussianRational> rhs(static_cast<std::size_t>(dim), GaussianRational(0));
      for (int a = 0; a < dim; ++a)
        for (int c = 0; c < dim; ++c) {
          GaussianRational coef = phi.images(a, i) * phi.images(c, j);
          if (coef.is_zero()) continue;
          const auto& sc = b.structure(a, c);
          for (int t = 0; t < dim; ++t)
            if (!sc[t].is_zero()) rhs[t] += coef * sc[t];
        }
      if (lhs != rhs) br_witness = Json{{"i", i}, {"j", j}};
    }
  r.add("phi-bracket", !br_witness, br_witness);

  Rng rng(seed, "rebuild:" + phi.descriptor.full_name() + ":" + sig.str());
  std::optional<Json> rb_witness;
  for (int s = 0; s < samples && !rb_witness; ++s) {
    TensorElement x = random_tensor(rng, phi.descriptor.kind, sig);
    SuperMatrix X = matrix_of(x);
    SuperMatrix expected = phi.descriptor.apply(X);
    SuperMatrix rebuilt = matrix_of(phi.rebuild(x));
    if (!(expected == rebuilt)) rb_witness = detail::point_witness(s, {{"X", &X}, {"expected", &expected}, {"actual", &rebuilt}});
  }
  r.add("phi-rebuild", !rb_witness, rb_witness);
  return r;
}

// ---------------------------------------------------------------------------
// Fixed points.

/// Q-basis of the solutions of (L - I)x = 0.
inline std::vector<std::vector<Rational>> fixed_vectors(RationalMatrix L) {
  for (std::size_t i = 0; i < L.rows(); ++i) L(i, i) -= 1;
  return nullspace(std::move(L));
}

struct FixedPointBasis {
  RealStructureDescriptor descriptor;
  PointSpace space;
  std::vector<std::vector<Rational>> coords;
  std::vector<SuperMatrix> vectors;
};

inline FixedPointBasis fixed_point_basis(const RealStructureDescriptor& d, const Signature& sig) {
  if (sig.conjugation != d.conjugation)
    throw SignatureMismatch(d.name() + " needs " + to_string(d.conjugation) + " conjugation on A");
  PointSpace space(d.kind, sig);
  RationalMatrix L = space.real_matrix([&](const SuperMatrix& x) { return d.apply(x); });
  FixedPointBasis out{d, space, fixed_vectors(std::move(L)), {}};
  for (const auto& c : out.coords) out.vectors.push_back(space.point(c));
  return out;
}

/// Q-basis of the real elements of A of parity p.
inline std::vector<SuperNumber> real_elements(const Signature& sig, Parity p) {
  auto monos = monomials_of_parity(sig, p);
  const std::size_t d = 2 * monos.size();
  std::map<std::uint32_t, std::size_t> index;
  for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k].bits] = k;
  RationalMatrix L(d, d);
  for (std::size_t k = 0; k < monos.size(); ++k)
    for (int part = 0; part < 2; ++part) {
      const SuperNumber xc =
          SuperNumber::monomial(sig, monos[k], part ? GaussianRational::i() : GaussianRational(1)).conjugate();
      for (const auto& t : xc.terms()) {
        std::size_t row = index.at(t.bits);
        L(2 * row, 2 * k + part) = t.coeff.re();
        L(2 * row + 1, 2 * k + part) = t.coeff.im();
      }
    }
  std::vector<SuperNumber> out;
  for (const auto& v : fixed_vectors(std::move(L))) {
    SuperNumber a(sig);
    for (std::size_t k = 0; k < monos.size(); ++k) {
      GaussianRational c(v[2 * k], v[2 * k + 1]);
      if (!c.is_zero()) a += SuperNumber::monomial(sig, monos[k], c);
    }
    out.push_back(std::move(a));
  }
  return out;
}

/// Q-basis of V^φ restricted to parity p, as coordinate vectors in the basis of V.
inline std::vector<std::vector<GaussianRational>> phi_fixed_vectors(const PhiOnV& phi, int p) {
  const auto& b = *phi.basis;
  std::vector<int> idx;
  for (int k = 0; k < b.dim(); ++k)
    if (b.parity[k] == p) idx.push_back(k);
  const std::size_t d = 2 * idx.size();
  RationalMatrix L(d, d);
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (int part = 0; part < 2; ++part) {
      // φ(u v_c) = conj(u) φ(v_c)
      GaussianRational u = part ? -GaussianRational::i() : GaussianRational(1);
      for (std::size_t r = 0; r < idx.size(); ++r) {
        GaussianRational val = u * phi.images(idx[r], idx[c]);
        L(2 * r, 2 * c + part) = val.re();
        L(2 * r + 1, 2 * c + part) = val.im();
      }
    }
  std::vector<std::vector<GaussianRational>> out;
  for (const auto& v : fixed_vectors(std::move(L))) {
    std::vector<GaussianRational> x(static_cast<std::size_t>(b.dim()), GaussianRational(0));
    for (std::size_t r = 0; r < idx.size(); ++r) x[idx[r]] = GaussianRational(v[2 * r], v[2 * r + 1]);
    out.push_back(std::move(x));
  }
  return out;
}

inline SuperMatrix tensor_point(const std::shared_ptr<const BasisOfV>& basis, const SuperNumber& a,
                                const std::vector<GaussianRational>& v) {
  TensorElement t(basis, a.signature());
  for (int j = 0; j < basis->dim(); ++j)
    if (!v[j].is_zero()) t.coeffs[j] = v[j] * a;
  return matrix_of(t);
}

/// Q-coordinates spanning (A^real ⊗ V^φ)_0.
inline std::vector<std::vector<Rational>> real_tensor_span(const PhiOnV& phi, const PointSpace& space) {
  std::vector<std::vector<Rational>> out;
  for (int p = 0; p < 2; ++p) {
    auto reals = real_elements(space.signature(), p ? Parity::Odd : Parity::Even);
    auto vs = phi_fixed_vectors(phi, p);
    for (const auto& a : reals)
      for (const auto& v : vs) out.push_back(space.coordinates(tensor_point(phi.basis, a, v)));
  }
  return out;
}

enum class Representability { Representable, NotRepresentable, NoWitness };

inline const char* to_string(Representability r) {
  switch (r) {
    case Representability::Representable: return "representable";
    case Representability::NotRepresentable: return "not-representable";
    default: return "no-witness";
  }
}

struct RepresentabilityResult {
  Representability outcome = Representability::NoWitness;
  VerificationReport report;
  std::optional<SuperMatrix> witness;
  int fixed_dim = 0;
  int real_tensor_dim = 0;
};

/// Standard: fixed points = (A^real ⊗ V^φ)_0. Graded: a fixed point outside it.
inline RepresentabilityResult representability_check(const PhiOnV& phi, const Signature& sig, int samples = 20,
                                                     std::uint64_t seed = 1) {
  const auto& d = phi.descriptor;
  RepresentabilityResult res;
  res.report.command = "representability";
  FixedPointBasis fixed = fixed_point_basis(d, sig);
  const auto& space = fixed.space;
  const auto dim = static_cast<std::size_t>(space.real_dim());
  auto prod = real_tensor_span(phi, space);
  res.fixed_dim = static_cast<int>(fixed.coords.size());
  res.real_tensor_dim = static_cast<int>(span_rank(prod, dim));
  res.report.add("fixed-dimension", res.fixed_dim == space.complex_dim(),
                 Json{{"fixed", res.fixed_dim}, {"complex_dim", space.complex_dim()}});

  if (d.conjugation == Conjugation::Standard) {
    bool equal = same_span(fixed.coords, prod, dim);
    res.report.add("span-equality", equal, Json{{"fixed", res.fixed_dim}, {"real_tensor", res.real_tensor_dim}});
    // Averaging: a⊗v + â⊗φ(v) = ½(a1⊗v1 − a2⊗v2), a1 = a + â, v1 = v + φv, a2 = i(a − â), v2 = i(v − φv).
    Rng rng(seed, "averaging:" + d.full_name() + ":" + sig.str());
    const auto& b = *phi.basis;
    std::optional<Json> avg_witness;
    const GaussianRational i = GaussianRational::i();
    for (int s = 0; s < samples && !avg_witness; ++s) {
      int k = rng.below(b.dim());
      SuperNumber a = rng.element(sig, b.parity[k] ? Parity::Odd : Parity::Even, 2);
      std::vector<GaussianRational> v(static_cast<std::size_t>(b.dim()), GaussianRational(0));
      v[k] = 1;
      auto fv = phi.apply(v);
      SuperMatrix x = tensor_point(phi.basis, a, v);
      SuperMatrix w = x + d.apply(x);
      std::vector<GaussianRational> v1(v.size()), v2(v.size());
      for (std::size_t j = 0; j < v.size(); ++j) {
        v1[j] = v[j] + fv[j];
        v2[j] = i * (v[j] - fv[j]);
      }
      SuperNumber a1 = a + a.conjugate(), a2 = i * (a - a.conjugate());
      SuperMatrix rebuilt = GaussianRational(Rational(1, 2)) *
                            (tensor_point(phi.basis, a1, v1) - tensor_point(phi.basis, a2, v2));
      bool ok = rebuilt == w && a1.conjugate() == a1 && a2.conjugate() == a2 && phi.apply(v1) == v1 &&
                phi.apply(v2) == v2;
      if (!ok) avg_witness = detail::point_witness(s, {{"point", &x}, {"expected", &w}, {"actual", &rebuilt}});
    }
    res.report.add("averaging-decomposition", !avg_witness, avg_witness);
    if (!equal) throw InternalInconsistency(d.full_name() + ": standard fixed points differ from (A^real ⊗ V^phi)_0");
    res.outcome = Representability::Representable;
    return res;
  }

  if (sig.odd_pairs == 0) {
    res.report.flag("witness", "A has no odd conjugate pair; no non-representability witness exists at this A");
    res.outcome = Representability::NoWitness;
    return res;
  }
  const auto& b = *phi.basis;
  if (b.odd_count() == 0) throw InternalInconsistency(d.full_name() + ": V has no odd part");
  int k = b.even_count;
  std::vector<GaussianRational> v(static_cast<std::size_t>(b.dim()), GaussianRational(0));
  v[k] = 1;
  SuperNumber th = SuperNumber::generator(sig, sig.theta(0));
  SuperNumber tt = SuperNumber::generator(sig, sig.partner(0));
  SuperMatrix w = tensor_point(phi.basis, th, v) + tensor_point(phi.basis, tt, phi.apply(v));
  bool fixed_ok = d.apply(w) == w;
  auto joined = prod;
  joined.push_back(space.coordinates(w));
  bool outside = span_rank(joined, dim) > static_cast<std::size_t>(res.real_tensor_dim);
  Json wj{{"witness", w.str()}, {"form", "t1 (x) v + t1~ (x) phi(v)"}, {"basis_index", k}};
  res.report.add("witness-fixed", fixed_ok, wj);
  res.report.add("witness-outside-real-tensor-span", outside, wj);
  if (!fixed_ok || !outside) throw InternalInconsistency(d.full_name() + ": graded witness failed to validate");
  res.report.details["witness"] = wj;
  res.witness = w;
  res.outcome = Representability::NotRepresentable;
  return res;
}

// ---------------------------------------------------------------------------
// Compactness of (V^φ)_0 under B(X, Y) = -Re tr(XY).

struct CompactnessResult {
  std::vector<ConstMatrix> basis;  // Q-basis of (V^φ)_0
  std::vector<std::vector<GaussianRational>> coords;
  RationalMatrix gram;
  std::vector<Rational> minors;
  bool compact = false;
  std::optional<ConstMatrix> indefinite_direction;
  Rational indefinite_value;
};

inline CompactnessResult compactness_report(const PhiOnV& phi) {
  CompactnessResult out;
  const auto& b = *phi.basis;
  const auto N = static_cast<std::size_t>(b.kind.shape.size());
  out.coords = phi_fixed_vectors(phi, 0);
  for (const auto& c : out.coords) {
    ConstMatrix x(N, N);
    for (int k = 0; k < b.dim(); ++k)
      if (!c[k].is_zero()) x = x + c[k] * b.vectors[k];
    out.basis.push_back(std::move(x));
  }
  const std::size_t d = out.basis.size();
  out.gram = RationalMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ConstMatrix prod = out.basis[i] * out.basis[j];
      GaussianRational tr = 0;
      for (std::size_t t = 0; t < N; ++t) tr += prod(t, t);
      out.gram(i, j) = -tr.re();
    }
  // LDL^T without pivoting: leading minors are the running products of pivots.
  RationalMatrix Lm = RationalMatrix::identity(d);
  std::vector<Rational> D(d);
  out.compact = true;
  Rational running = 1;
  for (std::size_t k = 0; k < d; ++k) {
    Rational dk = out.gram(k, k);
    for (std::size_t t = 0; t < k; ++t) dk -= Lm(k, t) * Lm(k, t) * D[t];
    D[k] = dk;
    running *= dk;
    out.minors.push_back(running);
    if (sgn(dk) <= 0) {
      out.compact = false;
      // x = L^{-T} e_k has B(x, x) = d_k <= 0.
      std::vector<Rational> x(d, Rational(0));
      x[k] = 1;
      for (std::size_t r = k; r-- > 0;) {
        Rational acc = 0;
        for (std::size_t t = r + 1; t <= k; ++t) acc += Lm(t, r) * x[t];
        x[r] = -acc;
      }
      ConstMatrix dir(N, N);
      for (std::size_t t = 0; t < d; ++t)
        if (!is_zero(x[t])) dir = dir + GaussianRational(x[t]) * out.basis[t];
      out.indefinite_direction = dir;
      out.indefinite_value = dk;
      // Remaining minors: exact determinants of the leading blocks.
      for (std::size_t kk = k + 1; kk < d; ++kk) {
        RationalMatrix sub(kk + 1, kk + 1);
        for (std::size_t i = 0; i <= kk; ++i)
          for (std::size_t j = 0; j <= kk; ++j) sub(i, j) = out.gram(i, j);
        out.minors.push_back(determinant(sub));
      }
      break;
    }
    for (std::size_t r = k + 1; r < d; ++r) {
      Rational acc = out.gram(r, k);
      for (std::size_t t = 0; t < k; ++t) acc -= Lm(r, t) * Lm(k, t) * D[t];
      Lm(r, k) = acc / dk;
    }
  }
  return out;
}

inline std::string matrix_literal(const ConstMatrix& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.rows(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < c.cols(); ++j) out += (j ? ", " : "") + c(i, j).str();
    out += "]";
  }
  return out + "]";
}

struct ScanEntry {
  RealStructureDescriptor descriptor;
  std::optional<CompactnessResult> result;
  std::string error;
};

struct CompactScan {
  AlgebraKind kind;
  std::vector<ScanEntry> entries;
  /// Indices of compact graded entries, grouped by equal (V^φ)_0.
  std::vector<std::vector<std::size_t>> graded_compact_classes;
};

inline CompactScan compact_scan(const AlgebraKind& kind) {
  CompactScan scan{kind, {}, {}};
  for (auto& d : applicable_descriptors(kind)) {
    ScanEntry e{d, std::nullopt, {}};
    try {
      e.result = compactness_report(extract_phi(d));
    } catch (const Error& ex) {
      e.error = ex.what();
    }
    scan.entries.push_back(std::move(e));
  }
  auto to_real = [](const std::vector<std::vector<GaussianRational>>& vs) {
    std::vector<std::vector<Rational>> out;
    for (const auto& v : vs) {
      std::vector<Rational> r;
      for (const auto& c : v) {
        r.push_back(c.re());
        r.push_back(c.im());
      }
      out.push_back(std::move(r));
    }
    return out;
  };
  const auto dim = static_cast<std::size_t>(2 * basis_of_V(kind)->dim());
  for (std::size_t i = 0; i < scan.entries.size(); ++i) {
    const auto& e = scan.entries[i];
    if (!e.result || !e.result->compact || e.descriptor.conjugation != Conjugation::Graded) continue;
    bool placed = false;
    for (auto& cls : scan.graded_compact_classes) {
      if (same_span(to_real(scan.entries[cls.front()].result->coords), to_real(e.result->coords), dim)) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) scan.graded_compact_classes.push_back({i});
  }
  return scan;
}

}  // namespace superreal
