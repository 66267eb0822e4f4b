#pragma once

// Composable pipelines of primitive supermatrix maps. Steps are listed in
// written order and applied right to left, so {A, B} means A ∘ B.

#include "superreal/supermatrix.hpp"

#include <string>
#include <variant>
#include <vector>

namespace superreal {

namespace step {
struct Conjugate {};
struct Ad {
  ConstMatrix c;
  ConstMatrix c_inv;
  std::string label;
};
struct DeltaScale {
  GaussianRational lambda;
};
struct Supertranspose {};
struct NegSupertranspose {};
struct PiTranspose {};
struct Negate {};
struct GroupInverse {};
}  // namespace step

using Step = std::variant<step::Conjugate, step::Ad, step::DeltaScale, step::Supertranspose, step::NegSupertranspose,
                          step::PiTranspose, step::Negate, step::GroupInverse>;

inline Step make_ad(const ConstMatrix& c, std::string label) {
  auto inv = try_inverse(c);
  if (!inv) throw NotInvertible("Ad needs an invertible matrix: " + label);
  return step::Ad{c, *inv, std::move(label)};
}

inline std::string to_string(const Step& s) {
  struct V {
    std::string operator()(const step::Conjugate&) const { return "c"; }
    std::string operator()(const step::Ad& a) const { return "Ad(" + a.label + ")"; }
    std::string operator()(const step::DeltaScale& d) const { return "delta" + d.lambda.str(); }
    std::string operator()(const step::Supertranspose&) const { return "st"; }
    std::string operator()(const step::NegSupertranspose&) const { return "-st"; }
    std::string operator()(const step::PiTranspose&) const { return "Pi"; }
    std::string operator()(const step::Negate&) const { return "neg"; }
    std::string operator()(const step::GroupInverse&) const { return "inv"; }
  };
  return std::visit(V{}, s);
}

struct AutomorphismExpr {
  std::vector<Step> steps;

  SuperMatrix operator()(const SuperMatrix& x) const { return apply(x); }

  SuperMatrix apply(const SuperMatrix& x) const {
    SuperMatrix out = x;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) out = apply_step(*it, out);
    return out;
  }

  /// Same expression followed by extra steps on the left.
  AutomorphismExpr then(std::vector<Step> outer) const {
    AutomorphismExpr e{std::move(outer)};
    e.steps.insert(e.steps.end(), steps.begin(), steps.end());
    return e;
  }

  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < steps.size(); ++k) out += (k ? " o " : "") + to_string(steps[k]);
    return out.empty() ? "id" : out;
  }

  static SuperMatrix apply_step(const Step& s, const SuperMatrix& x) {
    struct V {
      const SuperMatrix& x;
      SuperMatrix operator()(const step::Conjugate&) const { return x.conjugate(); }
      SuperMatrix operator()(const step::Ad& a) const { return a.c * x * a.c_inv; }
      SuperMatrix operator()(const step::DeltaScale& d) const { return delta_scale(d.lambda, x); }
      SuperMatrix operator()(const step::Supertranspose&) const { return supertranspose(x); }
      SuperMatrix operator()(const step::NegSupertranspose&) const { return -supertranspose(x); }
      SuperMatrix operator()(const step::PiTranspose&) const { return pi_transpose(x); }
      SuperMatrix operator()(const step::Negate&) const { return -x; }
      SuperMatrix operator()(const step::GroupInverse&) const { return invert(x); }
    };
    return std::visit(V{x}, s);
  }
};

}  // namespace superreal
