#pragma once

// Report-producing commands shared by the command-line driver and the
// acceptance harness.

#include "superreal/supergroup.hpp"

#include <cctype>
#include <optional>
#include <string>

namespace superreal {

struct RunConfig {
  std::string command;
  std::string kind;  // sl, osp, SL, OSp
  int m = 0, n = 0;
  std::string descriptor;
  std::optional<int> p, q;
  int odd_pairs = 1;
  int odd_selfreal = 0;
  int even_nil = 0;
  int samples = 20;
  std::uint64_t seed = 1;
  bool strict_printed = false;
};

namespace detail {

inline bool is_group_kind(const std::string& k) { return k == "SL" || k == "OSp"; }

inline AlgebraKind lie_kind_of(const RunConfig& c) {
  AlgebraKind k;
  if (c.kind == "sl") k.kind = LieKind::sl;
  else if (c.kind == "osp") k.kind = LieKind::osp;
  else if (c.kind == "SL") k.kind = LieKind::sl;
  else if (c.kind == "OSp") k.kind = LieKind::osp;
  else throw UsageError("unknown kind '" + c.kind + "' (expected sl, osp, SL or OSp)");
  k.shape = {c.m, c.n};
  k.validate();
  return k;
}

inline Family family_of(const RunConfig& c) {
  std::string name = c.descriptor;
  for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  auto f = family_from_name(name);
  if (!f) throw UsageError("unknown descriptor '" + c.descriptor + "'");
  return *f;
}

inline Signature signature_of(const RunConfig& c, Conjugation conj) {
  Signature s{c.odd_pairs, c.odd_selfreal, c.even_nil, conj};
  s.validate();
  return s;
}

inline Json config_json(const RunConfig& c, const std::string& descriptor, const Signature* sig) {
  Json j;
  j["kind"] = c.kind;
  j["shape"] = std::to_string(c.m) + "|" + std::to_string(c.n);
  if (!descriptor.empty()) j["descriptor"] = descriptor;
  if (sig) j["algebra"] = sig->str();
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["strict_printed"] = c.strict_printed;
  return j;
}

inline void flag_odd_absence(VerificationReport& r, const Signature& sig, Conjugation conj) {
  if (conj == Conjugation::Graded && sig.odd_pairs == 0)
    r.flag("odd-witness", "A has no odd conjugate pair, so no odd fixed points beyond A_0 (x) V_0 exist at this A");
}

}  // namespace detail

/// Omitted parameters of a parametrized family default to 0; the resolved name is echoed.
inline std::pair<std::optional<int>, std::optional<int>> resolved_params(const RunConfig& c, Family f) {
  const int n = info(f).params;
  return {n >= 1 && !c.p ? std::optional<int>(0) : c.p, n >= 2 && !c.q ? std::optional<int>(0) : c.q};
}

inline RealStructureDescriptor lie_descriptor_of(const RunConfig& c) {
  Family f = detail::family_of(c);
  auto [p, q] = resolved_params(c, f);
  return make_descriptor(f, detail::lie_kind_of(c), p, q, c.strict_printed);
}

inline VerificationReport cmd_verify(const RunConfig& c) {
  if (detail::is_group_kind(c.kind)) {
    AlgebraKind lk = detail::lie_kind_of(c);
    GroupKind g{c.kind == "SL" ? GroupType::SL : GroupType::OSp, lk.shape};
    Family f = detail::family_of(c);
    auto [p, q] = resolved_params(c, f);
    auto d = make_group_descriptor(f, g, p, q, c.strict_printed);
    Signature sig = detail::signature_of(c, d.conjugation());
    VerificationReport r = verify_group_real_structure(d, sig, c.samples, c.seed);
    r.config = detail::config_json(c, d.full_name(), &sig);
    r.config["lift"] = to_string(d.lift);
    if (sig.even_nilpotents + 2 <= Signature::kMaxEven)
      r.merge(induced_lie_structure(d, sig, c.samples, c.seed), "induced/");
    else
      r.flag("induced/skipped", "the commutator identity needs two spare even generators");
    VerificationReport t = lie_of_fixed_group_check(d, sig);
    for (auto& ch : t.checks)
      if (ch.name != "interpretation") r.checks.push_back({"lie-of-fixed/" + ch.name, ch.status, ch.witness, ch.note});
    r.details["lie_of_fixed_dimension"] = t.details["dimension"];
    return r;
  }
  auto d = lie_descriptor_of(c);
  Signature sig = detail::signature_of(c, d.conjugation);
  VerificationReport r = verify_real_structure(d, sig, c.samples, c.seed);
  r.config = detail::config_json(c, d.full_name(), &sig);
  r.config["expression"] = d.expr.str();
  try {
    r.merge(verify_phi(extract_phi(d), sig, c.samples, c.seed), "phi/");
  } catch (const ExtractionMismatch& e) {
    if (d.failures_flagged) r.flag("phi/extraction", e.what());
    else r.add(Check{"phi/extraction", Status::fail, Json{{"error", e.what()}}, {}});
  }
  return r;
}

inline VerificationReport cmd_fixed_basis(const RunConfig& c) {
  if (detail::is_group_kind(c.kind)) throw UsageError("fixed-basis works on Lie kinds (sl, osp)");
  auto d = lie_descriptor_of(c);
  Signature sig = detail::signature_of(c, d.conjugation);
  VerificationReport r;
  r.command = "fixed-basis";
  r.config = detail::config_json(c, d.full_name(), &sig);
  for (const auto& note : d.notes) r.flag("interpretation", note);
  FixedPointBasis f = fixed_point_basis(d, sig);
  r.add("fixed-dimension", static_cast<int>(f.vectors.size()) == f.space.complex_dim(),
        Json{{"fixed", f.vectors.size()}, {"complex_dim", f.space.complex_dim()}});
  std::optional<Json> unfixed;
  Json listing = Json::array();
  for (std::size_t k = 0; k < f.vectors.size(); ++k) {
    listing.push_back(f.vectors[k].str());
    if (!unfixed && !(d.apply(f.vectors[k]) == f.vectors[k])) unfixed = Json{{"index", k}};
  }
  r.add("basis-fixed", !unfixed, unfixed);
  r.details["dimension"] = f.vectors.size();
  r.details["basis"] = std::move(listing);
  detail::flag_odd_absence(r, sig, d.conjugation);
  try {
    auto rep = representability_check(extract_phi(d), sig, c.samples, c.seed);
    for (auto& ch : rep.report.checks)
      if (ch.name != "witness" || ch.status != Status::flagged)
        r.checks.push_back({"representability/" + ch.name, ch.status, ch.witness, ch.note});
    r.details["representability"] = to_string(rep.outcome);
  } catch (const Error& e) {
    if (d.failures_flagged) r.flag("representability", e.what());
    else r.add(Check{"representability", Status::fail, Json{{"error", e.what()}}, {}});
  }
  return r;
}

inline VerificationReport cmd_compact_scan(const RunConfig& c) {
  if (detail::is_group_kind(c.kind)) throw UsageError("compact-scan works on Lie kinds (sl, osp)");
  AlgebraKind k = detail::lie_kind_of(c);
  VerificationReport r;
  r.command = "compact-scan";
  r.config = detail::config_json(c, "", nullptr);
  r.config.erase("samples");
  r.config.erase("seed");
  CompactScan scan = compact_scan(k);
  Json entries = Json::array();
  bool psi_noted = false;
  for (const auto& e : scan.entries) {
    Json j;
    j["descriptor"] = e.descriptor.name();
    j["conjugation"] = to_string(e.descriptor.conjugation);
    if (!e.result) {
      j["error"] = e.error;
      r.add(Check{"entry/" + e.descriptor.name(), Status::fail, Json{{"error", e.error}}, {}});
    } else {
      const auto& res = *e.result;
      j["compact"] = res.compact;
      j["dimension"] = res.basis.size();
      Json minors = Json::array();
      for (const auto& m : res.minors) minors.push_back(m.get_str());
      j["minors"] = std::move(minors);
      if (res.indefinite_direction) {
        j["indefinite_direction"] = matrix_literal(*res.indefinite_direction);
        j["indefinite_value"] = res.indefinite_value.get_str();
      }
    }
    if (e.descriptor.family == Family::psi1 && !psi_noted) {
      r.flag("interpretation", e.descriptor.notes.front());
      psi_noted = true;
    }
    entries.push_back(std::move(j));
  }
  r.details["entries"] = std::move(entries);
  Json compact_graded = Json::array(), classes = Json::array();
  for (const auto& e : scan.entries)
    if (e.result && e.result->compact && e.descriptor.conjugation == Conjugation::Graded)
      compact_graded.push_back(e.descriptor.name());
  for (const auto& cls : scan.graded_compact_classes) {
    Json names = Json::array();
    for (auto i : cls) names.push_back(scan.entries[i].descriptor.name());
    classes.push_back(std::move(names));
  }
  r.details["graded_compact"] = compact_graded;
  r.details["graded_compact_classes"] = classes;
  r.add("graded-compact-exists", !compact_graded.empty());
  if (scan.graded_compact_classes.size() <= 1)
    r.add("graded-compact-unique", true);
  else
    r.flag("graded-compact-unique", "compact graded entries give " + std::to_string(scan.graded_compact_classes.size()) +
                                        " distinct even fixed algebras");
  if (k.kind == LieKind::sl && k.shape.m == k.shape.n)
    r.flag("centre", "sl(n|n) retains the identity; i*Id lies in every compact even fixed algebra");
  return r;
}

inline VerificationReport cmd_witness(const RunConfig& c) {
  if (detail::is_group_kind(c.kind)) throw UsageError("witness works on Lie kinds (sl, osp)");
  auto d = lie_descriptor_of(c);
  if (d.conjugation == Conjugation::Standard) throw UsageError("standard forms are representable");
  Signature sig = detail::signature_of(c, d.conjugation);
  VerificationReport r;
  r.command = "witness";
  r.config = detail::config_json(c, d.full_name(), &sig);
  for (const auto& note : d.notes) r.flag("interpretation", note);
  auto rep = representability_check(extract_phi(d), sig, c.samples, c.seed);
  r.merge(rep.report, "");
  r.details = rep.report.details;
  r.details["outcome"] = to_string(rep.outcome);
  r.details["fixed_dimension"] = rep.fixed_dim;
  r.details["real_tensor_dimension"] = rep.real_tensor_dim;
  return r;
}

inline VerificationReport run_command(const RunConfig& c) {
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "fixed-basis") return cmd_fixed_basis(c);
  if (c.command == "compact-scan") return cmd_compact_scan(c);
  if (c.command == "witness") return cmd_witness(c);
  throw UsageError("unknown command '" + c.command + "'");
}

/// Exit status: 2 for requests that cannot be served, 1 if any check failed, 0 otherwise.
inline bool is_usage_error(const Error& e) {
  return dynamic_cast<const UsageError*>(&e) || dynamic_cast<const InapplicableDescriptor*>(&e) ||
         dynamic_cast<const ParseError*>(&e) || dynamic_cast<const SignatureMismatch*>(&e) ||
         dynamic_cast<const CapExceeded*>(&e) || dynamic_cast<const ShapeMismatch*>(&e);
}

}  // namespace superreal
