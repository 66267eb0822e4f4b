// superreal: verify real structures, list fixed points, scan for compact
// forms and print non-representability witnesses.

#include "superreal/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using superreal::RunConfig;

void add_common(CLI::App* sub, RunConfig& c, std::string& format, bool descriptor) {
  sub->add_option("kind", c.kind, "sl, osp (Lie) or SL, OSp (group)")->required();
  sub->add_option("m", c.m, "even block size")->required()->check(CLI::NonNegativeNumber);
  sub->add_option("n", c.n, "odd block size (2n0 for osp)")->required()->check(CLI::NonNegativeNumber);
  if (descriptor) sub->add_option("descriptor", c.descriptor, "sigma1..4, omega1..3, xi1, xi2, psi1, psi2")->required();
  sub->add_option("--p", c.p, "first parameter");
  sub->add_option("--q", c.q, "second parameter");
  sub->add_option("--odd-pairs", c.odd_pairs, "conjugate pairs of odd generators in A")->capture_default_str();
  sub->add_option("--odd-selfreal", c.odd_selfreal, "self-conjugate odd generators in A")->capture_default_str();
  sub->add_option("--even-nil", c.even_nil, "square-zero even generators in A")->capture_default_str();
  sub->add_option("--samples", c.samples, "random samples per check")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
  sub->add_option("--format", format, "text or json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
  sub->add_flag("--strict-printed", c.strict_printed, "check the literal xi2 formula");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real structures on matrix Lie superalgebras and supergroups"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text";
  add_common(app.add_subcommand("verify", "check the defining identities of a descriptor"), cfg, format, true);
  add_common(app.add_subcommand("fixed-basis", "exact basis of the fixed points over A"), cfg, format, true);
  add_common(app.add_subcommand("compact-scan", "compactness of the even fixed algebra for every descriptor"), cfg,
             format, false);
  add_common(app.add_subcommand("witness", "fixed point outside the real tensors (graded descriptors)"), cfg, format,
             true);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    superreal::VerificationReport r = superreal::run_command(cfg);
    if (format == "json") std::cout << r.to_json().dump(2) << "\n";
    else std::cout << r.to_text();
    return r.any_failed() ? 1 : 0;
  } catch (const superreal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return superreal::is_usage_error(e) ? 2 : 1;
  }
}
