#include "deltafan/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Spec {
  const char* name;
  const char* help;
  bool fan, polytope, into, move, seed, limit;
};

// Flags each subcommand accepts beyond --output and --quiet.
constexpr Spec kSpecs[] = {
    {"check-reflexive", "Reflexivity verdict and facet count of a polytope", false, false, false, false, false, false},
    {"dual", "Dual polytope", false, false, false, false, false, false},
    {"lattice-points", "Lattice points with boundary flags", false, false, false, false, false, false},
    {"face-fan", "Fan over the proper faces", false, false, false, false, false, false},
    {"mpcp", "Projective Delta-maximal refinement of the face fan", false, false, false, false, true, false},
    {"validate-fan", "Check a fan against the Delta-maximal conditions", true, true, false, false, false, false},
    {"enumerate-fans", "Every Delta-maximal fan of a polytope", false, false, false, false, false, true},
    {"maximal-cones", "Empty simplicial cones of lattice points", false, false, false, false, false, false},
    {"goodness", "Goodness of every maximal cone of a 4-polytope", false, false, false, false, false, false},
    {"certificate", "Smoothness certificate of a fan", true, true, false, false, false, false},
    {"find-flips", "Circuit flips available in a fan", true, true, false, false, false, false},
    {"flip", "Apply a flip move to a fan", true, false, false, true, false, false},
    {"refine", "Refine a projective fan into a larger polytope", true, false, true, false, true, false},
    {"remark-witness", "Non-unimodular empty cone off every facet", false, false, false, false, false, false},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delta-maximal fans over reflexive polytopes"};
  app.require_subcommand(1);
  deltafan::cli::RunConfig cfg;

  for (const auto& spec : kSpecs) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("inputs", cfg.inputs, "Input file")->check(CLI::ExistingFile);
    sub->add_option("--output,-o", cfg.output, "Output file (directory for list results)");
    sub->add_flag("--quiet,-q", cfg.quiet, "Suppress standard output");
    if (spec.fan) sub->add_option("--fan", cfg.fan, "Fan file");
    if (spec.polytope) sub->add_option("--polytope", cfg.polytope, "Polytope file");
    if (spec.into) sub->add_option("--into", cfg.into, "Target polytope file");
    if (spec.move) sub->add_option("--move", cfg.move, "Flip move file");
    if (spec.seed) sub->add_option("--seed", cfg.seed, "Height seed")->check(CLI::NonNegativeNumber);
    if (spec.limit) sub->add_option("--limit", cfg.limit, "Maximum number of fans")->check(CLI::PositiveNumber);
    sub->callback([&cfg, name = std::string(spec.name)] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; every other parse failure is a usage error.
    return app.exit(e) == 0 ? 0 : deltafan::cli::usage_error;
  }
  return deltafan::cli::run(cfg, std::cout, std::cerr);
}
