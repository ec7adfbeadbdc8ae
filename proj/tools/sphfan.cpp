// sphfan: validate colored fans, list colored faces, check group invariance
// and fan morphisms.  See README.md for the document formats.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sphfan/commands.hpp"

int main(int argc, char** argv) {
  using namespace sphfan::cli;

  CLI::App app{"Colored cones and colored fans of spherical embeddings"};
  app.require_subcommand(1);
  Options opts;
  app.add_flag("--oracle", opts.oracle, "Cross-check every feasibility decision with Fourier-Motzkin elimination");

  std::string datum, fan, action, morphism, src_datum, tgt_datum, src_fan, tgt_fan;

  auto* validate = app.add_subcommand("validate", "Check CC1/CC2/CF1/CF2 for a fan");
  validate->add_option("datum", datum, "Spherical datum document")->required();
  validate->add_option("fan", fan, "Fan document")->required();
  validate->add_flag("--strict", opts.strict, "Also require strict convexity");
  validate->add_flag("--autocomplete", opts.autocomplete, "Add all missing colored faces before validating");

  auto* faces = app.add_subcommand("faces", "List the colored faces of fan members");
  faces->add_option("datum", datum, "Spherical datum document")->required();
  faces->add_option("fan", fan, "Fan document")->required();
  std::size_t cone_index = 0;
  auto* cone_opt = faces->add_option("--cone", cone_index, "Only this member (0-based)");

  auto* invariant = app.add_subcommand("invariant", "Validate a group action and check fan invariance");
  invariant->add_option("datum", datum, "Spherical datum document")->required();
  invariant->add_option("fan", fan, "Fan document")->required();
  invariant->add_option("action", action, "Action document")->required();
  invariant->add_flag("--closure", opts.closure, "Print the invariant closure of the fan instead of a report");

  auto* morph = app.add_subcommand("morphism", "Check a morphism of colored fans");
  morph->add_option("source_datum", src_datum, "Source datum document")->required();
  morph->add_option("target_datum", tgt_datum, "Target datum document")->required();
  morph->add_option("morphism", morphism, "Morphism document")->required();
  morph->add_option("source_fan", src_fan, "Source fan document")->required();
  morph->add_option("target_fan", tgt_fan, "Target fan document")->required();
  morph->add_flag("--warn-rho", opts.warn_rho, "Warn where rho is not compatible with the color map");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    opts.max_rank = max_rank_from_env();
  } catch (const sphfan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  if (cone_opt->count() > 0) opts.cone_index = cone_index;

  CommandResult result;
  if (*validate) {
    result = cmd_validate(datum, fan, opts);
  } else if (*faces) {
    result = cmd_faces(datum, fan, opts);
  } else if (*invariant) {
    result = cmd_invariant(datum, fan, action, opts);
  } else {
    result = cmd_morphism(src_datum, tgt_datum, morphism, src_fan, tgt_fan, opts);
  }
  std::cout << result.out;
  std::cerr << result.summary;
  return result.exit_code;
}
