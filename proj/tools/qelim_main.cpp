// qelim: decide successor-arithmetic formulas by quantifier elimination.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qelim/cli.hpp"

namespace {

struct Options {
  std::string formula;
  std::vector<std::string> env;
  bool json = false;
  bool evidence = false;
  std::vector<qelim::sn::Nat> instantiate;
  std::size_t max_products = qelim::cli::kDefaultMaxProducts;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Options& opts) {
  CLI::App* cmd = app.add_subcommand(name, help);
  cmd->add_option("formula", opts.formula, "Formula in the surface syntax")->required();
  cmd->add_option("--env", opts.env, "Value of a free variable, NAME=VALUE (repeatable)");
  cmd->add_flag("--json", opts.json, "Machine-readable output");
  cmd->add_option("--max-products", opts.max_products, "Abort when a DNF grows past this many products")
      ->capture_default_str();
  return cmd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedure for the theory of successor on the natural numbers"};
  app.require_subcommand(1);
  Options opts;

  CLI::App* decide = add_command(app, "decide", "Decide a formula (yes/no)", opts);
  decide->add_flag("--evidence", opts.evidence, "Report witnesses and counterexamples");
  decide->add_option("--instantiate", opts.instantiate, "Instantiate universal evidence at VALUE (repeatable)");
  CLI::App* eliminate = add_command(app, "eliminate", "Print an equivalent quantifier-free formula", opts);
  CLI::App* oracle = add_command(app, "oracle", "Cross-check decide against brute-force enumeration", opts);
  CLI::App* split = add_command(app, "split", "Holds for all values of the free variable, or a counterexample", opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qelim::cli::kExitUsage;
  }

  qelim::cli::Config cfg;
  if (decide->parsed()) cfg.command = qelim::cli::Command::Decide;
  if (eliminate->parsed()) cfg.command = qelim::cli::Command::Eliminate;
  if (oracle->parsed()) cfg.command = qelim::cli::Command::Oracle;
  if (split->parsed()) cfg.command = qelim::cli::Command::Split;
  cfg.formula = opts.formula;
  cfg.json = opts.json;
  cfg.evidence = opts.evidence;
  cfg.instantiate = opts.instantiate;
  cfg.max_products = opts.max_products;
  try {
    for (const std::string& b : opts.env) cfg.env.push_back(qelim::cli::parse_binding(b));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qelim::cli::kExitUsage;
  }
  if (!cfg.instantiate.empty()) cfg.evidence = true;
  return qelim::cli::run(cfg, std::cout, std::cerr);
}
