#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "config.hpp"
#include "cyl/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Strichartz experiments on the cylinder R x T"};
  app.require_subcommand(1);
  app.fallthrough();
  cylab::GlobalOptions opt;
  std::string config_path;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON configuration (version 1)");
  app.add_option("--out", opt.out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "random seed override");
  app.add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--freeze", opt.freeze, "write observed ceilings to the constants file");
  app.add_option("--constants", opt.constants_path, "frozen constants file");

  using Command = int (*)(cylab::ConfigNode&, const cylab::GlobalOptions&);
  const std::map<std::string, Command> commands{
      {"simulate", cylab::cmd_simulate}, {"norm", cylab::cmd_norm},     {"saturate", cylab::cmd_saturate},
      {"optimize", cylab::cmd_optimize}, {"schur", cylab::cmd_schur},   {"annulus", cylab::cmd_annulus},
      {"verify", cylab::cmd_verify}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name, "run the " + name + " command");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*seed_opt) opt.seed = seed;

  try {
    const auto doc = cylab::load_config(config_path);
    cylab::ConfigNode root(doc, "");
    root.integer("version", 1);
    const std::string name = app.get_subcommands().front()->get_name();
    return commands.at(name)(root, opt);
  } catch (const cyl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cyl::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const cyl::DiagnosticError& e) {
    std::cerr << "diagnostic failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
