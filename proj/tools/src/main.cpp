#include <iostream>

#include <CLI11.hpp>

#include "sidon/cli/commands.hpp"

namespace {

void add_key_paths(CLI::App* cmd, sidon::cli::CliConfig& cfg) {
  cmd->add_option("--priv", cfg.priv_path, "Private key file");
  cmd->add_option("--pub", cfg.pub_path, "Public key file");
}

}  // namespace

int main(int argc, char** argv) {
  sidon::cli::CliConfig cfg;
  CLI::App app{"Sidon-space public-key cryptosystem and cryptanalysis lab"};
  app.require_subcommand(1);

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  keygen->add_option("--q", cfg.q, "Odd prime field size")->required();
  keygen->add_option("--k", cfg.k, "Dimension of the Sidon space (>= 3)")->required();
  keygen->add_option("--seed", cfg.seed, "RNG seed");
  add_key_paths(keygen, cfg);

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a decimal message index");
  encrypt->add_option("--pub", cfg.pub_path, "Public key file")->required();
  encrypt->add_option("--message", cfg.message, "Decimal message")->required();
  encrypt->add_option("--ct", cfg.ct_path, "Ciphertext output file (default: stdout)");
  encrypt->add_option("--out", cfg.out_path, "Alias output file");
  encrypt->add_option("--seed", cfg.seed, "RNG seed for --randomized");
  encrypt->add_flag("--randomized", cfg.randomized, "Use the randomized scheme (message in [1, q^k))");

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  decrypt->add_option("--priv", cfg.priv_path, "Private key file")->required();
  decrypt->add_option("--ct", cfg.ct_path, "Ciphertext file")->required();
  decrypt->add_option("--out", cfg.out_path, "Output file (default: stdout)");
  decrypt->add_flag("--randomized", cfg.randomized, "Ciphertext comes from the randomized scheme");

  auto* attack = app.add_subcommand("attack", "Run an attack experiment and print a JSON report");
  attack->add_option("--kind", cfg.kind, "kernel|ks|minor|kronecker|structured|bilinear|basis-ext")->required();
  add_key_paths(attack, cfg);
  attack->add_option("--ct", cfg.ct_path, "Ciphertext file (bilinear)");
  attack->add_option("--trials", cfg.trials, "Monte Carlo trials or extension pairs");
  attack->add_option("--seed", cfg.seed, "RNG seed");
  attack->add_option("--out", cfg.out_path, "Report file (default: stdout)");
  attack->add_option("--system-prefix", cfg.system_prefix, "Write structured systems to PREFIX.{quartic,quadratic}.txt");

  auto* bench = app.add_subcommand("bench", "Time key generation or the bilinear attack; prints CSV");
  bench->add_option("--target", cfg.target, "keygen|bilinear")->required();
  bench->add_option("--q", cfg.q, "Restrict the grid to one q");
  bench->add_option("--k", cfg.k, "Restrict the grid to one k");
  bench->add_option("--trials", cfg.trials, "Trials per cell (default 10)");
  bench->add_option("--seed", cfg.seed, "RNG seed");
  bench->add_option("--out", cfg.out_path, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sidon::cli::kUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  return sidon::cli::run(cfg, std::cout, std::cerr);
}
