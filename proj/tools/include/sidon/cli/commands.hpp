#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace sidon::cli {

/// Exit statuses of the `sidon` tool.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,  // bad flags, bad parameters, malformed input
  kIo = 3,
  kCrypto = 4,  // decryption failure
};

struct CliConfig {
  std::string subcommand;
  std::optional<std::uint32_t> q;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  std::string priv_path;
  std::string pub_path;
  std::string ct_path;
  std::string out_path;
  std::string message;
  std::optional<std::uint64_t> trials;
  std::string kind;    // attack selector
  std::string target;  // bench selector
  std::string system_prefix;
  bool randomized = false;
};

/// Runs one subcommand; diagnostics go to `err`, results to `out` unless an
/// output path is configured.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

int cmd_keygen(const CliConfig& config, std::ostream& out);
int cmd_encrypt(const CliConfig& config, std::ostream& out);
int cmd_decrypt(const CliConfig& config, std::ostream& out);
int cmd_attack(const CliConfig& config, std::ostream& out);
int cmd_bench(const CliConfig& config, std::ostream& out);

}  // namespace sidon::cli
