#include "sidon/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "sidon/attacks/bilinear.hpp"
#include "sidon/attacks/kernel.hpp"
#include "sidon/attacks/minors.hpp"
#include "sidon/attacks/structured.hpp"
#include "sidon/crypto/cipher.hpp"
#include "sidon/crypto/codec.hpp"
#include "sidon/crypto/serialization.hpp"
#include "sidon/error.hpp"

namespace sidon::cli {

namespace {

using crypto::Coeff;
using crypto::Vector;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

// Report text goes to --out when given, otherwise to stdout.
void emit(const CliConfig& config, std::ostream& out, const std::string& text) {
  if (config.out_path.empty()) {
    out << text;
  } else {
    write_file(config.out_path, text);
  }
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

BigInt parse_message(const std::string& text) {
  require(!text.empty(), "--message is required");
  for (char c : text) require(c >= '0' && c <= '9', "message must be a non-negative decimal integer");
  return BigInt(text);
}

std::string to_decimal(const BigInt& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

// Randomized-scheme plaintexts are integers 1 <= m < q^k read as base-q
// digits, least significant first (coefficients of an element of F_R).
Vector digits(std::uint32_t q, std::size_t k, BigInt m) {
  require(m >= 1 && m < ipow(q, k), "randomized message must lie in [1, q^k)");
  Vector out(k);
  for (auto& d : out) {
    d = static_cast<Coeff>(m % q);
    m /= q;
  }
  return out;
}

BigInt undigits(std::uint32_t q, const Vector& v) {
  BigInt m = 0;
  for (std::size_t i = v.size(); i-- > 0;) m = m * q + v[i];
  return m;
}

crypto::PrivateKey load_private(const CliConfig& config) {
  require(!config.priv_path.empty(), "--priv is required for this command");
  return crypto::private_key_from_json(read_file(config.priv_path));
}

crypto::PublicKey load_public(const CliConfig& config) {
  require(!config.pub_path.empty(), "--pub is required for this command");
  return crypto::public_key_from_json(read_file(config.pub_path));
}

// Public key from --pub, or derived from --priv when only that is given.
crypto::PublicKey load_public_or_derive(const CliConfig& config) {
  if (!config.pub_path.empty()) return load_public(config);
  require(!config.priv_path.empty(), "--pub or --priv is required for this command");
  return crypto::derive_public_key(load_private(config));
}

void check_parameters(const CliConfig& config) {
  require(config.q.has_value(), "--q is required");
  require(config.k.has_value(), "--k is required");
  require(*config.k >= 3, "k must be >= 3");
  require(*config.k <= 4096, "k is unreasonably large");
  crypto::GFq check(*config.q);  // odd prime or ParameterError
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats summarize(const std::vector<double>& xs) {
  Stats s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(xs.size() - 1));
  }
  return s;
}

double seconds_of(const std::function<void()>& work) {
  const auto start = std::chrono::steady_clock::now();
  work();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int cmd_keygen(const CliConfig& config, std::ostream& out) {
  check_parameters(config);
  require(!config.priv_path.empty() && !config.pub_path.empty(), "--priv and --pub are required");
  SplitMix64 rng(config.seed);
  const auto keys = crypto::keygen(*config.q, *config.k, rng);
  const std::string priv_text = crypto::to_json(keys.priv);
  const std::string pub_text = crypto::to_json(keys.pub);
  write_file(config.priv_path, priv_text);
  write_file(config.pub_path, pub_text);
  out << "|Q_k| = " << crypto::msg_space_size(*config.q, *config.k) << "\n"
      << "private key: " << priv_text.size() << " bytes\n"
      << "public key: " << pub_text.size() << " bytes\n";
  return kOk;
}

int cmd_encrypt(const CliConfig& config, std::ostream& out) {
  const auto pub = load_public(config);
  const BigInt m = parse_message(config.message);
  crypto::Ciphertext ct{pub.q, {}};
  if (config.randomized) {
    SplitMix64 rng(config.seed);
    ct.ct = crypto::randomized_encrypt(pub, digits(pub.q, pub.k, m), rng);
  } else {
    require(m < crypto::msg_space_size(pub.q, pub.k), "message out of range [0, |Q_k|)");
    ct.ct = crypto::encrypt(pub, crypto::encode_message(pub.q, pub.k, m));
  }
  const std::string text = crypto::to_json(ct);
  if (!config.ct_path.empty()) {
    write_file(config.ct_path, text);
  } else {
    emit(config, out, text);
  }
  return kOk;
}

int cmd_decrypt(const CliConfig& config, std::ostream& out) {
  const auto priv = load_private(config);
  require(!config.ct_path.empty(), "--ct is required");
  const auto ct = crypto::ciphertext_from_json(read_file(config.ct_path));
  if (ct.q != priv.q()) throw InputError("ciphertext and key use different q");
  const BigInt m = config.randomized ? undigits(priv.q(), crypto::randomized_decrypt(priv, ct.ct))
                                     : crypto::decode_message(priv.q(), priv.k(), crypto::decrypt(priv, ct.ct));
  emit(config, out, to_decimal(m) + "\n");
  return kOk;
}

int cmd_attack(const CliConfig& config, std::ostream& out) {
  const std::string& kind = config.kind;
  if (kind == "kernel") {
    const auto priv = load_private(config);
    const auto trials = config.trials.value_or(100000);
    require(trials >= 1, "--trials must be >= 1");
    auto report = attacks::kernel_attack_experiment(priv, trials, config.seed);
    report.base_field_probe =
        attacks::base_field_kernel_probe(priv, std::min<std::uint64_t>(trials, 10000), config.seed + 1);
    emit(config, out, attacks::to_json(report));
    return kOk;
  }
  if (kind == "ks") {
    const auto priv = load_private(config);
    const auto pub = crypto::derive_public_key(priv);
    emit(config, out, attacks::to_json(attacks::ks_report(priv, pub, 0, config.trials.value_or(100000), config.seed)));
    return kOk;
  }
  if (kind == "minor") {
    const auto priv = load_private(config);
    const auto pub = config.pub_path.empty() ? crypto::derive_public_key(priv) : load_public(config);
    SplitMix64 rng(config.seed);
    emit(config, out, attacks::to_json(attacks::minor_kernel_report(priv, pub, rng)));
    return kOk;
  }
  if (kind == "kronecker") {
    const auto pub = load_public_or_derive(config);
    // Default basis: the key's own tower when known, else a random one.
    if (!config.priv_path.empty()) {
      const auto priv = load_private(config);
      emit(config, out, attacks::to_json(attacks::kronecker_report(pub, priv.ctx().fn())));
    } else {
      SplitMix64 rng(config.seed);
      const auto eve = attacks::random_representation(pub.q, pub.k, rng);
      emit(config, out, attacks::to_json(attacks::kronecker_report(pub, eve.fn())));
    }
    return kOk;
  }
  if (kind == "structured") {
    const auto priv = load_private(config);
    const auto pub = config.pub_path.empty() ? crypto::derive_public_key(priv) : load_public(config);
    if (!config.system_prefix.empty()) {
      const auto systems = attacks::structured_attack_emit(pub, priv.ctx());
      write_file(config.system_prefix + ".quartic.txt", attacks::to_text(systems.quartic));
      write_file(config.system_prefix + ".quadratic.txt", attacks::to_text(systems.quadratic));
    }
    emit(config, out, attacks::to_json(attacks::structured_report(priv, pub)));
    return kOk;
  }
  if (kind == "bilinear") {
    const auto pub = load_public_or_derive(config);
    require(!config.ct_path.empty(), "--ct is required for the bilinear attack");
    const auto ct = crypto::ciphertext_from_json(read_file(config.ct_path));
    if (ct.q != pub.q) throw InputError("ciphertext and key use different q");
    const auto found = attacks::bilinear_bruteforce(pub, ct.ct);
    std::ostringstream text;
    text << "{\n  \"attack\": \"bilinear\",\n  \"solutions\": [";
    bool first = true;
    for (const auto& m : found) {
      text << (first ? "" : ", ") << to_decimal(crypto::decode_message(pub.q, pub.k, m));
      first = false;
    }
    text << "]";
    if (!config.priv_path.empty()) {
      const auto priv = load_private(config);
      bool agrees = false;
      try {
        const auto truth = crypto::decrypt(priv, ct.ct);
        agrees = found.size() == 1 && *found.begin() == truth;
      } catch (const DecryptionFailure&) {
        agrees = found.empty();
      }
      text << ",\n  \"checks\": {\"matches_decrypt\": \"" << (agrees ? "pass" : "fail") << "\"}";
    }
    text << "\n}\n";
    emit(config, out, text.str());
    return kOk;
  }
  if (kind == "basis-ext") {
    const auto priv = load_private(config);
    const auto pairs = config.trials.value_or(5);
    std::uint64_t equal = 0;
    for (std::uint64_t p = 0; p < pairs; ++p) {
      const auto s1 = SplitMix64::stream(config.seed, 2 * p)();
      const auto s2 = SplitMix64::stream(config.seed, 2 * p + 1)();
      if (attacks::basis_extension_kernel_equality(priv, s1, s2)) ++equal;
    }
    std::ostringstream text;
    text << "{\n  \"attack\": \"basis-ext\",\n  \"pairs\": " << pairs << ",\n  \"equal\": " << equal
         << ",\n  \"checks\": {\"kernels_equal\": \"" << (equal == pairs ? "pass" : "fail") << "\"}\n}\n";
    emit(config, out, text.str());
    return kOk;
  }
  throw ParameterError("unknown attack kind '" + kind +
                       "' (expected kernel, ks, minor, kronecker, structured, bilinear, basis-ext)");
}

int cmd_bench(const CliConfig& config, std::ostream& out) {
  std::vector<std::uint32_t> qs;
  std::vector<std::size_t> ks;
  const bool keygen = config.target == "keygen";
  require(keygen || config.target == "bilinear", "--target must be keygen or bilinear");
  if (keygen) {
    qs = {5, 53, 541};
    ks = {5, 10, 15, 20, 25, 30, 35, 40};
  } else {
    qs = {3};
    ks = {3, 4, 5};
  }
  if (config.q) qs = {*config.q};
  if (config.k) ks = {*config.k};
  const auto trials = config.trials.value_or(10);
  require(trials >= 1, "--trials must be >= 1");

  std::ostringstream csv;
  csv << "q,k,mean,stddev\n";
  for (auto q : qs) {
    for (auto k : ks) {
      std::vector<double> samples;
      for (std::uint64_t t = 0; t < trials; ++t) {
        auto rng = SplitMix64::stream(config.seed ^ (static_cast<std::uint64_t>(q) << 32 | k), t);
        if (keygen) {
          samples.push_back(seconds_of([&] { (void)crypto::keygen(q, k, rng); }));
        } else {
          const auto keys = crypto::keygen(q, k, rng);
          const auto size = static_cast<std::uint64_t>(crypto::msg_space_size(q, k));
          const auto ct = crypto::encrypt(keys.pub, crypto::encode_message(q, k, rng.uniform(size)));
          samples.push_back(1000.0 * seconds_of([&] { (void)attacks::bilinear_bruteforce(keys.pub, ct); }));
        }
      }
      const Stats s = summarize(samples);
      csv << q << ',' << k << ',' << s.mean << ',' << s.stddev << '\n';
    }
  }
  emit(config, out, csv.str());
  return kOk;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "keygen") return cmd_keygen(config, out);
    if (config.subcommand == "encrypt") return cmd_encrypt(config, out);
    if (config.subcommand == "decrypt") return cmd_decrypt(config, out);
    if (config.subcommand == "attack") return cmd_attack(config, out);
    if (config.subcommand == "bench") return cmd_bench(config, out);
    err << "error: unknown subcommand '" << config.subcommand << "'\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const DecryptionFailure& e) {
    err << "error: " << e.what() << "\n";
    return kCrypto;
  } catch (const FactorizationError& e) {
    err << "error: " << e.what() << "\n";
    return kCrypto;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace sidon::cli
