// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface. Artifacts travel as FESKL1 containers; quantum state
// lives only in qstore files (SIMULATION ONLY), which decrypt/delete mutate
// through write-temp-rename.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "feskl/games.hpp"
#include "feskl/selftest.hpp"
#include "feskl/serial.hpp"

namespace {

using namespace feskl;

Level parse_level(const std::string& s) {
  if (s == "base") return Level::Base;
  if (s == "indexed") return Level::Indexed;
  if (s == "sbskl") return Level::Sbskl;
  if (s == "skl") return Level::Skl;
  if (s == "adaptive") return Level::Adaptive;
  throw ParameterError("unknown level: " + s);
}

SkfeBackend parse_backend(const std::string& s) {
  if (s == "crypto") return SkfeBackend::Crypto;
  if (s == "reference") return SkfeBackend::Reference;
  throw ParameterError("unknown backend: " + s);
}

SkfeConfig cli_base_cfg(SkfeBackend backend) {
  SkfeConfig cfg;
  cfg.backend = backend;
  cfg.budget = CircuitBudget{4, 8, 1};
  return cfg;
}

LeasingConfig cli_stack_cfg(SkfeBackend backend) {
  LeasingConfig cfg;
  cfg.skfe = cli_base_cfg(backend);
  return cfg;
}

// The adaptive wrap runs on the reduced-parameter stack (its payloads are
// hundreds of bits wide).
AdaConfig cli_ada_cfg() { return default_game_config().ada; }

BitVec parse_bits(const std::string& s) {
  BitVec out;
  for (char c : s) {
    if (c != '0' && c != '1')
      throw ParameterError("message must be a string of 0/1 bits");
    out.push_back(uint8_t(c - '0'));
  }
  return out;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open circuit file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit_text(ss.str());
}

QStore load_qstore(const std::string& path, uint64_t seed, bool allow_clone) {
  if (std::filesystem::exists(path))
    return QStore::load_file(path, seed, allow_clone);
  return QStore(seed, allow_clone);
}

Level file_level(ArtifactKind kind, const std::string& path, Bytes& payload) {
  auto [level, body] = container_unwrap(kind, read_file(path));
  payload = std::move(body);
  return level;
}

void write_artifact(const std::string& path, ArtifactKind kind, Level level,
                    const Bytes& payload) {
  write_file_atomic(path, container_wrap(kind, level, payload));
}

// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string level = "base";
  bool level_given = false;
  size_t q = 1;
  uint64_t n = 0;
  uint64_t index = 1;
  std::string backend = "crypto";
  bool backend_given = false;
  uint64_t seed = 0;
  std::string circuit, in, out, key, vk, qstore, message;
};

int cmd_setup(const CommonOpts& o) {
  Level level = parse_level(o.level);
  Rng rng = Rng(o.seed).split("setup");
  Bytes payload;
  switch (level) {
    case Level::Base: {
      SkfeMasterKey msk =
          SkfeMasterKey::setup(cli_base_cfg(parse_backend(o.backend)), o.q, rng);
      payload = serialize_skfe_msk(msk);
      break;
    }
    case Level::Indexed: {
      IndexedMsk msk = i_setup(cli_stack_cfg(parse_backend(o.backend)), o.q,
                               o.n ? o.n : 8, rng);
      payload = serialize_indexed_msk(msk);
      break;
    }
    case Level::Sbskl: {
      if (o.backend_given && parse_backend(o.backend) != SkfeBackend::Reference)
        throw ParameterError("sbskl runs on the reference backend only");
      SbsklMsk msk = sb_setup(cli_stack_cfg(SkfeBackend::Reference), o.q,
                              o.n ? o.n : 8, rng);
      payload = serialize_sbskl_msk(msk);
      break;
    }
    case Level::Skl: {
      if (o.backend_given && parse_backend(o.backend) != SkfeBackend::Reference)
        throw ParameterError("skl runs on the reference backend only");
      SklMsk msk = skl_setup(cli_stack_cfg(SkfeBackend::Reference), o.q, rng);
      payload = serialize_skl_msk(msk);
      break;
    }
    case Level::Adaptive: {
      AdaMsk msk = ada_setup(cli_ada_cfg(), o.q, rng);
      payload = serialize_ada_msk(msk);
      break;
    }
  }
  write_artifact(o.out, ArtifactKind::Msk, level, payload);
  return 0;
}

int cmd_keygen(const CommonOpts& o) {
  Bytes msk_payload;
  Level level = file_level(ArtifactKind::Msk, o.in, msk_payload);
  if (o.level_given && parse_level(o.level) != level)
    throw ParameterError("--level disagrees with the master key file");
  Circuit f = load_circuit(o.circuit);
  Rng rng = Rng(o.seed).split("keygen");
  std::string vk_path = o.vk.empty() ? o.out + ".vk" : o.vk;

  if (level == Level::Base) {
    SkfeMasterKey msk = deserialize_skfe_msk(msk_payload);
    SkfeFunctionKey sk = msk.keygen(f);
    write_artifact(o.out, ArtifactKind::Fsk, level, sk.to_bytes(true));
    write_artifact(o.in, ArtifactKind::Msk, level, serialize_skfe_msk(msk));
    return 0;
  }

  if (o.qstore.empty())
    throw ParameterError("keygen at this level needs --qstore");
  QStore store = load_qstore(o.qstore, o.seed, false);
  Bytes key_payload, vk_payload, new_msk;
  switch (level) {
    case Level::Indexed: {
      IndexedMsk msk = deserialize_indexed_msk(msk_payload);
      auto [key, vk] = i_kg(msk, f, store, rng);
      key_payload = serialize_leased_key(key);
      vk_payload = serialize_leased_vk(vk);
      new_msk = serialize_indexed_msk(msk);
      break;
    }
    case Level::Sbskl: {
      SbsklMsk msk = deserialize_sbskl_msk(msk_payload);
      auto [key, vk] = sb_kg(msk, f, store, rng);
      key_payload = serialize_sbskl_key(key);
      vk_payload = serialize_sbskl_vk(vk);
      new_msk = serialize_sbskl_msk(msk);
      break;
    }
    case Level::Skl: {
      SklMsk msk = deserialize_skl_msk(msk_payload);
      auto [key, vk] = skl_kg(msk, f, o.n ? o.n : 1, store, rng);
      key_payload = serialize_skl_key(key);
      vk_payload = serialize_skl_vk(vk);
      new_msk = serialize_skl_msk(msk);
      break;
    }
    case Level::Adaptive: {
      AdaMsk msk = deserialize_ada_msk(msk_payload);
      auto [key, vk] = ada_kg(msk, f, o.n ? o.n : 1, store, rng);
      key_payload = serialize_ada_key(key);
      vk_payload = serialize_skl_vk(vk);
      new_msk = serialize_ada_msk(msk);
      break;
    }
    default:
      throw ParameterError("keygen: unsupported level");
  }
  write_artifact(o.out, ArtifactKind::Fsk, level, key_payload);
  write_artifact(vk_path, ArtifactKind::Vk, level, vk_payload);
  write_artifact(o.in, ArtifactKind::Msk, level, new_msk);
  store.save_file(o.qstore);
  return 0;
}

int cmd_encrypt(const CommonOpts& o) {
  Bytes msk_payload;
  Level level = file_level(ArtifactKind::Msk, o.in, msk_payload);
  if (o.level_given && parse_level(o.level) != level)
    throw ParameterError("--level disagrees with the master key file");
  BitVec x = parse_bits(o.message);
  Rng rng = Rng(o.seed).split("encrypt");
  Bytes ct_payload;
  switch (level) {
    case Level::Base: {
      SkfeMasterKey msk = deserialize_skfe_msk(msk_payload);
      ct_payload = serialize_skfe_ct(msk.encrypt(x, rng));
      break;
    }
    case Level::Indexed: {
      IndexedMsk msk = deserialize_indexed_msk(msk_payload);
      ct_payload = serialize_indexed_ct(i_enc(msk, o.index, x, rng));
      break;
    }
    case Level::Sbskl: {
      SbsklMsk msk = deserialize_sbskl_msk(msk_payload);
      ct_payload = serialize_sbskl_ct(sb_enc(msk, x, rng));
      break;
    }
    case Level::Skl: {
      SklMsk msk = deserialize_skl_msk(msk_payload);
      ct_payload = serialize_skl_ct(skl_enc(msk, x, rng));
      // skl_enc materializes levels lazily, so the master key advanced.
      write_artifact(o.in, ArtifactKind::Msk, level, serialize_skl_msk(msk));
      break;
    }
    case Level::Adaptive: {
      AdaMsk msk = deserialize_ada_msk(msk_payload);
      ct_payload = serialize_ada_ct(ada_enc(msk, x, rng));
      write_artifact(o.in, ArtifactKind::Msk, level, serialize_ada_msk(msk));
      break;
    }
  }
  write_artifact(o.out, ArtifactKind::Ct, level, ct_payload);
  return 0;
}

int cmd_decrypt(const CommonOpts& o) {
  Bytes key_payload, ct_payload;
  Level level = file_level(ArtifactKind::Fsk, o.key, key_payload);
  Level ct_level = file_level(ArtifactKind::Ct, o.in, ct_payload);
  if (ct_level != level)
    throw ParameterError("key and ciphertext levels disagree");

  if (level == Level::Base) {
    SkfeFunctionKey sk = SkfeFunctionKey::from_bytes(key_payload);
    BitVec y = skfe_decrypt(sk, deserialize_skfe_ct(ct_payload));
    std::cout << bits_to_string(y) << std::endl;
    return 0;
  }
  if (o.qstore.empty())
    throw ParameterError("decrypt at this level needs --qstore");
  QStore store = load_qstore(o.qstore, o.seed, false);
  BitVec y;
  switch (level) {
    case Level::Indexed:
      y = i_dec(deserialize_leased_key(key_payload),
                deserialize_indexed_ct(ct_payload), store);
      break;
    case Level::Sbskl:
      y = sb_dec(deserialize_sbskl_key(key_payload),
                 deserialize_sbskl_ct(ct_payload), store);
      break;
    case Level::Skl:
      y = skl_dec(deserialize_skl_key(key_payload),
                  deserialize_skl_ct(ct_payload), store);
      break;
    case Level::Adaptive:
      y = ada_dec(deserialize_ada_key(key_payload),
                  deserialize_ada_ct(ct_payload), store);
      break;
    default:
      throw ParameterError("decrypt: unsupported level");
  }
  store.save_file(o.qstore);
  std::cout << bits_to_string(y) << std::endl;
  return 0;
}

int cmd_delete(const CommonOpts& o) {
  Bytes key_payload;
  Level level = file_level(ArtifactKind::Fsk, o.key, key_payload);
  if (level == Level::Base)
    throw ParameterError("the base layer has no deletion certificate");
  if (o.qstore.empty()) throw ParameterError("delete needs --qstore");
  QStore store = load_qstore(o.qstore, o.seed, false);
  Bytes cert_payload;
  switch (level) {
    case Level::Indexed:
      cert_payload = serialize_leased_cert(
          i_cert(deserialize_leased_key(key_payload), store));
      break;
    case Level::Sbskl:
      cert_payload = serialize_sbskl_cert(
          sb_cert(deserialize_sbskl_key(key_payload), store));
      break;
    case Level::Skl:
      cert_payload =
          serialize_skl_cert(skl_cert(deserialize_skl_key(key_payload), store));
      break;
    case Level::Adaptive:
      cert_payload = serialize_skl_cert(
          ada_cert(deserialize_ada_key(key_payload), store));
      break;
    default:
      throw ParameterError("delete: unsupported level");
  }
  store.save_file(o.qstore);
  write_artifact(o.out, ArtifactKind::Cert, level, cert_payload);
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  Bytes vk_payload, cert_payload;
  Level level = file_level(ArtifactKind::Vk, o.vk, vk_payload);
  Level cert_level = file_level(ArtifactKind::Cert, o.in, cert_payload);
  if (cert_level != level)
    throw ParameterError("verification key and certificate levels disagree");
  bool accept = false;
  switch (level) {
    case Level::Indexed:
      accept = i_vrfy(deserialize_leased_vk(vk_payload),
                      deserialize_leased_cert(cert_payload));
      break;
    case Level::Sbskl:
      accept = sb_vrfy(deserialize_sbskl_vk(vk_payload),
                       deserialize_sbskl_cert(cert_payload));
      break;
    case Level::Skl:
    case Level::Adaptive:
      accept = skl_vrfy(deserialize_skl_vk(vk_payload),
                        deserialize_skl_cert(cert_payload));
      break;
    default:
      throw ParameterError("verify: unsupported level");
  }
  std::cout << (accept ? "ACCEPT" : "REJECT") << std::endl;
  return accept ? 0 : 2;
}

int cmd_game(const std::string& name, const std::string& adversary,
             size_t trials, uint64_t seed) {
  AdvantageReport rep =
      run_game(name, adversary, trials, seed, default_game_config());
  std::cout << rep.to_text();
  nlohmann::json record{{"experiment", rep.experiment},
                        {"adversary", rep.adversary},
                        {"trials", rep.trials},
                        {"out1_coin0", rep.out1_coin0},
                        {"n_coin0", rep.n_coin0},
                        {"out1_coin1", rep.out1_coin1},
                        {"n_coin1", rep.n_coin1},
                        {"successes", rep.successes},
                        {"zeroed", rep.zeroed},
                        {"accepts", rep.accepts},
                        {"violations", rep.violations},
                        {"advantage", rep.advantage()}};
  auto [lo, hi] = rep.advantage_interval();
  record["wilson95"] = {lo, hi};
  std::cout << record.dump() << std::endl;
  return 0;
}

int cmd_selftest() {
  std::vector<CriterionResult> results = run_all_criteria(std::cout);
  for (const CriterionResult& r : results)
    if (!r.pass) return 2;
  return 0;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--level", o.level, "base|indexed|sbskl|skl|adaptive")
      ->envname("FESKL_LEVEL")
      ->each([&o](const std::string&) { o.level_given = true; });
  cmd->add_option("--seed", o.seed, "deterministic seed")->envname("FESKL_SEED");
  cmd->add_option("--qstore", o.qstore, "qstore file (SIMULATION ONLY)")
      ->envname("FESKL_QSTORE");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secret-key functional encryption with secure key leasing "
               "(desk-scale simulation)"};
  app.require_subcommand(1);
  CommonOpts o;
  int rc = 0;

  CLI::App* setup = app.add_subcommand("setup", "generate a master key");
  add_common(setup, o);
  setup->add_option("--q", o.q, "collusion bound")->envname("FESKL_Q");
  setup->add_option("--n", o.n, "index space / availability bound")
      ->envname("FESKL_N");
  setup->add_option("--backend", o.backend, "crypto|reference")
      ->envname("FESKL_BACKEND")
      ->each([&o](const std::string&) { o.backend_given = true; });
  setup->add_option("--out", o.out, "master key file")->required();
  setup->callback([&] { rc = cmd_setup(o); });

  CLI::App* keygen = app.add_subcommand("keygen", "lease a function key");
  add_common(keygen, o);
  keygen->add_option("--in", o.in, "master key file")->required();
  keygen->add_option("--circuit", o.circuit, "circuit text file")->required();
  keygen->add_option("--n", o.n, "availability bound")->envname("FESKL_N");
  keygen->add_option("--out", o.out, "function key file")->required();
  keygen->add_option("--vk", o.vk, "verification key file (default OUT.vk)");
  keygen->callback([&] { rc = cmd_keygen(o); });

  CLI::App* encrypt = app.add_subcommand("encrypt", "encrypt a message");
  add_common(encrypt, o);
  encrypt->add_option("--in", o.in, "master key file")->required();
  encrypt->add_option("--index", o.index, "encryption index (indexed level)")
      ->envname("FESKL_INDEX");
  encrypt->add_option("--message", o.message, "plaintext bits, e.g. 0110")
      ->required();
  encrypt->add_option("--out", o.out, "ciphertext file")->required();
  encrypt->callback([&] { rc = cmd_encrypt(o); });

  CLI::App* decrypt = app.add_subcommand("decrypt", "decrypt with a leased key");
  add_common(decrypt, o);
  decrypt->add_option("--key", o.key, "function key file")->required();
  decrypt->add_option("--in", o.in, "ciphertext file")->required();
  decrypt->callback([&] { rc = cmd_decrypt(o); });

  CLI::App* del = app.add_subcommand("delete", "delete a leased key");
  add_common(del, o);
  del->add_option("--key", o.key, "function key file")->required();
  del->add_option("--out", o.out, "certificate file")->required();
  del->callback([&] { rc = cmd_delete(o); });

  CLI::App* verify = app.add_subcommand("verify", "verify a deletion certificate");
  add_common(verify, o);
  verify->add_option("--vk", o.vk, "verification key file")->required();
  verify->add_option("--in", o.in, "certificate file")->required();
  verify->callback([&] { rc = cmd_verify(o); });

  CLI::App* game = app.add_subcommand("game", "security-game harness");
  CLI::App* game_run = game->add_subcommand("run", "run one experiment");
  std::string game_name, adversary;
  size_t trials = 1000;
  uint64_t game_seed = 0;
  game_run->add_option("name", game_name, "experiment name")->required();
  game_run->add_option("--adversary", adversary, "adversary id")->required();
  game_run->add_option("--trials", trials, "trial count");
  game_run->add_option("--seed", game_seed, "deterministic seed")
      ->envname("FESKL_SEED");
  game_run->callback([&] { rc = cmd_game(game_name, adversary, trials, game_seed); });
  game->require_subcommand(1);

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->callback([&] { rc = cmd_selftest(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const LinearityError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  } catch (const FeasibilityError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 4;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 4;
  } catch (const QuotaError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 4;
  } catch (const AuthError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const TamperError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return rc;
}
