// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// hefv: key management, encryption, expression evaluation and benchmarks from
// the command line.
//
// Exit codes: 0 success, 2 usage or parameter error, 3 I/O error,
// 4 corrupt input file, 5 expression parse error.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hefv/collections.hpp"
#include "hefv/encoding.hpp"
#include "hefv/error.hpp"
#include "hefv/expr.hpp"
#include "hefv/params.hpp"
#include "hefv/scheme.hpp"
#include "hefv/serialize.hpp"

namespace {

using namespace hefv;

constexpr int kExitOk = 0;
constexpr int kExitUser = 2;
constexpr int kExitIo = 3;
constexpr int kExitCorrupt = 4;
constexpr int kExitParse = 5;

int exit_code(Errc code) {
  switch (code) {
    case Errc::io:
    case Errc::randomness:
      return kExitIo;
    case Errc::corrupt_data:
      return kExitCorrupt;
    case Errc::parse:
      return kExitParse;
    default:
      return kExitUser;
  }
}

RandomSource make_rng(const std::string& seed_hex) {
  return seed_hex.empty() ? RandomSource::cryptographic() : RandomSource::seeded_hex(seed_hex);
}

void describe(std::ostream& out, const ParamSet& p) {
  out << "d " << p.d() << "\n"
      << "n " << p.n() << "\n"
      << "q " << to_string(p.q()) << "\n"
      << "t " << to_string(p.t) << "\n"
      << "sigma " << p.gauss.sigma << "\n"
      << "B " << p.gauss.bound << "\n"
      << "w " << p.relin_base_log2 << "\n"
      << "security_bits " << security_estimate(p) << "\n"
      << "depth " << estimate_depth(p) << "\n";
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<BigInt> parse_integers(const std::string& text) {
  std::vector<BigInt> out;
  std::size_t pos = 0;
  for (;;) {
    pos = text.find_first_not_of(" \t\r\n", pos);
    if (pos == std::string::npos) return out;
    const std::size_t end = std::min(text.find_first_of(" \t\r\n", pos), text.size());
    const std::string tok = text.substr(pos, end - pos);
    BigInt v;
    if (v.set_str(tok, 10) != 0) throw ParseError(pos, "not an integer: '" + tok + "'");
    out.push_back(v);
    pos = end;
  }
}

// ---------------------------------------------------------------------------

struct KeygenArgs {
  std::string params_file;
  unsigned security = 0;
  unsigned depth = 0;
  std::string t;
  std::string out_prefix;
  std::string seed;
};

int run_keygen(const KeygenArgs& a, bool have_security, bool have_depth) {
  const bool by_file = !a.params_file.empty();
  if (by_file == (have_security || have_depth) || (!by_file && !(have_security && have_depth)))
    throw Error(Errc::invalid_parameter, "give either --params or both --security and --depth");
  ParamSet p;
  if (by_file) {
    p = read_params(read_file(a.params_file));
  } else {
    SecurityRequest req{a.security, a.depth, std::nullopt};
    if (!a.t.empty()) req.t = parse_bigint(a.t);
    p = params_help(req);
  }
  RandomSource rng = make_rng(a.seed);
  const KeySet ks = keygen(p, rng);
  write_file(a.out_prefix + ".sk", serialize(ks.sk));
  write_file(a.out_prefix + ".pk", serialize(ks.pk));
  write_file(a.out_prefix + ".rlk", serialize(ks.rlk));
  return kExitOk;
}

struct EncryptArgs {
  std::string pk;
  std::string in;
  std::optional<std::string> values;
  std::string out;
  std::string seed;
};

int run_encrypt(const EncryptArgs& a) {
  if (a.in.empty() == !a.values.has_value())
    throw Error(Errc::invalid_parameter, "give exactly one of --in and --values");
  const PublicKey pk = read_public_key(read_file(a.pk));
  const std::vector<BigInt> values = parse_integers(a.values ? *a.values : read_text(a.in));
  for (const auto& v : values) encode_int(v, pk.params());
  RandomSource rng = make_rng(a.seed);
  const CipherVector ct = encrypt_vector(pk, values, rng);
  write_file(a.out, serialize(std::span<const Ciphertext>(ct.elems()), pk.params()));
  return kExitOk;
}

struct DecryptArgs {
  std::string sk;
  std::string in;
  std::string plaintext_out;
};

int run_decrypt(const DecryptArgs& a) {
  const SecretKey sk = read_secret_key(read_file(a.sk));
  auto [params, cts] = read_ciphertexts(read_file(a.in));
  if (!(params == sk.params())) throw Error(Errc::parameter_mismatch, "ciphertext file and key use different parameters");
  std::vector<Plaintext> pts;
  pts.reserve(cts.size());
  for (const auto& c : cts) pts.push_back(decrypt(sk, c));
  for (const auto& pt : pts) std::cout << to_string(decode_int(pt)) << "\n";
  if (!a.plaintext_out.empty()) write_file(a.plaintext_out, serialize(std::span<const Plaintext>(pts), params));
  return kExitOk;
}

struct EvalArgs {
  std::string rlk;
  std::string expr;
  std::vector<std::string> binds;
  std::string pk;
  std::string out;
  std::string seed;
};

int run_eval(const EvalArgs& a) {
  const expr::Node tree = expr::parse(a.expr);
  std::optional<RelinKey> rk;
  if (!a.rlk.empty()) rk.emplace(read_relin_key(read_file(a.rlk)));
  std::optional<PublicKey> pk;
  if (!a.pk.empty()) pk.emplace(read_public_key(read_file(a.pk)));

  expr::Environment env;
  for (const auto& b : a.binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::invalid_parameter, "binding '" + b + "' is not of the form NAME=FILE");
    auto [params, cts] = read_ciphertexts(read_file(b.substr(eq + 1)));
    env.vectors.insert_or_assign(b.substr(0, eq), CipherVector(std::move(params), std::move(cts)));
  }
  env.rk = rk ? &*rk : nullptr;
  env.pk = pk ? &*pk : nullptr;
  std::optional<RandomSource> rng;
  if (pk) env.rng = &rng.emplace(make_rng(a.seed));

  const ParamSet* p = rk ? &rk->params() : pk ? &pk->params() : nullptr;
  if (!p && !env.vectors.empty()) p = &env.vectors.begin()->second.params();
  const unsigned need = expr::depth(tree);
  if (p && need > estimate_depth(*p))
    std::cerr << "hefv: warning: expression has multiplicative depth " << need << " but these parameters support "
              << estimate_depth(*p) << "; the result may not decrypt correctly\n";

  const CipherVector result = expr::evaluate(tree, env);
  write_file(a.out, serialize(std::span<const Ciphertext>(result.elems()), result.params()));
  return kExitOk;
}

struct ParamsArgs {
  std::optional<int> d;
  std::optional<std::string> q, t;
  std::optional<double> sigma;
  std::optional<std::int64_t> bound;
  std::optional<unsigned> w;
  std::string out;
};

int run_params(const ParamsArgs& a) {
  ParamOverrides o;
  o.d = a.d;
  if (a.q) o.q = parse_bigint(*a.q);
  if (a.t) o.t = parse_bigint(*a.t);
  o.sigma = a.sigma;
  o.bound = a.bound;
  o.relin_base_log2 = a.w;
  const ParamSet p = make_params(o);
  if (!a.out.empty()) write_file(a.out, serialize(p));
  describe(std::cout, p);
  return kExitOk;
}

struct HelpArgs {
  unsigned security = 0;
  unsigned depth = 0;
  std::string t;
  std::string out;
};

int run_params_help(const HelpArgs& a) {
  SecurityRequest req{a.security, a.depth, std::nullopt};
  if (!a.t.empty()) req.t = parse_bigint(a.t);
  const ParamSet p = params_help(req);
  if (!a.out.empty()) write_file(a.out, serialize(p));
  describe(std::cout, p);
  return kExitOk;
}

struct BenchArgs {
  std::string params_file;
  unsigned reps = 100;
  std::string seed;
};

double mean_seconds(unsigned reps, const std::function<void()>& body) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  for (unsigned i = 0; i < reps; ++i) body();
  return std::chrono::duration<double>(clock::now() - start).count() / reps;
}

int run_bench(const BenchArgs& a) {
  if (a.reps < 1) throw Error(Errc::invalid_parameter, "--reps must be at least 1");
  const ParamSet p = a.params_file.empty() ? default_params() : read_params(read_file(a.params_file));
  RandomSource rng = make_rng(a.seed);
  const KeySet ks = keygen(p, rng);
  constexpr std::size_t kVec = 100, kDim = 10;

  std::vector<BigInt> xs, ys;
  for (std::size_t i = 0; i < kVec; ++i) {
    xs.emplace_back(static_cast<unsigned long>(rng.next_u64() % 16));
    ys.emplace_back(static_cast<unsigned long>(rng.next_u64() % 16));
  }
  const CipherVector va = encrypt_vector(ks.pk, xs, rng), vb = encrypt_vector(ks.pk, ys, rng);
  const CipherMatrix ma = encrypt_matrix(ks.pk, kDim, kDim, xs, rng), mb = encrypt_matrix(ks.pk, kDim, kDim, ys, rng);
  const Ciphertext& sa = va[0];
  const Ciphertext& sb = vb[0];

  struct Row {
    const char* label;
    std::function<void()> body;
  };
  const std::vector<Row> rows = {
      {"S+S", [&] { he_add(sa, sb); }},
      {"S*S", [&] { he_mul(sa, sb, ks.rlk); }},
      {"V+V", [&] { vec_elementwise(ElementOp::add, va, vb, ks.rlk); }},
      {"V*V", [&] { vec_elementwise(ElementOp::mul, va, vb, ks.rlk); }},
      {"V%*%V", [&] { inner_product(va, vb, ks.rlk); }},
      {"M+M", [&] { mat_elementwise(ElementOp::add, ma, mb, ks.rlk); }},
      {"M*M", [&] { mat_elementwise(ElementOp::mul, ma, mb, ks.rlk); }},
      {"M%*%M", [&] { mat_mul(ma, mb, ks.rlk); }},
  };
  std::printf("%-8s %14s\n", "op", "mean_seconds");
  for (const auto& r : rows) std::printf("%-8s %14.6f\n", r.label, mean_seconds(a.reps, r.body));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Somewhat-homomorphic integer arithmetic under the Fan-Vercauteren scheme"};
  app.require_subcommand(1);

  KeygenArgs kg;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate secret, public and relinearisation keys");
  keygen_cmd->add_option("--params", kg.params_file, "Parameter file");
  auto* kg_sec = keygen_cmd->add_option("--security", kg.security, "Target security in bits");
  auto* kg_depth = keygen_cmd->add_option("--depth", kg.depth, "Target multiplicative depth");
  keygen_cmd->add_option("--t", kg.t, "Plaintext modulus for --security/--depth");
  keygen_cmd->add_option("--out-prefix", kg.out_prefix, "Writes PREFIX.sk, PREFIX.pk, PREFIX.rlk")->required();
  keygen_cmd->add_option("--seed", kg.seed, "Hex seed for reproducible keys");

  EncryptArgs en;
  auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt whitespace-separated integers");
  encrypt_cmd->add_option("--pk", en.pk, "Public key file")->required();
  encrypt_cmd->add_option("--in", en.in, "Text file of integers, '-' for stdin");
  encrypt_cmd->add_option("--values", en.values, "Integers given inline");
  encrypt_cmd->add_option("--out", en.out, "Ciphertext vector file")->required();
  encrypt_cmd->add_option("--seed", en.seed, "Hex seed for reproducible ciphertexts");

  DecryptArgs de;
  auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a ciphertext vector, one integer per line");
  decrypt_cmd->add_option("--sk", de.sk, "Secret key file")->required();
  decrypt_cmd->add_option("--in", de.in, "Ciphertext vector file")->required();
  decrypt_cmd->add_option("--plaintext-out", de.plaintext_out, "Also write the plaintext polynomials");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an arithmetic expression over ciphertext vectors");
  eval_cmd->add_option("--rlk", ev.rlk, "Relinearisation key file");
  eval_cmd->add_option("--expr", ev.expr, "Expression over +, -, *, parentheses, names and integers")->required();
  eval_cmd->add_option("--bind", ev.binds, "NAME=FILE binding, repeatable");
  eval_cmd->add_option("--pk", ev.pk, "Public key, needed to encrypt literals");
  eval_cmd->add_option("--out", ev.out, "Result ciphertext vector file")->required();
  eval_cmd->add_option("--seed", ev.seed, "Hex seed for literal encryptions");

  ParamsArgs pa;
  auto* params_cmd = app.add_subcommand("params", "Write a parameter set built from defaults and overrides");
  params_cmd->add_option("--d", pa.d, "Ring log-degree; n = 2^(d-1)");
  params_cmd->add_option("--q", pa.q, "Ciphertext modulus, decimal or 2^k");
  params_cmd->add_option("--t", pa.t, "Plaintext modulus, decimal or 2^k");
  params_cmd->add_option("--sigma", pa.sigma, "Error standard deviation");
  params_cmd->add_option("--bound", pa.bound, "Error bound B");
  params_cmd->add_option("--w", pa.w, "Relinearisation digits are base 2^w");
  params_cmd->add_option("--out", pa.out, "Parameter file");

  HelpArgs he;
  auto* help_cmd = app.add_subcommand("params-help", "Pick parameters for a security and depth target");
  help_cmd->add_option("--security", he.security, "Target security in bits")->required();
  help_cmd->add_option("--depth", he.depth, "Target multiplicative depth")->required();
  help_cmd->add_option("--t", he.t, "Plaintext modulus");
  help_cmd->add_option("--out", he.out, "Parameter file");

  BenchArgs be;
  auto* bench_cmd = app.add_subcommand("bench", "Time scalar, vector and matrix operations");
  bench_cmd->add_option("--params", be.params_file, "Parameter file (defaults if omitted)");
  bench_cmd->add_option("--reps", be.reps, "Repetitions per operation");
  bench_cmd->add_option("--seed", be.seed, "Hex seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUser;
  }

  try {
    if (*keygen_cmd) return run_keygen(kg, kg_sec->count() > 0, kg_depth->count() > 0);
    if (*encrypt_cmd) return run_encrypt(en);
    if (*decrypt_cmd) return run_decrypt(de);
    if (*eval_cmd) return run_eval(ev);
    if (*params_cmd) return run_params(pa);
    if (*help_cmd) return run_params_help(he);
    if (*bench_cmd) return run_bench(be);
  } catch (const ParseError& e) {
    std::cerr << "hefv: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "hefv: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "hefv: internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitUser;
}
