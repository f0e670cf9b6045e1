#include "cli.hpp"

#include <openssl/sha.h>

#include <CLI11.hpp>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "mpkc/analysis.hpp"
#include "mpkc/errors.hpp"
#include "mpkc/protocol.hpp"
#include "mpkc/seeded_rng.hpp"
#include "mpkc/serialization.hpp"
#include "reproduce.hpp"

namespace mpkc::cli {

namespace {

// Ranges for parameters drawn from a seed when not given explicitly.
constexpr std::uint64_t kMaxDrawnLength = 64;
constexpr std::uint64_t kMaxDrawnExponent = 512;
constexpr int kDrawAttempts = 32;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out.flush()) throw IoError("error writing '" + path + "'");
}

/// MPKC_SEED wins over --seed.
std::optional<std::uint64_t> effective_seed(const std::optional<std::uint64_t>& flag) {
  if (const char* env = std::getenv("MPKC_SEED"); env && *env) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0' || env[0] == '-')
      throw InvalidParameter("MPKC_SEED must be a non-negative integer");
    return v;
  }
  return flag;
}

std::string join(const RowVector& v, char sep = ' ') {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? std::string(1, sep) : "") << v[i];
  return os.str();
}

RowVector parse_residue_list(const std::string& text) {
  RowVector out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream cell(token);
    std::uint64_t v;
    std::string rest;
    if (!(cell >> v) || (cell >> rest)) throw InvalidParameter("bad residue '" + token + "'");
    out.push_back(v);
  }
  return out;
}

ResidueMatrix read_target(const std::string& path, const PrimeModulus& p, int n) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<std::uint64_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream cells(line);
    std::vector<std::uint64_t> row;
    std::string cell;
    while (cells >> cell) {
      std::size_t used = 0;
      std::uint64_t v = 0;
      try {
        v = std::stoull(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || cell[0] == '-')
        throw InvalidParameter("target entry '" + cell + "' is not a residue");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.size() != static_cast<std::size_t>(n))
    throw InvalidParameter("target has " + std::to_string(rows.size()) + " rows, expected " +
                           std::to_string(n));
  return ResidueMatrix::from_rows(p, rows);
}

struct KeygenOptions {
  int n = 3;
  std::uint64_t p = 47;
  std::optional<std::uint64_t> l;
  std::optional<std::int64_t> exp_g, exp_h, exp_k;
  std::optional<std::uint64_t> seed;
  std::string public_out = "mpkc.pub";
  std::string secret_out = "mpkc.sec";
};

int cmd_keygen(const KeygenOptions& o, std::ostream& out, std::ostream& err) {
  const bool complete = o.l && o.exp_g && o.exp_h && o.exp_k;
  const auto seed = effective_seed(o.seed);
  if (!complete && !seed)
    throw InvalidParameter("give --l, --exp-g, --exp-h and --exp-k, or a --seed to draw them");
  std::optional<KeyPair> keys;
  if (complete) {
    keys = keygen({o.n, o.p, *o.l, *o.exp_g, *o.exp_h, *o.exp_k});
  } else {
    err << "seed=" << *seed << '\n';
    SeededRng rng(*seed);
    for (int attempt = 0; attempt < kDrawAttempts && !keys; ++attempt) {
      // Draw all four so a seed means the same thing whichever flags are given.
      const auto l = rng.uniform(2, kMaxDrawnLength);
      const auto g = static_cast<std::int64_t>(rng.uniform(1, kMaxDrawnExponent));
      const auto h = static_cast<std::int64_t>(rng.uniform(1, kMaxDrawnExponent));
      const auto k = static_cast<std::int64_t>(rng.uniform(1, kMaxDrawnExponent));
      try {
        keys = keygen({o.n, o.p, o.l.value_or(l), o.exp_g.value_or(g), o.exp_h.value_or(h),
                       o.exp_k.value_or(k)});
      } catch (const DegenerateKey&) {
      }
    }
    if (!keys) throw DegenerateKey("no invertible public key found; try another seed");
  }
  const std::string pub = serialize_key(keys->public_key);
  write_file(o.public_out, pub);
  write_file(o.secret_out, serialize_key(keys->secret_key));
  out << "fingerprint=" << sha256_hex(pub) << '\n';
  return kOk;
}

struct EncryptOptions {
  std::string public_path;
  std::optional<std::string> text;
  std::optional<std::string> residues;
  std::optional<std::uint64_t> j;
  std::optional<std::int64_t> exp_m, exp_n;
  std::optional<std::uint64_t> seed;
  std::string out_path = "message.mpkc";
};

int cmd_encrypt(const EncryptOptions& o, std::ostream& out, std::ostream& err) {
  const PublicKey pub = parse_public_key(read_file(o.public_path));
  const auto n = static_cast<std::size_t>(pub.order);
  if (o.text.has_value() == o.residues.has_value())
    throw InvalidParameter("give exactly one of --text or --residues");
  if (o.text && pub.modulus.value() != kTextModulus)
    throw InvalidParameter("--text requires p = 47; use --residues for other moduli");
  const EncodedBlocks plain = o.text ? encode_text(*o.text, n)
                                     : encode_residues(parse_residue_list(*o.residues), n, pub.modulus);

  const bool explicit_session = o.j && o.exp_m && o.exp_n;
  std::optional<CipherMessage> message;
  if (explicit_session) {
    message = encrypt_blocks(pub, make_session(pub, *o.j, *o.exp_m, *o.exp_n), plain);
  } else {
    const auto seed = effective_seed(o.seed).value_or(0);
    err << "seed=" << seed << '\n';
    SeededRng rng(seed);
    for (int attempt = 0; attempt < kDrawAttempts && !message; ++attempt) {
      const auto j = rng.uniform(1, kMaxDrawnLength);
      const auto m = static_cast<std::int64_t>(rng.uniform(1, kMaxDrawnExponent));
      const auto nn = static_cast<std::int64_t>(rng.uniform(1, kMaxDrawnExponent));
      try {
        message = encrypt_blocks(pub, make_session(pub, o.j.value_or(j), o.exp_m.value_or(m),
                                                   o.exp_n.value_or(nn)),
                                 plain);
      } catch (const DegenerateKey&) {
      }
    }
    if (!message) throw DegenerateKey("no invertible session key found; try another seed");
  }
  write_file(o.out_path, serialize_message(*message));
  if (o.text) {
    out << render_symbols(message->blocks) << '\n';
  } else {
    RowVector flat;
    for (const auto& b : message->blocks) flat.insert(flat.end(), b.begin(), b.end());
    out << join(flat) << '\n';
  }
  return kOk;
}

struct DecryptOptions {
  std::string secret_path;
  std::string public_path;
  std::string in_path;
};

int cmd_decrypt(const DecryptOptions& o, std::ostream& out) {
  const SecretKey sec = parse_secret_key(read_file(o.secret_path));
  const PublicKey pub = parse_public_key(read_file(o.public_path));
  const CipherMessage msg = parse_message(read_file(o.in_path));
  if (pub.modulus.value() == kTextModulus) {
    out << decrypt_text(sec, pub, msg) << '\n';
  } else {
    const auto plain = decrypt_blocks(sec, pub, msg);
    out << join(decode_residues(plain.blocks, plain.pad_count)) << '\n';
  }
  return kOk;
}

int cmd_reproduce(bool printed_k, bool printed_terms, bool json, std::ostream& out) {
  const auto points = reproduce_example(printed_k, printed_terms);
  std::size_t passed = 0;
  for (const auto& c : points) passed += c.pass;
  if (json) {
    nlohmann::json doc;
    doc["checkpoints"] = nlohmann::json::array();
    for (const auto& c : points)
      doc["checkpoints"].push_back(
          {{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
    doc["passed"] = passed;
    doc["total"] = points.size();
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& c : points) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.actual;
      if (!c.pass) out << " (expected " << c.expected << ")";
      out << '\n';
    }
    out << passed << '/' << points.size() << " checkpoints passed\n";
  }
  return passed == points.size() ? kOk : 1;
}

struct AnalyzeOptions {
  int n = 3;
  std::uint64_t p = 47;
  std::uint64_t cap = kDefaultSearchCap;
  std::string target;
  bool exhaustive = false;
  std::vector<std::uint64_t> lengths{1, 8, 64, 512, 4096};
  std::int64_t k1 = 9, k2 = 2, k3 = 13;
  std::string csv_out;
};

int cmd_order(const AnalyzeOptions& o, std::ostream& out) {
  out << matrix_order(o.n, o.p, o.cap).period << '\n';
  return kOk;
}

int cmd_dlog(const AnalyzeOptions& o, std::ostream& out) {
  const PrimeModulus p(o.p);
  const ResidueMatrix target = read_target(o.target, p, o.n);
  const AttackResult r = o.exhaustive ? recover_exponent_exhaustive(o.n, target, o.cap)
                                      : recover_exponent(o.n, target, o.cap);
  if (r.exponent) {
    out << "k=" << *r.exponent;
    if (*r.exponent == r.period) out << " (= 0 mod period)";
    out << '\n';
  } else {
    out << "k=none\n";
  }
  out << "period=" << r.period << '\n'
      << "exponents_tried=" << r.exponents_tried << '\n'
      << "full_comparisons=" << r.full_comparisons << '\n'
      << "matrix_multiplications=" << r.matrix_multiplications << '\n'
      << "seconds=" << std::fixed << std::setprecision(6) << r.seconds << '\n';
  return kOk;
}

int cmd_bench(const AnalyzeOptions& o, std::ostream& out) {
  for (auto l : o.lengths)
    if (l == 0) throw InvalidParameter("--l values must be >= 1");
  const std::string csv = cost_csv(cost_comparison(o.n, o.p, o.lengths, o.k1, o.k2, o.k3));
  if (!o.csv_out.empty()) write_file(o.csv_out, csv);
  out << csv;
  return kOk;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  std::ostringstream os;
  for (unsigned char c : digest) os << std::hex << std::setw(2) << std::setfill('0') << int{c};
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multinacci-matrix public-key scheme: keys, Affine-Hill encryption, analysis",
               "mpkc"};
  app.require_subcommand(1);

  KeygenOptions kg;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair (public and secret documents)");
  keygen_cmd->add_option("--n", kg.n, "Matrix order n")->capture_default_str();
  keygen_cmd->add_option("--p", kg.p, "Prime modulus")->capture_default_str();
  keygen_cmd->add_option("--l", kg.l, "Secret length l");
  keygen_cmd->add_option("--exp-g", kg.exp_g, "Exponent of G = F^g");
  keygen_cmd->add_option("--exp-h", kg.exp_h, "Exponent of H = F^h");
  keygen_cmd->add_option("--exp-k", kg.exp_k, "Exponent of K = F^k");
  keygen_cmd->add_option("--seed", kg.seed, "Draw missing parameters from this seed");
  keygen_cmd->add_option("--public-out", kg.public_out)->capture_default_str();
  keygen_cmd->add_option("--secret-out", kg.secret_out)->capture_default_str();

  EncryptOptions en;
  auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt text or residues for a public key");
  encrypt_cmd->add_option("--public", en.public_path, "Public key document")->required();
  encrypt_cmd->add_option("--text", en.text, "Plaintext over the 47-symbol alphabet (p = 47)");
  encrypt_cmd->add_option("--residues", en.residues, "Comma-separated residues (any p)");
  encrypt_cmd->add_option("--j", en.j, "Session length j");
  encrypt_cmd->add_option("--exp-m", en.exp_m, "Exponent of M = F^m");
  encrypt_cmd->add_option("--exp-n", en.exp_n, "Exponent of N = F^n");
  encrypt_cmd->add_option("--seed", en.seed, "Seed for a generated session secret");
  encrypt_cmd->add_option("--out", en.out_path, "Message document")->capture_default_str();

  DecryptOptions de;
  auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a message document");
  decrypt_cmd->add_option("--secret", de.secret_path)->required();
  decrypt_cmd->add_option("--public", de.public_path)->required();
  decrypt_cmd->add_option("--in", de.in_path)->required();

  bool printed_k = false, printed_terms = false, json = false;
  auto* repro_cmd = app.add_subcommand("reproduce-paper", "Replay the p = 47 worked example");
  repro_cmd->add_flag("--k-entry-typo", printed_k, "Use K with the misprinted entry (1,2) = 3");
  repro_cmd->add_flag("--n-power-typo", printed_terms,
                      "Evaluate Bob's s = 2 term with N instead of N^2, as printed");
  repro_cmd->add_flag("--json", json, "Machine-readable checkpoint list");

  AnalyzeOptions an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Period, discrete-log and cost analysis");
  analyze_cmd->require_subcommand(1);
  auto* order_cmd = analyze_cmd->add_subcommand("order", "Smallest m with F_n^m = I mod p");
  auto* dlog_cmd = analyze_cmd->add_subcommand("dlog", "Recover k from a target F_n^k");
  auto* bench_cmd = analyze_cmd->add_subcommand("bench", "Multiplication counts, naive vs fast");
  for (auto* sub : {order_cmd, dlog_cmd, bench_cmd}) {
    sub->add_option("--n", an.n)->capture_default_str();
    sub->add_option("--p", an.p)->capture_default_str();
  }
  for (auto* sub : {order_cmd, dlog_cmd})
    sub->add_option("--cap", an.cap, "Step limit")->capture_default_str();
  dlog_cmd->add_option("--target", an.target, "File with n rows of n residues")->required();
  dlog_cmd->add_flag("--exhaustive", an.exhaustive, "Compare every power (no pruning)");
  bench_cmd->add_option("--l", an.lengths, "Lengths to measure")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--exp-g", an.k1)->capture_default_str();
  bench_cmd->add_option("--exp-k", an.k2)->capture_default_str();
  bench_cmd->add_option("--exp-h", an.k3)->capture_default_str();
  bench_cmd->add_option("--csv", an.csv_out, "Also write the CSV here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*keygen_cmd) return cmd_keygen(kg, out, err);
    if (*encrypt_cmd) return cmd_encrypt(en, out, err);
    if (*decrypt_cmd) return cmd_decrypt(de, out);
    if (*repro_cmd) return cmd_reproduce(printed_k, printed_terms, json, out);
    if (*order_cmd) return cmd_order(an, out);
    if (*dlog_cmd) return cmd_dlog(an, out);
    if (*bench_cmd) return cmd_bench(an, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DegenerateKey& e) {
    err << "error: " << e.what() << "\nhint: rerun with a different --j/--exp-m/--exp-n or --seed\n";
    return kDegenerateKey;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << " (raise --cap)\n";
    return kResourceLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace mpkc::cli
