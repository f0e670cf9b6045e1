#include "mpkc/serialization.hpp"

#include <charconv>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "mpkc/errors.hpp"

namespace mpkc {

namespace {

constexpr std::string_view kHeader = "MPKC v1";
constexpr std::uint64_t kMaxOrder = 256;

void write_matrix(std::ostringstream& os, std::string_view name, const ResidueMatrix& m) {
  os << "matrix " << name << '\n';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
}

void write_preamble(std::ostringstream& os, std::string_view role, const PrimeModulus& p, int n) {
  os << kHeader << '\n' << "role=" << role << '\n' << "p=" << p.value() << '\n' << "n=" << n << '\n';
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view doc) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!doc.empty()) {
    ++number;
    const auto nl = doc.find('\n');
    std::string_view text = doc.substr(0, nl);
    doc = nl == std::string_view::npos ? std::string_view{} : doc.substr(nl + 1);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    const auto last = text.find_last_not_of(" \t");
    lines.push_back({number, text.substr(first, last - first + 1)});
  }
  return lines;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) words.push_back(s.substr(i, j - i));
    i = j;
  }
  return words;
}

std::uint64_t parse_uint(std::string_view text, std::size_t line, const std::string& field) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError(line, field, "expected a non-negative decimal integer, got '" +
                                      std::string(text) + "'");
  return value;
}

struct Field {
  std::size_t line;
  std::string_view value;
};

struct MatrixField {
  std::size_t line;
  ResidueMatrix matrix;
};

// Generic syntax of an MPKC v1 document; role-specific checks come after.
struct Document {
  std::string role;
  std::optional<PrimeModulus> modulus;
  std::uint64_t order = 0;
  std::map<std::string, Field, std::less<>> fields;
  std::map<std::string, MatrixField, std::less<>> matrices;
  std::vector<RowVector> blocks;
  std::size_t first_block_line = 0;
};

void require_residue(std::uint64_t v, const PrimeModulus& p, std::size_t line,
                     const std::string& field) {
  if (v >= p.value())
    throw ParseError(line, field, "entry " + std::to_string(v) + " is not a residue mod " +
                                      std::to_string(p.value()));
}

Document parse_document(std::string_view text, std::string_view expected_role) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front().text != kHeader)
    throw ParseError(lines.empty() ? 0 : lines.front().number, "header",
                     "expected '" + std::string(kHeader) + "'");
  Document doc;
  auto ready = [&](std::size_t line, const std::string& what) {
    if (!doc.modulus || doc.order == 0 || doc.role.empty())
      throw ParseError(line, what, "role, p and n must precede matrices and blocks");
  };
  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const Line& line = lines[idx];
    const auto eq = line.text.find('=');
    if (eq != std::string_view::npos) {
      const std::string key(line.text.substr(0, eq));
      const std::string_view value = line.text.substr(eq + 1);
      if (key.empty() || key.find_first_of(" \t") != std::string::npos)
        throw ParseError(line.number, key, "malformed field");
      if (key == "role") {
        if (!doc.role.empty()) throw ParseError(line.number, key, "repeated field");
        if (value != expected_role)
          throw ParseError(line.number, key,
                           "expected role '" + std::string(expected_role) + "', got '" +
                               std::string(value) + "'");
        doc.role = value;
      } else if (key == "p") {
        if (doc.modulus) throw ParseError(line.number, key, "repeated field");
        const auto p = parse_uint(value, line.number, key);
        if (!is_prime(p)) throw ParseError(line.number, key, std::to_string(p) + " is not prime");
        doc.modulus.emplace(p);
      } else if (key == "n") {
        if (doc.order != 0) throw ParseError(line.number, key, "repeated field");
        const auto n = parse_uint(value, line.number, key);
        if (n < 2 || n > kMaxOrder)
          throw ParseError(line.number, key, "order must lie in [2, " + std::to_string(kMaxOrder) + "]");
        doc.order = n;
      } else {
        if (!doc.fields.emplace(key, Field{line.number, value}).second)
          throw ParseError(line.number, key, "repeated field");
      }
      continue;
    }
    const auto words = split_words(line.text);
    if (words.front() == "matrix") {
      if (words.size() != 2) throw ParseError(line.number, "matrix", "expected 'matrix <name>'");
      const std::string name(words[1]);
      ready(line.number, name);
      if (doc.matrices.count(name)) throw ParseError(line.number, name, "repeated matrix");
      std::vector<std::vector<std::uint64_t>> rows;
      for (std::uint64_t r = 0; r < doc.order; ++r) {
        if (++idx >= lines.size())
          throw ParseError(line.number, name, "matrix ends after " + std::to_string(r) + " rows");
        const Line& row_line = lines[idx];
        const auto cells = split_words(row_line.text);
        if (cells.size() != doc.order)
          throw ParseError(row_line.number, name,
                           "expected " + std::to_string(doc.order) + " entries, got " +
                               std::to_string(cells.size()));
        std::vector<std::uint64_t> row;
        for (auto cell : cells) {
          const auto v = parse_uint(cell, row_line.number, name);
          require_residue(v, *doc.modulus, row_line.number, name);
          row.push_back(v);
        }
        rows.push_back(std::move(row));
      }
      doc.matrices.emplace(name, MatrixField{line.number, ResidueMatrix::from_rows(*doc.modulus, rows)});
    } else if (words.front() == "block") {
      ready(line.number, "block");
      if (words.size() != doc.order + 1)
        throw ParseError(line.number, "block",
                         "expected " + std::to_string(doc.order) + " entries, got " +
                             std::to_string(words.size() - 1));
      RowVector block;
      for (std::size_t i = 1; i < words.size(); ++i) {
        const auto v = parse_uint(words[i], line.number, "block");
        require_residue(v, *doc.modulus, line.number, "block");
        block.push_back(v);
      }
      if (doc.blocks.empty()) doc.first_block_line = line.number;
      doc.blocks.push_back(std::move(block));
    } else {
      throw ParseError(line.number, std::string(words.front()), "unrecognized line");
    }
  }
  if (doc.role.empty()) throw ParseError(0, "role", "missing field");
  if (!doc.modulus) throw ParseError(0, "p", "missing field");
  if (doc.order == 0) throw ParseError(0, "n", "missing field");
  return doc;
}

void require_exact_keys(const Document& doc, std::set<std::string_view> fields,
                        std::set<std::string_view> matrices, bool blocks_allowed) {
  for (const auto& [key, f] : doc.fields)
    if (!fields.count(key)) throw ParseError(f.line, key, "unknown field");
  for (const auto& [name, m] : doc.matrices)
    if (!matrices.count(name)) throw ParseError(m.line, name, "unknown matrix");
  for (auto key : fields)
    if (!doc.fields.count(key)) throw ParseError(0, std::string(key), "missing field");
  for (auto name : matrices)
    if (!doc.matrices.count(name)) throw ParseError(0, std::string(name), "missing matrix");
  if (!blocks_allowed && !doc.blocks.empty())
    throw ParseError(doc.first_block_line, "block", "blocks are only valid in messages");
}

std::uint64_t uint_field(const Document& doc, std::string_view key) {
  const auto& f = doc.fields.find(key)->second;
  return parse_uint(f.value, f.line, std::string(key));
}

void require_key_modulus(const Document& doc) {
  if (doc.modulus->value() < kMinCipherModulus)
    throw ParseError(0, "p", "modulus must be >= " + std::to_string(kMinCipherModulus));
}

}  // namespace

std::string serialize_key(const PublicKey& key) {
  std::ostringstream os;
  write_preamble(os, "public", key.modulus, key.order);
  write_matrix(os, "K", key.k);
  write_matrix(os, "K_l", key.k_l);
  return os.str();
}

std::string serialize_key(const SecretKey& key) {
  std::ostringstream os;
  write_preamble(os, "secret", key.g.modulus(), key.g.order());
  os << "l=" << key.length << '\n'
     << "exp_g=" << key.g.exponent() << '\n'
     << "exp_h=" << key.h.exponent() << '\n';
  write_matrix(os, "G", key.g.matrix());
  write_matrix(os, "H", key.h.matrix());
  return os.str();
}

std::string serialize_message(const CipherMessage& message) {
  std::ostringstream os;
  write_preamble(os, "message", message.modulus, message.order);
  os << "pad=" << message.pad_count << '\n';
  write_matrix(os, "K_j", message.k_j);
  for (const auto& block : message.blocks) {
    os << "block";
    for (Residue r : block) os << ' ' << r;
    os << '\n';
  }
  return os.str();
}

PublicKey parse_public_key(std::string_view document) {
  Document doc = parse_document(document, "public");
  require_exact_keys(doc, {}, {"K", "K_l"}, false);
  require_key_modulus(doc);
  const auto& k = doc.matrices.at("K");
  if (k.matrix.determinant() == 0) throw ParseError(k.line, "K", "K is singular");
  const auto& k_l = doc.matrices.at("K_l");
  if (k_l.matrix.determinant() == 0) throw ParseError(k_l.line, "K_l", "K_l is singular");
  return {*doc.modulus, static_cast<int>(doc.order), k.matrix, k_l.matrix};
}

SecretKey parse_secret_key(std::string_view document) {
  Document doc = parse_document(document, "secret");
  require_exact_keys(doc, {"l", "exp_g", "exp_h"}, {"G", "H"}, false);
  require_key_modulus(doc);
  const auto length = uint_field(doc, "l");
  if (length < 1) throw ParseError(doc.fields.at("l").line, "l", "length must be >= 1");
  auto load = [&](std::string_view exp_key, const std::string& name) {
    const auto e = uint_field(doc, exp_key);
    const auto& field = doc.fields.find(exp_key)->second;
    if (e < 1 || e > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      throw ParseError(field.line, std::string(exp_key), "exponent must be >= 1");
    FibPower f = fib_power_formula(static_cast<int>(doc.order), static_cast<std::int64_t>(e),
                                   *doc.modulus);
    const auto& m = doc.matrices.at(name);
    if (!(f.matrix() == m.matrix))
      throw ParseError(m.line, name, "matrix does not equal F_n^" + std::to_string(e));
    return f;
  };
  FibPower g = load("exp_g", "G");
  FibPower h = load("exp_h", "H");
  return {length, std::move(g), std::move(h)};
}

CipherMessage parse_message(std::string_view document) {
  Document doc = parse_document(document, "message");
  require_exact_keys(doc, {"pad"}, {"K_j"}, true);
  const auto pad = uint_field(doc, "pad");
  const auto pad_line = doc.fields.at("pad").line;
  if (pad >= doc.order) throw ParseError(pad_line, "pad", "pad must be < n");
  if (doc.blocks.empty() && pad != 0) throw ParseError(pad_line, "pad", "padding without blocks");
  return {*doc.modulus, static_cast<int>(doc.order), doc.matrices.at("K_j").matrix,
          std::move(doc.blocks), pad};
}

}  // namespace mpkc
