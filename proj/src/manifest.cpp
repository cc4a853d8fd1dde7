#include "nctorus/manifest.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "nctorus/errors.hpp"

namespace nct {

namespace {

constexpr int kMaxManifestDim = 6;

struct Entry {
  int line;
  std::string value;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& field, const std::string& msg) const {
    throw ManifestError(source_, line, field, msg);
  }

  std::int64_t integer(const Entry& e, const std::string& field, std::string_view text) const {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
      fail(e.line, field, "expected an integer, got '" + std::string(text) + "'");
    return v;
  }

  double real(const Entry& e, const std::string& field, std::string_view text) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
      fail(e.line, field, "expected a number, got '" + std::string(text) + "'");
    return v;
  }

  Rational rational(const Entry& e, const std::string& field) const {
    try {
      return Rational::parse(e.value);
    } catch (const std::exception& ex) {
      fail(e.line, field, ex.what());
    }
  }

  // "r.s" with 1 ≤ s < r ≤ n
  std::pair<int, int> pair_index(const Entry& e, const std::string& field, const std::string& suffix, int n) const {
    const auto parts = split(suffix, '.');
    if (parts.size() != 2) fail(e.line, field, "expected indices r.s");
    const auto r = integer(e, field, parts[0]);
    const auto s = integer(e, field, parts[1]);
    if (!(1 <= s && s < r && r <= n)) fail(e.line, field, "need 1 <= s < r <= n");
    return {static_cast<int>(r) - 1, static_cast<int>(s) - 1};
  }

  Eigen::MatrixXcd matrix(const Entry& e, const std::string& field, int size) const {
    const auto rows = split(e.value, ';');
    if (static_cast<int>(rows.size()) != size) fail(e.line, field, "expected " + std::to_string(size) + " rows");
    Eigen::MatrixXcd m(size, size);
    for (int r = 0; r < size; ++r) {
      const auto entries = words(rows[static_cast<std::size_t>(r)]);
      if (static_cast<int>(entries.size()) != size)
        fail(e.line, field, "row " + std::to_string(r + 1) + ": expected " + std::to_string(size) + " entries");
      for (int c = 0; c < size; ++c) {
        const auto& text = entries[static_cast<std::size_t>(c)];
        const auto comma = text.find(',');
        if (comma == std::string::npos) fail(e.line, field, "entry '" + text + "' is not \"re,im\"");
        m(r, c) = Complex(real(e, field, std::string_view(text).substr(0, comma)),
                          real(e, field, std::string_view(text).substr(comma + 1)));
      }
    }
    return m;
  }

 private:
  std::string source_;
};

}  // namespace

ManifestError::ManifestError(std::string source, int line, std::string field, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + (field.empty() ? "" : "'" + field + "': ") +
                         message),
      line_(line),
      field_(std::move(field)) {}

std::string RepSpec::str() const {
  switch (kind) {
    case Kind::Trivial:
      return fiber_dim == 1 ? "trivial" : "trivial:" + std::to_string(fiber_dim);
    case Kind::Sign:
      return "sign";
    case Kind::Cyclic:
      return "cyclic:" + std::to_string(axis + 1);
    case Kind::Regular:
      return "regular";
    case Kind::Random:
      return "random:" + std::to_string(fiber_dim);
    case Kind::Matrix:
      return "matrix:" + std::to_string(fiber_dim);
  }
  return "?";
}

std::shared_ptr<const ThetaMatrix> Manifest::theta() const {
  return std::make_shared<const ThetaMatrix>(n, theta_lower);
}

CoveringSpec Manifest::covering() const {
  if (enumerate) throw ContractViolation("manifest enumerates covering branches; a single branch is required");
  return make_covering(theta(), fold, offsets);
}

GroupRep Manifest::representation(const CoveringSpec& spec) const {
  switch (rep.kind) {
    case RepSpec::Kind::Trivial:
      return GroupRep::trivial(n, rep.fiber_dim);
    case RepSpec::Kind::Sign:
      return GroupRep::sign(n);
    case RepSpec::Kind::Cyclic:
      return GroupRep::cyclic(fold, rep.axis);
    case RepSpec::Kind::Regular:
      return GroupRep::regular(spec);
    case RepSpec::Kind::Random: {
      Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
      return GroupRep::random(fold, rep.fiber_dim, rng);
    }
    case RepSpec::Kind::Matrix:
      return GroupRep(rep.matrices);
  }
  throw ContractViolation("unknown representation kind");
}

Manifest parse_manifest(std::istream& in, const std::string& source) {
  Parser p(source);
  std::map<std::string, Entry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) p.fail(line, "", "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) p.fail(line, "", "empty key");
    if (value.empty()) p.fail(line, key, "empty value");
    if (!entries.emplace(key, Entry{line, value}).second) p.fail(line, key, "duplicate key");
  }

  Manifest m;
  m.source = source;
  auto take = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto eof_fail = [&](const std::string& key) { p.fail(line + 1, key, "missing required key"); };

  const Entry* n_entry = take("n");
  if (n_entry == nullptr) eof_fail("n");
  const auto n = p.integer(*n_entry, "n", n_entry->value);
  if (n < 1 || n > kMaxManifestDim) p.fail(n_entry->line, "n", "need 1 <= n <= " + std::to_string(kMaxManifestDim));
  m.n = static_cast<int>(n);
  const std::size_t pairs = static_cast<std::size_t>(m.n * (m.n - 1) / 2);
  m.theta_lower.assign(pairs, Rational(0));
  m.offsets.assign(pairs, 0);

  const Entry* k_entry = take("k");
  if (k_entry == nullptr) eof_fail("k");
  const auto ks = words(k_entry->value);
  if (static_cast<int>(ks.size()) != m.n) p.fail(k_entry->line, "k", "expected " + std::to_string(m.n) + " entries");
  m.fold = Mode::zero(m.n);
  for (int j = 0; j < m.n; ++j) {
    const auto v = p.integer(*k_entry, "k", ks[static_cast<std::size_t>(j)]);
    if (v < 1 || v > 64) p.fail(k_entry->line, "k", "entries must lie in [1, 64]");
    m.fold[j] = static_cast<int>(v);
  }

  int rep_line = 0;
  std::map<int, const Entry*> rep_rows;
  for (const auto& [key, entry] : entries) {
    if (key == "n" || key == "k") continue;
    if (key.starts_with("theta.")) {
      const auto [r, s] = p.pair_index(entry, key, key.substr(6), m.n);
      m.theta_lower[static_cast<std::size_t>(r * (r - 1) / 2 + s)] = p.rational(entry, key);
    } else if (key == "m") {
      if (entry.value != "enumerate") p.fail(entry.line, key, "expected 'enumerate' or per-entry keys m.r.s");
      m.enumerate = true;
    } else if (key.starts_with("m.")) {
      const auto [r, s] = p.pair_index(entry, key, key.substr(2), m.n);
      m.offsets[static_cast<std::size_t>(r * (r - 1) / 2 + s)] = p.integer(entry, key, entry.value);
    } else if (key == "rep") {
      rep_line = entry.line;
      const auto colon = entry.value.find(':');
      const std::string name = entry.value.substr(0, colon);
      const std::string arg = colon == std::string::npos ? "" : entry.value.substr(colon + 1);
      auto need_arg = [&]() {
        if (arg.empty()) p.fail(entry.line, key, "preset '" + name + "' needs an argument");
        return p.integer(entry, key, arg);
      };
      if (name == "trivial") {
        m.rep.kind = RepSpec::Kind::Trivial;
        m.rep.fiber_dim = arg.empty() ? 1 : static_cast<int>(p.integer(entry, key, arg));
      } else if (name == "sign" && arg.empty()) {
        m.rep.kind = RepSpec::Kind::Sign;
      } else if (name == "regular" && arg.empty()) {
        m.rep.kind = RepSpec::Kind::Regular;
      } else if (name == "cyclic") {
        m.rep.kind = RepSpec::Kind::Cyclic;
        const auto j = need_arg();
        if (j < 1 || j > m.n) p.fail(entry.line, key, "axis out of range");
        m.rep.axis = static_cast<int>(j) - 1;
      } else if (name == "random") {
        m.rep.kind = RepSpec::Kind::Random;
        m.rep.fiber_dim = static_cast<int>(need_arg());
      } else if (name == "matrix") {
        m.rep.kind = RepSpec::Kind::Matrix;
        m.rep.fiber_dim = static_cast<int>(need_arg());
      } else {
        p.fail(entry.line, key, "unknown representation '" + entry.value + "'");
      }
      if (m.rep.fiber_dim < 1 || m.rep.fiber_dim > 64) p.fail(entry.line, key, "fiber dimension must lie in [1, 64]");
    } else if (key.starts_with("rep.R.")) {
      const auto j = p.integer(entry, key, std::string_view(key).substr(6));
      if (j < 1 || j > m.n) p.fail(entry.line, key, "generator index out of range");
      rep_rows[static_cast<int>(j) - 1] = &entry;
    } else if (key == "M") {
      const auto cap = p.integer(entry, key, entry.value);
      if (cap < 2 || cap > 256) p.fail(entry.line, key, "need 2 <= M <= 256");
      m.cap = static_cast<int>(cap);
    } else if (key == "tol.drop" || key == "tol.assert") {
      const double v = p.real(entry, key, entry.value);
      if (!(v > 0.0)) p.fail(entry.line, key, "tolerance must be positive");
      (key == "tol.drop" ? m.drop_tol : m.assert_tol) = v;
    } else if (key == "seed") {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(entry.value.data(), entry.value.data() + entry.value.size(), v);
      if (ec != std::errc{} || ptr != entry.value.data() + entry.value.size())
        p.fail(entry.line, key, "expected an unsigned 64-bit integer");
      m.seed = v;
    } else {
      p.fail(entry.line, key, "unknown key");
    }
  }

  try {
    (void)m.theta();
  } catch (const std::exception& ex) {
    int first = 0;
    for (const auto& [key, entry] : entries)
      if (key.starts_with("theta.") && (first == 0 || entry.line < first)) first = entry.line;
    p.fail(first, "theta", ex.what());
  }

  if (m.rep.kind == RepSpec::Kind::Matrix) {
    for (int j = 0; j < m.n; ++j) {
      auto it = rep_rows.find(j);
      if (it == rep_rows.end()) p.fail(rep_line, "rep.R." + std::to_string(j + 1), "missing generator matrix");
      m.rep.matrices.push_back(p.matrix(*it->second, "rep.R." + std::to_string(j + 1), m.rep.fiber_dim));
    }
  } else if (!rep_rows.empty()) {
    p.fail(rep_rows.begin()->second->line, "rep.R." + std::to_string(rep_rows.begin()->first + 1),
           "generator matrices need rep = matrix:N");
  }
  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError(path, 0, "", "cannot open file");
  return parse_manifest(in, path);
}

}  // namespace nct
