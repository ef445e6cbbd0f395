#include "amns/paramfile.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "amns/error.hpp"

namespace amns {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw Error(Errc::parse, "key '" + key + "': expected a decimal integer, got '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw Error(Errc::parse, "key '" + key + "': value out of range");
  }
}

std::int64_t parse_signed(const std::string& key, const std::string& v) {
  const bool neg = !v.empty() && v[0] == '-';
  const std::uint64_t mag = parse_unsigned(key, neg ? v.substr(1) : v);
  if (mag > (neg ? (1ull << 63) : (1ull << 63) - 1)) throw Error(Errc::parse, "key '" + key + "': out of range");
  return neg ? static_cast<std::int64_t>(0 - mag) : static_cast<std::int64_t>(mag);
}

Wideint parse_hex(const std::string& key, const std::string& v) {
  const bool neg = !v.empty() && v[0] == '-';
  const std::string body = neg ? v.substr(1) : v;
  if (body.size() < 3 || body.compare(0, 2, "0x") != 0)
    throw Error(Errc::parse, "key '" + key + "': expected 0x-prefixed hex, got '" + v + "'");
  return parse_int(v);
}

poly::IntPoly parse_poly(const std::string& key, const std::string& v) {
  poly::IntPoly out;
  for (const auto& item : split(v, ',')) out.push_back(parse_hex(key, item));
  return out;
}

std::string join_poly(const poly::IntPoly& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += to_hex(p[i]);
  }
  return out;
}

const std::vector<std::string> kRequired = {"format_version", "p",     "n", "lambda", "k", "rho_exp",
                                            "delta",          "gamma", "M", "Mprime"};
const std::vector<std::string> kOptional = {"T", "P", "g"};

}  // namespace

ParamFile ParamFile::parse(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::parse, "line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    bool known = false;
    for (const auto& k : kRequired) known |= k == key;
    for (const auto& k : kOptional) known |= k == key;
    if (!known) throw Error(Errc::parse, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!kv.emplace(key, trim(t.substr(eq + 1))).second)
      throw Error(Errc::parse, "duplicate key '" + key + "'");
  }
  for (const auto& k : kRequired)
    if (!kv.contains(k)) throw Error(Errc::parse, "missing key '" + k + "'");

  if (parse_unsigned("format_version", kv["format_version"]) != kParamFormatVersion)
    throw Error(Errc::parse, "unsupported format_version " + kv["format_version"]);

  ParamFile pf;
  AmnsSystem& s = pf.system;
  s.p = parse_hex("p", kv["p"]);
  const auto n = parse_unsigned("n", kv["n"]);
  if (n > 1u << 16) throw Error(Errc::parse, "n out of range");
  s.n = static_cast<std::uint32_t>(n);
  s.lambda = parse_signed("lambda", kv["lambda"]);
  s.k = static_cast<unsigned>(std::min<std::uint64_t>(parse_unsigned("k", kv["k"]), 1u << 16));
  s.rho_exp = static_cast<unsigned>(std::min<std::uint64_t>(parse_unsigned("rho_exp", kv["rho_exp"]), 1u << 16));
  s.delta = static_cast<unsigned>(std::min<std::uint64_t>(parse_unsigned("delta", kv["delta"]), 1u << 16));
  s.gamma = parse_hex("gamma", kv["gamma"]);
  s.M = parse_poly("M", kv["M"]);
  s.Mprime = parse_poly("Mprime", kv["Mprime"]);
  for (const auto& c : s.Mprime)
    if (sgn(c) < 0) throw Error(Errc::parse, "Mprime coefficients must be unsigned");
  if (s.M.size() != s.n || s.Mprime.size() != s.n)
    throw Error(Errc::parse, "M and Mprime must have n coefficients");

  const bool any_table = kv.contains("T") || kv.contains("P") || kv.contains("g");
  if (any_table) {
    if (!(kv.contains("T") && kv.contains("P") && kv.contains("g")))
      throw Error(Errc::parse, "tables T, P and g must appear together");
    PrecompTables tab;
    tab.T = parse_hex("T", kv["T"]);
    for (const auto& item : split(kv["P"], ';')) tab.P.push_back(parse_poly("P", item));
    tab.g = parse_poly("g", kv["g"]);
    pf.tables = std::move(tab);
  }
  return pf;
}

ParamFile ParamFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ParamFile::to_string() const {
  const AmnsSystem& s = system;
  std::ostringstream out;
  out << "format_version = " << kParamFormatVersion << '\n'
      << "p = " << to_hex(s.p) << '\n'
      << "n = " << s.n << '\n'
      << "lambda = " << s.lambda << '\n'
      << "k = " << s.k << '\n'
      << "rho_exp = " << s.rho_exp << '\n'
      << "delta = " << s.delta << '\n'
      << "gamma = " << to_hex(s.gamma) << '\n'
      << "M = " << join_poly(s.M) << '\n'
      << "Mprime = " << join_poly(s.Mprime) << '\n';
  if (tables) {
    out << "T = " << to_hex(tables->T) << '\n' << "P = ";
    for (std::size_t i = 0; i < tables->P.size(); ++i) out << (i ? ";" : "") << join_poly(tables->P[i]);
    out << '\n' << "g = " << join_poly(tables->g) << '\n';
  }
  return out.str();
}

void ParamFile::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::contract, "cannot write '" + path + "'");
  out << to_string();
}

}  // namespace amns
