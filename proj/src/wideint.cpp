#include "amns/wideint.hpp"

#include <cctype>

#include "amns/error.hpp"

namespace amns {

Wideint parse_int(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  if (s.empty()) throw Error(Errc::parse, "empty integer literal '" + std::string(text) + "'");
  for (char c : s) {
    const bool ok = base == 16 ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                               : std::isdigit(static_cast<unsigned char>(c)) != 0;
    if (!ok) throw Error(Errc::parse, "bad integer literal '" + std::string(text) + "'");
  }
  Wideint v;
  v.set_str(std::string(s), base);
  return negative ? Wideint(-v) : v;
}

std::string to_hex(const Wideint& v) {
  if (v < 0) return "-0x" + Wideint(-v).get_str(16);
  return "0x" + v.get_str(16);
}

Wideint from_i128(Int128 v) {
  const bool negative = v < 0;
  UInt128 mag = negative ? UInt128(0) - static_cast<UInt128>(v) : static_cast<UInt128>(v);
  Wideint r = from_u64(static_cast<std::uint64_t>(mag >> 64));
  r <<= 64;
  r += from_u64(static_cast<std::uint64_t>(mag));
  return negative ? Wideint(-r) : r;
}

bool fits_i64(const Wideint& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

std::int64_t to_i64(const Wideint& v) { return mpz_get_si(v.get_mpz_t()); }

std::uint64_t low_u64(const Wideint& v) {
  const Wideint low = mod_pow2(v, 64);
  return mpz_get_ui(low.get_mpz_t());
}

}  // namespace amns
