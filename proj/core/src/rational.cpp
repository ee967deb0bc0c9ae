#include "ferrysched/rational.hpp"

#include <cctype>
#include <limits>

#include "ferrysched/errors.hpp"

namespace ferrysched {

Rational parse_rational(const std::string& text) {
  const char* p = text.c_str();
  std::string intpart, fracpart, denpart;
  bool neg = false;
  if (*p == '+' || *p == '-') {
    neg = (*p == '-');
    ++p;
  }
  while (std::isdigit(static_cast<unsigned char>(*p))) intpart.push_back(*p++);
  if (*p == '.') {
    ++p;
    while (std::isdigit(static_cast<unsigned char>(*p))) fracpart.push_back(*p++);
  } else if (*p == '/') {
    ++p;
    while (std::isdigit(static_cast<unsigned char>(*p))) denpart.push_back(*p++);
  }
  if (*p != '\0' || intpart.empty() || (!denpart.empty() && !fracpart.empty()))
    throw SchemaError("not a number: '" + text + "'");
  BigInt num(intpart.empty() ? "0" : intpart);
  BigInt den = 1;
  if (!fracpart.empty()) {
    for (char c : fracpart) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  } else if (!denpart.empty()) {
    den = BigInt(denpart);
    if (den == 0) throw SchemaError("zero denominator: '" + text + "'");
  }
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

std::string render_exact(const Rational& r) {
  if (is_integral(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

// exact decimal expansion, or empty if the denominator has a factor other than 2 and 5
std::string exact_decimal(const Rational& r) {
  BigInt den = denominator(r);
  int twos = 0, fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return {};
  int digits = std::max(twos, fives);
  BigInt scaled = numerator(r);
  for (int i = 0; i < digits; ++i) scaled *= 10;
  scaled /= denominator(r);
  bool neg = scaled < 0;
  std::string s = BigInt(abs(scaled)).str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits - s.size() + 1, '0');
  if (digits > 0) {
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return neg ? "-" + s : s;
}

// round half away from zero to f fraction digits
std::string rounded_decimal(const Rational& r, int f) {
  BigInt scale = 1;
  for (int i = 0; i < f; ++i) scale *= 10;
  Rational scaled = r * scale;
  BigInt twice = numerator(scaled) * 2 + (numerator(scaled) < 0 ? -denominator(scaled) : denominator(scaled));
  BigInt q = twice / (denominator(scaled) * 2);
  bool neg = q < 0;
  std::string s = BigInt(abs(q)).str();
  if (static_cast<int>(s.size()) <= f) s.insert(0, f - s.size() + 1, '0');
  if (f > 0) {
    s.insert(s.size() - f, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return neg ? "-" + s : s;
}

}  // namespace

std::string render_decimal(const Rational& r, int max_chars) {
  std::string s = exact_decimal(r);
  if (!s.empty() && static_cast<int>(s.size()) <= max_chars) return s;
  for (int f = max_chars - 2; f >= 0; --f) {
    s = rounded_decimal(r, f);
    if (static_cast<int>(s.size()) <= max_chars) return s;
  }
  return rounded_decimal(r, 0);
}

long long to_int64(const Rational& r) {
  if (!is_integral(r)) throw NumericalError("not an integer: " + render_exact(r));
  BigInt n = numerator(r);
  if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
    throw NumericalError("out of 64-bit range: " + n.str());
  return n.convert_to<long long>();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_floor(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return Rational(q);
}

Rational rational_ceil(const Rational& r) { return -rational_floor(-r); }

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace ferrysched
