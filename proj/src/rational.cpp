#include "weylchar/rational.hpp"

#include <cctype>
#include <climits>

#include "weylchar/error.hpp"

namespace weylchar {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Snap: return "snap";
  }
  return "unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  std::string text(s);
  if (!text.empty() && text[0] == '+') text.erase(0, 1);
  return BigInt(text, 10);
}

Rational parse_decimal(std::string_view s) {
  std::string mantissa(s);
  long exponent = 0;
  if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    std::string exp_part = mantissa.substr(e + 1);
    mantissa.resize(e);
    if (!is_integer_literal(exp_part)) {
      fail(ErrorKind::Config, "malformed exponent in '" + std::string(s) + "'");
    }
    exponent = std::stol(exp_part);
  }
  std::string digits;
  bool negative = false;
  std::size_t i = 0;
  if (i < mantissa.size() && (mantissa[i] == '-' || mantissa[i] == '+')) {
    negative = mantissa[i] == '-';
    ++i;
  }
  bool seen_point = false;
  bool seen_digit = false;
  for (; i < mantissa.size(); ++i) {
    char c = mantissa[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else {
      fail(ErrorKind::Config, "malformed number '" + std::string(s) + "'");
    }
  }
  if (!seen_digit) fail(ErrorKind::Config, "malformed number '" + std::string(s) + "'");
  if (exponent > 4000 || exponent < -4000) {
    fail(ErrorKind::Config, "exponent out of range in '" + std::string(s) + "'");
  }
  Rational q(BigInt(digits, 10));
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    q *= scale;
  } else {
    q /= scale;
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(ErrorKind::Config, "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      fail(ErrorKind::Config, "malformed rational '" + std::string(text) + "'");
    }
    BigInt d = parse_integer(den);
    if (d == 0) fail(ErrorKind::Config, "zero denominator in '" + std::string(text) + "'");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
  }
  if (is_integer_literal(text)) return Rational(parse_integer(text));
  return parse_decimal(text);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigInt to_integer(const Rational& q) {
  if (q.get_den() != 1) fail(ErrorKind::Domain, "expected an integer, got " + to_string(q));
  return q.get_num();
}

std::int64_t to_int64(const BigInt& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::Capacity, "integer " + z.get_str() + " exceeds 64 bits");
  static_assert(sizeof(long) == 8, "64-bit long expected");
  return z.get_si();
}

bool WeightVec::is_zero() const {
  for (const auto& c : coords_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

Rational WeightVec::sum() const {
  Rational s = 0;
  for (const auto& c : coords_) s += c;
  return s;
}

WeightVec& WeightVec::operator+=(const WeightVec& other) {
  if (other.size() != size()) fail(ErrorKind::Domain, "dimension mismatch in weight addition");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

WeightVec& WeightVec::operator-=(const WeightVec& other) {
  if (other.size() != size()) fail(ErrorKind::Domain, "dimension mismatch in weight subtraction");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

WeightVec& WeightVec::operator*=(const Rational& scale) {
  for (auto& c : coords_) c *= scale;
  return *this;
}

std::vector<std::string> WeightVec::to_strings() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (const auto& c : coords_) out.push_back(to_string(c));
  return out;
}

std::vector<double> WeightVec::to_doubles() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& c : coords_) out.push_back(c.get_d());
  return out;
}

}  // namespace weylchar
