#include "weylchar/torus.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "weylchar/error.hpp"

namespace weylchar {

TorusPoint TorusPoint::exact(std::vector<Rational> coords_over_pi) {
  TorusPoint p;
  p.exact_ = true;
  p.exact_coords_ = std::move(coords_over_pi);
  return p;
}

TorusPoint TorusPoint::floating(std::vector<double> radians) {
  TorusPoint p;
  p.exact_ = false;
  for (double x : radians) {
    if (!std::isfinite(x)) fail(ErrorKind::Config, "non-finite torus coordinate", "point");
  }
  p.float_coords_ = std::move(radians);
  return p;
}

std::size_t TorusPoint::dim() const {
  return exact_ ? exact_coords_.size() : float_coords_.size();
}

const std::vector<Rational>& TorusPoint::coords_over_pi() const {
  if (!exact_) fail(ErrorKind::Domain, "exact coordinates requested from a floating torus point", "point");
  return exact_coords_;
}

std::vector<double> TorusPoint::radians() const {
  if (!exact_) return float_coords_;
  std::vector<double> out;
  out.reserve(exact_coords_.size());
  for (const auto& c : exact_coords_) out.push_back(c.get_d() * std::numbers::pi);
  return out;
}

bool TorusPoint::is_zero() const {
  if (exact_) {
    for (const auto& c : exact_coords_) {
      if (sgn(c) != 0) return false;
    }
    return true;
  }
  for (double x : float_coords_) {
    if (x != 0.0) return false;
  }
  return true;
}

TorusPoint TorusPoint::operator+(const TorusPoint& other) const {
  if (dim() != other.dim()) fail(ErrorKind::Domain, "torus point dimension mismatch", "point");
  if (exact_ && other.exact_) {
    std::vector<Rational> out(exact_coords_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.exact_coords_[i];
    return exact(std::move(out));
  }
  auto a = radians();
  auto b = other.radians();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return floating(std::move(a));
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Returns the coefficient of pi for entries mentioning pi.
Rational parse_pi_entry(const std::string& entry) {
  auto pos = entry.find("pi");
  std::string before = entry.substr(0, pos);
  std::string after = entry.substr(pos + 2);
  if (!before.empty() && before.back() == '*') before.pop_back();
  Rational coeff = 1;
  if (before.empty() || before == "+") {
    coeff = 1;
  } else if (before == "-") {
    coeff = -1;
  } else {
    coeff = parse_rational(before);
  }
  if (!after.empty()) {
    if (after[0] != '/') fail(ErrorKind::Config, "malformed torus entry '" + entry + "'", "point");
    Rational den = parse_rational(after.substr(1));
    if (sgn(den) == 0) fail(ErrorKind::Config, "zero denominator in '" + entry + "'", "point");
    coeff /= den;
  }
  return coeff;
}

}  // namespace

TorusPoint TorusPoint::parse(std::string_view text) {
  std::vector<std::string> entries;
  std::string current;
  for (char c : text) {
    if (c == ':') {
      entries.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  entries.push_back(trim(current));

  bool all_exact = true;
  std::vector<Rational> exact_coords;
  std::vector<double> radians;
  for (const auto& e : entries) {
    if (e.empty()) fail(ErrorKind::Config, "empty torus coordinate", "point");
    if (e.find("pi") != std::string::npos) {
      Rational c = parse_pi_entry(e);
      exact_coords.push_back(c);
      radians.push_back(c.get_d() * std::numbers::pi);
    } else if (e == "0" || e == "-0" || e == "+0") {
      exact_coords.emplace_back(0);
      radians.push_back(0.0);
    } else {
      all_exact = false;
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(e, &used);
      } catch (const std::exception&) {
        fail(ErrorKind::Config, "malformed torus entry '" + e + "'", "point");
      }
      if (used != e.size()) fail(ErrorKind::Config, "malformed torus entry '" + e + "'", "point");
      radians.push_back(v);
      exact_coords.emplace_back(0);
    }
  }
  if (all_exact) return exact(std::move(exact_coords));
  return floating(std::move(radians));
}

std::string TorusPoint::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) out << ':';
    if (exact_) {
      const auto& c = exact_coords_[i];
      if (sgn(c) == 0) {
        out << '0';
      } else {
        out << weylchar::to_string(c) << "*pi";
      }
    } else {
      out.precision(17);
      out << float_coords_[i];
    }
  }
  return out.str();
}

long double sin_pi_frac(std::int64_t a, std::int64_t b) {
  if (b <= 0) fail(ErrorKind::Domain, "sin_pi_frac needs a positive denominator");
  const std::int64_t period = 2 * b;
  std::int64_t r = a % period;
  if (r < 0) r += period;
  long double sign = 1;
  if (r >= b) {
    r -= b;
    sign = -1;
  }
  // r in [0, b): sin(pi r / b) = sin(pi (b - r) / b)
  if (2 * r > b) r = b - r;
  if (r == 0) return 0.0L;
  if (2 * r == b) return sign;
  return sign * std::sin(std::numbers::pi_v<long double> * static_cast<long double>(r) /
                         static_cast<long double>(b));
}

long double cos_pi_frac(std::int64_t a, std::int64_t b) {
  // cos(pi a / b) = sin(pi (2a + b) / (2b))
  const std::int64_t period = 2 * b;
  std::int64_t r = a % period;
  if (r < 0) r += period;
  return sin_pi_frac(2 * r + b, 2 * b);
}

namespace {

Rational exact_from_long_double(long double x) {
  if (!std::isfinite(x)) fail(ErrorKind::Domain, "non-finite value in rational approximation");
  if (x == 0) return Rational(0);
  int exponent = 0;
  long double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent
  bool negative = mantissa < 0;
  if (negative) mantissa = -mantissa;
  // 64 mantissa bits are enough for x87 extended precision.
  long double scaled = std::ldexp(mantissa, 64);
  auto bits = static_cast<unsigned long long>(scaled);
  BigInt m;
  mpz_import(m.get_mpz_t(), 1, 1, sizeof(bits), 0, 0, &bits);
  Rational q(m);
  int shift = exponent - 64;
  if (shift >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(shift));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-shift));
  }
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational best_rational_approximation(long double x, std::int64_t max_den) {
  if (max_den < 1) fail(ErrorKind::Domain, "max_den must be positive");
  Rational target = exact_from_long_double(x);
  if (target.get_den() <= max_den) return target;
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt n = target.get_num(), d = target.get_den();
  const BigInt limit = static_cast<long>(max_den);
  while (true) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    BigInt q2 = q0 + a * q1;
    if (q2 > limit) break;
    BigInt p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    BigInt rem = n - a * d;
    n = d;
    d = rem;
    if (d == 0) break;
  }
  BigInt k = (limit - q0) / q1;
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  if (abs(bound2 - target) <= abs(bound1 - target)) return bound2;
  return bound1;
}

double distance_to_2pi_lattice(double x) {
  return std::abs(std::remainder(x, 2.0 * std::numbers::pi));
}

}  // namespace weylchar
