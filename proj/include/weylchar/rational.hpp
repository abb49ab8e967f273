#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace weylchar {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Integer coordinates with respect to the fundamental weights (Dynkin labels).
using Dynkin = std::vector<std::int64_t>;

/// Parses "p", "p/q" or a finite decimal ("0.25", "-1.5e-3") into an exact
/// rational. Throws Error(Config) on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are printed without a denominator.
std::string to_string(const Rational& q);

/// Exact integer value of q; throws Error(Domain) when q is not integral.
BigInt to_integer(const Rational& q);

std::int64_t to_int64(const BigInt& z);

/// Exact rational coordinate vector in the ambient space of a root system.
class WeightVec {
 public:
  WeightVec() = default;
  explicit WeightVec(std::size_t n) : coords_(n) {}
  explicit WeightVec(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  WeightVec(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t size() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const;
  Rational sum() const;

  WeightVec& operator+=(const WeightVec& other);
  WeightVec& operator-=(const WeightVec& other);
  WeightVec& operator*=(const Rational& scale);

  friend WeightVec operator+(WeightVec a, const WeightVec& b) { return a += b; }
  friend WeightVec operator-(WeightVec a, const WeightVec& b) { return a -= b; }
  friend WeightVec operator*(const Rational& s, WeightVec a) { return a *= s; }
  friend WeightVec operator-(WeightVec a) { return a *= Rational(-1); }

  friend bool operator==(const WeightVec& a, const WeightVec& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator<(const WeightVec& a, const WeightVec& b) {
    return a.coords_ < b.coords_;
  }

  std::vector<std::string> to_strings() const;
  std::vector<double> to_doubles() const;

 private:
  std::vector<Rational> coords_;
};

}  // namespace weylchar
